/*
   Copyright 2026 The qdelay Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "qdelay/poly/rational.h"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qdelay {
namespace {

mpz_class pow10(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty number");
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  const auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class d{std::string(den), 10};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(num), 10), d);
    result.canonicalize();
  } else {
    long exponent = 0;
    const auto e = s.find_first_of("eE");
    std::string_view mantissa = s;
    if (e != std::string_view::npos) {
      std::string_view ex = s.substr(e + 1);
      mantissa = s.substr(0, e);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex) || ex.size() > 6)
        throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
      exponent = std::stol(std::string(ex));
      if (eneg) exponent = -exponent;
    }
    const auto dot = mantissa.find('.');
    std::string digits;
    if (dot == std::string_view::npos) {
      digits = std::string(mantissa);
    } else {
      digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
      exponent -= static_cast<long>(mantissa.size() - dot - 1);
    }
    if (!all_digits(digits))
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    mpz_class m(digits, 10);
    if (exponent >= 0) {
      result = Rational(m * pow10(exponent));
    } else {
      result = Rational(m, pow10(-exponent));
      result.canonicalize();
    }
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(value);
}

Rational round_to_denominator(double value, long denominator) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  const double scaled = std::nearbyint(value * static_cast<double>(denominator));
  Rational r(mpz_class(rational_from_double(scaled)), mpz_class(denominator));
  r.canonicalize();
  return r;
}

}  // namespace qdelay
