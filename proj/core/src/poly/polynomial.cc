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

#include "qdelay/poly/polynomial.h"

#include <cmath>

namespace qdelay {

Rational evaluate_exact(const Polynomial& p, const std::vector<Rational>& point) {
  if (point.size() != p.arity()) throw std::invalid_argument("evaluate: point length mismatch");
  Rational sum;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < p.arity(); ++i)
      for (int k = 0; k < m.exponent(i); ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

double evaluate(const Polynomial& p, std::span<const double> point) {
  if (point.size() != p.arity()) throw std::invalid_argument("evaluate: point length mismatch");
  double sum = 0.0, comp = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double t = c.get_d();
    for (std::size_t i = 0; i < p.arity(); ++i)
      for (int k = 0; k < m.exponent(i); ++k) t *= point[i];
    const double s = sum + t;
    comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  return sum + comp;
}

Polynomial assign(const ParametricPolynomial& p, const std::function<Rational(int)>& value) {
  Polynomial r(p.arity());
  for (const auto& [m, c] : p.terms()) r.add_term(m, c.evaluate(value));
  return r;
}

double coefficient_inf_norm(const Polynomial& p) {
  Rational best;
  for (const auto& [m, c] : p.terms()) {
    Rational a = abs(c);
    if (a > best) best = a;
  }
  return best.get_d();
}

FloatPolynomial::FloatPolynomial(const Polynomial& p) : arity_(p.arity()) {
  for (const auto& [m, c] : p.terms()) {
    coeffs_.push_back(c.get_d());
    exps_.insert(exps_.end(), m.exponents().begin(), m.exponents().end());
  }
}

double FloatPolynomial::operator()(const double* x) const {
  double sum = 0.0;
  const int* e = exps_.data();
  for (double c : coeffs_) {
    double t = c;
    for (std::size_t i = 0; i < arity_; ++i, ++e)
      for (int k = 0; k < *e; ++k) t *= x[i];
    sum += t;
  }
  return sum;
}

double FloatPolynomial::evaluate(std::span<const double> x) const {
  if (x.size() != arity_) throw std::invalid_argument("evaluate: point length mismatch");
  return (*this)(x.data());
}

}  // namespace qdelay
