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

#include "qdelay/poly/affine_form.h"

namespace qdelay {

AffineForm AffineForm::variable(int id, const Rational& coeff) {
  AffineForm a;
  if (sgn(coeff) != 0) a.linear_.emplace(id, coeff);
  return a;
}

Rational AffineForm::coefficient(int id) const {
  auto it = linear_.find(id);
  return it == linear_.end() ? Rational(0) : it->second;
}

AffineForm& AffineForm::operator+=(const AffineForm& other) {
  constant_ += other.constant_;
  for (const auto& [id, c] : other.linear_) {
    auto [it, inserted] = linear_.emplace(id, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) linear_.erase(it);
    }
  }
  return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& other) {
  constant_ -= other.constant_;
  for (const auto& [id, c] : other.linear_) {
    auto [it, inserted] = linear_.emplace(id, -c);
    if (!inserted) {
      it->second -= c;
      if (sgn(it->second) == 0) linear_.erase(it);
    }
  }
  return *this;
}

AffineForm& AffineForm::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    constant_ = 0;
    linear_.clear();
    return *this;
  }
  constant_ *= s;
  for (auto& [id, c] : linear_) c *= s;
  return *this;
}

AffineForm AffineForm::operator-() const {
  AffineForm r = *this;
  r *= Rational(-1);
  return r;
}

Rational AffineForm::evaluate(const std::function<Rational(int)>& value) const {
  Rational r = constant_;
  for (const auto& [id, c] : linear_) r += c * value(id);
  return r;
}

bool AffineForm::operator==(const AffineForm& other) const {
  return constant_ == other.constant_ && linear_ == other.linear_;
}

AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
AffineForm operator*(AffineForm a, const Rational& s) { return a *= s; }
AffineForm operator*(const Rational& s, AffineForm a) { return a *= s; }

std::string to_string(const AffineForm& a) {
  std::string s = to_string(a.constant());
  for (const auto& [id, c] : a.linear()) s += " + " + to_string(c) + "*d" + std::to_string(id);
  return s;
}

}  // namespace qdelay
