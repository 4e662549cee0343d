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

#pragma once

#include <functional>
#include <map>
#include <string>

#include "qdelay/poly/rational.h"

namespace qdelay {

// c0 + sum_j c_j d_j over decision scalars d_j, identified by integer ids.
// Used as the coefficient ring of polynomials with unknowns; products of two
// non-constant forms are deliberately not provided.
class AffineForm {
 public:
  AffineForm() = default;
  AffineForm(const Rational& constant) : constant_(constant) {}  // NOLINT
  AffineForm(int value) : constant_(value) {}                     // NOLINT

  static AffineForm variable(int id, const Rational& coeff = 1);

  const Rational& constant() const { return constant_; }
  const std::map<int, Rational>& linear() const { return linear_; }
  Rational coefficient(int id) const;
  bool is_zero() const { return linear_.empty() && sgn(constant_) == 0; }
  bool is_constant() const { return linear_.empty(); }

  AffineForm& operator+=(const AffineForm& other);
  AffineForm& operator-=(const AffineForm& other);
  AffineForm& operator*=(const Rational& s);
  AffineForm operator-() const;

  Rational evaluate(const std::function<Rational(int)>& value) const;

  bool operator==(const AffineForm& other) const;

 private:
  Rational constant_;
  std::map<int, Rational> linear_;
};

AffineForm operator+(AffineForm a, const AffineForm& b);
AffineForm operator-(AffineForm a, const AffineForm& b);
AffineForm operator*(AffineForm a, const Rational& s);
AffineForm operator*(const Rational& s, AffineForm a);

inline bool is_zero(const AffineForm& a) { return a.is_zero(); }

std::string to_string(const AffineForm& a);

}  // namespace qdelay
