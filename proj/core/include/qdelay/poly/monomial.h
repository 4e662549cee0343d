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

#include <cstddef>
#include <functional>
#include <vector>

namespace qdelay {

class Monomial {
 public:
  Monomial() = default;
  // The constant monomial over `arity` variables.
  explicit Monomial(std::size_t arity);
  explicit Monomial(std::vector<int> exponents);

  static Monomial variable(std::size_t arity, std::size_t index, int power = 1);

  std::size_t arity() const { return exps_.size(); }
  int degree() const { return degree_; }
  int exponent(std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }
  bool is_constant() const { return degree_ == 0; }

  Monomial operator*(const Monomial& other) const;

  // Places this monomial's variables at [offset, offset + arity()) of a
  // monomial with `new_arity` variables.
  Monomial lift(std::size_t new_arity, std::size_t offset) const;

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  bool operator!=(const Monomial& other) const { return exps_ != other.exps_; }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

// Graded lexicographic order, ascending: lower total degree first, then
// x1 > x2 > ... among equal degrees.
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// All monomials of total degree <= max_degree over `arity` variables, in
// ascending graded-lex order.
std::vector<Monomial> monomials_up_to(std::size_t arity, int max_degree);

// Same, restricted to variables listed in `vars` (the others get exponent 0).
std::vector<Monomial> monomials_up_to(std::size_t arity, const std::vector<std::size_t>& vars,
                                      int max_degree);

}  // namespace qdelay
