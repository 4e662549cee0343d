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

#include "qdelay/poly/monomial.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qdelay {

Monomial::Monomial(std::size_t arity) : exps_(arity, 0) {}

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_)
    if (e < 0) throw std::invalid_argument("negative exponent in monomial");
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
}

Monomial Monomial::variable(std::size_t arity, std::size_t index, int power) {
  if (index >= arity)
    throw std::out_of_range("variable index " + std::to_string(index) + " out of range");
  std::vector<int> e(arity, 0);
  e[index] = power;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (arity() != other.arity()) throw std::invalid_argument("monomial arity mismatch");
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::lift(std::size_t new_arity, std::size_t offset) const {
  if (offset + arity() > new_arity) throw std::invalid_argument("lift target arity too small");
  Monomial r(new_arity);
  std::copy(exps_.begin(), exps_.end(), r.exps_.begin() + static_cast<long>(offset));
  r.degree_ = degree_;
  return r;
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  // Among equal degrees, the monomial with the larger leading exponent is
  // larger (x1 > x2).
  return a.exponents() < b.exponents();
}

std::vector<Monomial> monomials_up_to(std::size_t arity, const std::vector<std::size_t>& vars,
                                      int max_degree) {
  if (max_degree < 0) return {};
  std::vector<Monomial> out;
  std::vector<int> e(arity, 0);
  // Enumerate exponent vectors over `vars` recursively.
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == vars.size()) {
      out.emplace_back(e);
      return;
    }
    for (int p = 0; p <= left; ++p) {
      e[vars[k]] = p;
      rec(k + 1, left - p);
    }
    e[vars[k]] = 0;
  };
  rec(0, max_degree);
  std::sort(out.begin(), out.end(), GradedLexLess());
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t arity, int max_degree) {
  std::vector<std::size_t> vars(arity);
  std::iota(vars.begin(), vars.end(), 0);
  return monomials_up_to(arity, vars, max_degree);
}

}  // namespace qdelay
