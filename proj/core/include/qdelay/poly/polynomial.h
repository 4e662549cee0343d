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
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "qdelay/poly/affine_form.h"
#include "qdelay/poly/monomial.h"
#include "qdelay/poly/rational.h"

namespace qdelay {

// Sparse polynomial with terms kept in graded-lex order and no stored zeros.
// C is Rational for concrete polynomials and AffineForm for polynomials whose
// coefficients depend linearly on decision scalars.
template <typename C>
class BasicPolynomial {
 public:
  using Coefficient = C;
  using TermMap = std::map<Monomial, C, GradedLexLess>;

  BasicPolynomial() = default;
  explicit BasicPolynomial(std::size_t arity) : arity_(arity) {}

  static BasicPolynomial constant(std::size_t arity, const C& c) {
    BasicPolynomial p(arity);
    p.add_term(Monomial(arity), c);
    return p;
  }
  static BasicPolynomial variable(std::size_t arity, std::size_t index) {
    BasicPolynomial p(arity);
    p.add_term(Monomial::variable(arity, index), C(1));
    return p;
  }
  static BasicPolynomial term(const Monomial& m, const C& c) {
    BasicPolynomial p(m.arity());
    p.add_term(m, c);
    return p;
  }

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  void add_term(const Monomial& m, const C& c) {
    if (m.arity() != arity_) throw std::invalid_argument("term arity mismatch");
    if (qdelay::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (qdelay::is_zero(it->second)) terms_.erase(it);
    }
  }

  BasicPolynomial& operator+=(const BasicPolynomial& other) {
    check_arity(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& other) {
    check_arity(other);
    for (const auto& [m, c] : other.terms_) add_term(m, C(-c));
    return *this;
  }
  BasicPolynomial& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  BasicPolynomial operator-() const {
    BasicPolynomial r = *this;
    r *= Rational(-1);
    return r;
  }

  bool operator==(const BasicPolynomial& other) const {
    return arity_ == other.arity_ && terms_ == other.terms_;
  }
  bool operator!=(const BasicPolynomial& other) const { return !(*this == other); }

  void check_arity(const BasicPolynomial& other) const {
    if (arity_ != other.arity_)
      throw std::invalid_argument("polynomial arity mismatch (" + std::to_string(arity_) + " vs " +
                                  std::to_string(other.arity_) + ")");
  }

 private:
  std::size_t arity_ = 0;
  TermMap terms_;
};

using Polynomial = BasicPolynomial<Rational>;
using ParametricPolynomial = BasicPolynomial<AffineForm>;

template <typename C>
BasicPolynomial<C> operator+(BasicPolynomial<C> a, const BasicPolynomial<C>& b) {
  return a += b;
}
template <typename C>
BasicPolynomial<C> operator-(BasicPolynomial<C> a, const BasicPolynomial<C>& b) {
  return a -= b;
}
template <typename C>
BasicPolynomial<C> operator*(BasicPolynomial<C> a, const Rational& s) {
  return a *= s;
}
template <typename C>
BasicPolynomial<C> operator*(const Rational& s, BasicPolynomial<C> a) {
  return a *= s;
}

// Product with a concrete polynomial; for C = Rational this is the ordinary
// polynomial product.
template <typename C>
BasicPolynomial<C> operator*(const BasicPolynomial<C>& a, const Polynomial& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("polynomial arity mismatch in product");
  BasicPolynomial<C> r(a.arity());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r.add_term(ma * mb, C(ca * cb));
  return r;
}
template <typename C>
  requires(!std::is_same_v<C, Rational>)
BasicPolynomial<C> operator*(const Polynomial& a, const BasicPolynomial<C>& b) {
  return b * a;
}

// c * p for a coefficient c of the target ring.
template <typename C>
BasicPolynomial<C> times(const C& c, const Polynomial& p) {
  BasicPolynomial<C> r(p.arity());
  if (is_zero(c)) return r;
  for (const auto& [m, pc] : p.terms()) r.add_term(m, C(c * pc));
  return r;
}

inline Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }
inline Polynomial mul(const Polynomial& a, const Polynomial& b) { return a * b; }

template <typename C>
BasicPolynomial<C> differentiate(const BasicPolynomial<C>& p, std::size_t var) {
  if (var >= p.arity())
    throw std::out_of_range("differentiation index " + std::to_string(var) + " out of range");
  BasicPolynomial<C> r(p.arity());
  for (const auto& [m, c] : p.terms()) {
    const int e = m.exponent(var);
    if (e == 0) continue;
    std::vector<int> ex = m.exponents();
    ex[var] -= 1;
    r.add_term(Monomial(std::move(ex)), C(c * Rational(e)));
  }
  return r;
}

// Re-indexes variables into [offset, offset + arity) of a larger space.
template <typename C>
BasicPolynomial<C> lift(const BasicPolynomial<C>& p, std::size_t new_arity, std::size_t offset) {
  BasicPolynomial<C> r(new_arity);
  for (const auto& [m, c] : p.terms()) r.add_term(m.lift(new_arity, offset), c);
  return r;
}

// Replaces variable i by assignments.at(i). Every variable that occurs in p
// must be assigned and all replacements must share one arity.
template <typename C>
BasicPolynomial<C> substitute(const BasicPolynomial<C>& p,
                              const std::map<std::size_t, Polynomial>& assignments) {
  if (assignments.empty()) {
    if (p.is_zero()) return p;
    throw std::invalid_argument("substitute: no assignments given");
  }
  const std::size_t target = assignments.begin()->second.arity();
  for (const auto& [i, q] : assignments) {
    if (q.arity() != target) throw std::invalid_argument("substitute: replacement arity inconsistency");
    if (i >= p.arity()) throw std::out_of_range("substitute: variable index out of range");
  }
  std::map<std::pair<std::size_t, int>, Polynomial> powers;
  auto power = [&](std::size_t i, int e) -> const Polynomial& {
    auto key = std::make_pair(i, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    Polynomial v = Polynomial::constant(target, Rational(1));
    for (int k = 0; k < e; ++k) v = v * assignments.at(i);
    return powers.emplace(key, std::move(v)).first->second;
  };
  BasicPolynomial<C> r(target);
  for (const auto& [m, c] : p.terms()) {
    Polynomial prod = Polynomial::constant(target, Rational(1));
    for (std::size_t i = 0; i < p.arity(); ++i) {
      const int e = m.exponent(i);
      if (e == 0) continue;
      if (!assignments.count(i))
        throw std::invalid_argument("substitute: variable x" + std::to_string(i + 1) +
                                    " occurs but is not assigned");
      prod = prod * power(i, e);
    }
    r += times(c, prod);
  }
  return r;
}

// Itô generator of V0 along dx = f(x, x_d) dt + g(x) dw with scalar w:
// (grad V0)' f + 1/2 g' (Hess V0) g, scaled so that the diffusion used is
// sqrt(g_scale_sq) * g. V0 and g have arity n, f has arity 2n; the result
// lives in (x, x_d).
template <typename C>
BasicPolynomial<C> apply_generator(const BasicPolynomial<C>& V0, const std::vector<Polynomial>& f,
                                   const std::vector<Polynomial>& g,
                                   const Rational& g_scale_sq = Rational(1)) {
  const std::size_t n = V0.arity();
  if (f.size() != n || g.size() != n)
    throw std::invalid_argument("apply_generator: f and g must have one entry per state");
  for (const auto& fi : f)
    if (fi.arity() != 2 * n) throw std::invalid_argument("apply_generator: f must have arity 2n");
  for (const auto& gi : g)
    if (gi.arity() != n) throw std::invalid_argument("apply_generator: g must have arity n");
  BasicPolynomial<C> r(2 * n);
  std::vector<BasicPolynomial<C>> grad;
  for (std::size_t i = 0; i < n; ++i) grad.push_back(differentiate(V0, i));
  for (std::size_t i = 0; i < n; ++i) r += lift(grad[i], 2 * n, 0) * f[i];
  if (sgn(g_scale_sq) == 0) return r;
  BasicPolynomial<C> second(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto h = differentiate(grad[i], j);
      if (h.is_zero()) continue;
      second += h * (g[i] * g[j]);
    }
  }
  second *= Rational(g_scale_sq / 2);
  r += lift(second, 2 * n, 0);
  return r;
}

// Exact evaluation.
Rational evaluate_exact(const Polynomial& p, const std::vector<Rational>& point);

// Float evaluation with compensated (Neumaier) summation of the terms.
double evaluate(const Polynomial& p, std::span<const double> point);

// Substitutes concrete values for the decision scalars.
Polynomial assign(const ParametricPolynomial& p, const std::function<Rational(int)>& value);

// Largest |coefficient| as a double; 0 for the zero polynomial.
double coefficient_inf_norm(const Polynomial& p);

// Float view used in simulation hot loops.
class FloatPolynomial {
 public:
  FloatPolynomial() = default;
  explicit FloatPolynomial(const Polynomial& p);

  std::size_t arity() const { return arity_; }
  // Plain (uncompensated) summation; x must hold arity() values.
  double operator()(const double* x) const;
  double evaluate(std::span<const double> x) const;

 private:
  std::size_t arity_ = 0;
  std::vector<double> coeffs_;
  std::vector<int> exps_;  // row-major, arity_ per term
};

}  // namespace qdelay
