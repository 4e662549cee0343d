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
#include <stdexcept>
#include <vector>

#include "qdelay/certifier/delay_system.h"
#include "qdelay/poly/polynomial.h"

namespace qdelay::certifier {

// Decision data of the Lyapunov-Krasovskii template. C is Rational for a
// concrete certificate and AffineForm while the SDP is being posed.
template <typename C>
struct Decisions {
  BasicPolynomial<C> V0;              // arity n
  BasicPolynomial<C> V1;              // arity n
  std::vector<std::vector<C>> S;      // 2n x n
  std::vector<std::vector<C>> R, T;   // n x n, symmetric

  std::size_t n() const { return V0.arity(); }
};

namespace detail {

// sum_ij M_ij a_i b_j over polynomials of a common arity.
template <typename C>
BasicPolynomial<C> bilinear(const std::vector<std::vector<C>>& M, const std::vector<Polynomial>& a,
                            const std::vector<Polynomial>& b, std::size_t arity) {
  BasicPolynomial<C> r(arity);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!qdelay::is_zero(M[i][j])) r += times(M[i][j], a[i] * b[j]);
  return r;
}

template <typename C>
void check_decisions(const Decisions<C>& d, std::size_t n) {
  auto square = [n](const std::vector<std::vector<C>>& M) {
    if (M.size() != n) return false;
    for (const auto& row : M)
      if (row.size() != n) return false;
    return true;
  };
  bool ok = d.V0.arity() == n && d.V1.arity() == n && d.S.size() == 2 * n && square(d.R) && square(d.T);
  for (const auto& row : d.S) ok = ok && row.size() == n;
  if (!ok) throw std::invalid_argument("decision dimensions do not match the system (n = " + std::to_string(n) + ")");
}

inline std::vector<Polynomial> variables(std::size_t arity, std::size_t first, std::size_t count) {
  std::vector<Polynomial> v;
  for (std::size_t i = 0; i < count; ++i) v.push_back(Polynomial::variable(arity, first + i));
  return v;
}

}  // namespace detail

// F(x, x_d) = L V0 + V1(x) - V1(x_d) + v_star(x) + tau*eta*|g(x)|_T^2
//             + 2 [x; x_d]' S (x - x_d) + tau*|f(x, x_d)|_R^2
// with eta = g_scale_sq, so the noise term uses the full diffusion.
template <typename C>
BasicPolynomial<C> build_F(const DelaySystem& sys, const Decisions<C>& d) {
  const std::size_t n = sys.n;
  detail::check_decisions(d, n);
  if (sys.f.size() != n || sys.g.size() != n || sys.v_star.arity() != n)
    throw std::invalid_argument("build_F: system dimensions are inconsistent");
  const std::size_t a = 2 * n;
  BasicPolynomial<C> F = apply_generator(d.V0, sys.f, sys.g, sys.g_scale_sq);
  F += lift(d.V1, a, 0);
  F -= lift(d.V1, a, n);
  F += lift(BasicPolynomial<C>(times(C(1), sys.v_star)), a, 0);
  std::vector<Polynomial> g;
  for (const auto& gi : sys.g) g.push_back(lift(gi, a, 0));
  F += detail::bilinear(d.T, g, g, a) * Rational(sys.tau * sys.g_scale_sq);
  const auto e = detail::variables(a, 0, a);
  std::vector<Polynomial> diff;
  for (std::size_t j = 0; j < n; ++j) diff.push_back(e[j] - e[n + j]);
  F += detail::bilinear(d.S, e, diff, a) * Rational(2);
  F += detail::bilinear(d.R, sys.f, sys.f, a) * sys.tau;
  return F;
}

// Variables (x, x_d, y_T, y_R), arity 4n:
// Y = F + 2 e' S y_T + 2 tau e' S y_R - y_T' T y_T - tau y_R' R y_R,  e = [x; x_d].
template <typename C>
BasicPolynomial<C> build_upsilon(const BasicPolynomial<C>& F, const Decisions<C>& d, const Rational& tau) {
  const std::size_t n = d.n();
  detail::check_decisions(d, n);
  if (F.arity() != 2 * n) throw std::invalid_argument("build_upsilon: F must have arity 2n");
  const std::size_t a = 4 * n;
  BasicPolynomial<C> Y = lift(F, a, 0);
  const auto e = detail::variables(a, 0, 2 * n);
  const auto yT = detail::variables(a, 2 * n, n);
  const auto yR = detail::variables(a, 3 * n, n);
  const auto eSy = detail::bilinear(d.S, e, yT, a);
  Y += eSy * Rational(2);
  Y += detail::bilinear(d.S, e, yR, a) * Rational(2 * tau);
  Y -= detail::bilinear(d.T, yT, yT, a);
  Y -= detail::bilinear(d.R, yR, yR, a) * tau;
  return Y;
}

}  // namespace qdelay::certifier
