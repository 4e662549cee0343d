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

#include "qdelay/quantum/reduction.h"

#include <stdexcept>

namespace qdelay::quantum {

certifier::DelaySystem reduce_spin_half(const SmeModel& model, const Rational& tau) {
  if (model.ops.N != 2) throw std::invalid_argument("the reduction needs N = 2");
  certifier::DelaySystem s;
  s.n = 2;
  s.tau = tau;
  s.g_scale_sq = model.eta;
  const auto x1 = Polynomial::variable(4, 0), x2 = Polynomial::variable(4, 1);
  const auto u = Polynomial::variable(4, 2) * model.k1 + Polynomial::variable(4, 3) * model.k2;
  const auto half = Polynomial::constant(4, Rational(1, 2));
  s.f = {-(u * x2), u * (x1 - half) - x2 * Rational(1, 2)};
  const auto y1 = Polynomial::variable(2, 0), y2 = Polynomial::variable(2, 1);
  const auto one = Polynomial::constant(2, Rational(1));
  Polynomial g1 = y1 * (y1 - one) * Rational(2);
  Polynomial g2 = (y1 * Rational(2) - one) * y2;
  if (model.target == Target::Down) {
    g1 = -g1;
    g2 = -g2;
  }
  s.g = {g1, g2};
  s.domain = {y1 * (y1 - one) + y2 * y2};
  s.v_star = y1 * y1 + y2 * y2;
  s.target = {Rational(0), Rational(0)};
  s.interior_point = {0.5, 0.0};
  s.builtin_invariant = true;
  s.name = std::string("spin-1/2 ") + to_string(model.target) + " k=(" + qdelay::to_string(model.k1) + "," +
           qdelay::to_string(model.k2) + ") eta=" + qdelay::to_string(model.eta);
  return s;
}

DensityMatrix embed_state(const std::array<double, 2>& x, double x3, Target target) {
  if (x[0] * (x[0] - 1.0) + x[1] * x[1] + x3 * x3 > 1e-12)
    throw std::invalid_argument("point lies outside the physical ball");
  HermitianMatrix h(2);
  const Complex off(x[1], x3);
  if (target == Target::Up) {
    h.set(0, 0, 1.0 - x[0]);
    h.set(0, 1, -off);
    h.set(1, 1, x[0]);
  } else {
    h.set(0, 0, x[0]);
    h.set(0, 1, off);
    h.set(1, 1, 1.0 - x[0]);
  }
  return DensityMatrix(std::move(h));
}

std::array<double, 3> project_state(const DenseMatrix& rho, Target target) {
  if (rho.rows() != 2 || rho.cols() != 2) throw std::invalid_argument("project_state expects a 2x2 state");
  if (target == Target::Up) return {rho(1, 1).real(), -rho(0, 1).real(), -rho(0, 1).imag()};
  return {rho(0, 0).real(), rho(0, 1).real(), rho(0, 1).imag()};
}

}  // namespace qdelay::quantum
