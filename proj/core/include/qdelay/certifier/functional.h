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
#include <span>
#include <vector>

#include "qdelay/certifier/certify.h"

namespace qdelay::certifier {

// V(x_t) = V0(x(0)) + int_{-tau}^0 V1(x(s)) ds
//        + int_{-tau}^0 (s + tau) (|f(x(s), x(s - tau))|_R^2 + eta |g(x(s))|_T^2) ds,
// the inner double integral written as a single weighted one. Trapezoidal
// rule on the sampling grid.
class FunctionalEvaluator {
 public:
  FunctionalEvaluator(const StabilityCertificate& cert, const DelaySystem& system);

  // history holds 2D + 1 states at -2 tau, -2 tau + dt, ..., 0 with D = tau / dt
  // (integral to within 1e-9 relative); extra leading states are ignored.
  double operator()(const std::vector<std::vector<double>>& history, double dt) const;
  // Same on a flat row-major buffer of n values per state.
  double evaluate(std::span<const double> flat, double dt) const;

 private:
  std::size_t n_;
  double tau_, eta_;
  FloatPolynomial V0_, V1_;
  std::vector<FloatPolynomial> f_, g_;
  std::vector<std::vector<double>> R_, T_;
};

double evaluate_functional(const StabilityCertificate& cert, const DelaySystem& system,
                           const std::vector<std::vector<double>>& history, double dt);

// Grid steps per delay; throws unless tau / dt is an integer.
std::size_t steps_per_delay(double tau, double dt);

}  // namespace qdelay::certifier
