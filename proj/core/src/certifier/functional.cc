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

#include "qdelay/certifier/functional.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdelay::certifier {

std::size_t steps_per_delay(double tau, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
  const double r = tau / dt;
  const double k = std::round(r);
  if (std::abs(r - k) > 1e-9 * std::max(1.0, r))
    throw std::invalid_argument("tau/dt = " + std::to_string(r) + " is not an integer");
  return static_cast<std::size_t>(k);
}

FunctionalEvaluator::FunctionalEvaluator(const StabilityCertificate& cert, const DelaySystem& system)
    : n_(system.n), tau_(cert.tau.get_d()), eta_(system.g_scale_sq.get_d()), V0_(cert.V0), V1_(cert.V1) {
  if (cert.n != system.n) throw std::invalid_argument("certificate and system dimensions differ");
  for (const auto& p : system.f) f_.emplace_back(p);
  for (const auto& p : system.g) g_.emplace_back(p);
  const Eigen::MatrixXd R = cert.R.to_double(), T = cert.T.to_double();
  R_.assign(n_, std::vector<double>(n_));
  T_ = R_;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      R_[i][j] = R(i, j);
      T_[i][j] = T(i, j);
    }
}

double FunctionalEvaluator::evaluate(std::span<const double> flat, double dt) const {
  const std::size_t D = steps_per_delay(tau_, dt);
  const std::size_t need = (2 * D + 1) * n_;
  if (flat.size() < need)
    throw std::invalid_argument("history too short: need " + std::to_string(2 * D + 1) + " states over [-2tau, 0]");
  const double* h = flat.data() + (flat.size() - need);  // h + k n is the state at -2 tau + k dt
  const double* now = h + 2 * D * n_;
  double V = V0_(now);
  if (D == 0) return V;
  std::vector<double> xx(2 * n_), fv(n_), gv(n_);
  double acc = 0.0;
  for (std::size_t k = 0; k <= D; ++k) {
    const double s = -tau_ + static_cast<double>(k) * dt;
    const double* x = h + (D + k) * n_;
    const double* xd = h + k * n_;
    for (std::size_t i = 0; i < n_; ++i) {
      xx[i] = x[i];
      xx[n_ + i] = xd[i];
    }
    for (std::size_t i = 0; i < n_; ++i) {
      fv[i] = f_[i](xx.data());
      gv[i] = g_[i](x);
    }
    double q = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) q += R_[i][j] * fv[i] * fv[j] + eta_ * T_[i][j] * gv[i] * gv[j];
    const double w = (k == 0 || k == D) ? 0.5 : 1.0;
    acc += w * (V1_(x) + (s + tau_) * q);
  }
  return V + dt * acc;
}

double FunctionalEvaluator::operator()(const std::vector<std::vector<double>>& history, double dt) const {
  std::vector<double> flat;
  flat.reserve(history.size() * n_);
  for (const auto& x : history) {
    if (x.size() != n_) throw std::invalid_argument("history state has the wrong dimension");
    flat.insert(flat.end(), x.begin(), x.end());
  }
  return evaluate(flat, dt);
}

double evaluate_functional(const StabilityCertificate& cert, const DelaySystem& system,
                           const std::vector<std::vector<double>>& history, double dt) {
  return FunctionalEvaluator(cert, system)(history, dt);
}

}  // namespace qdelay::certifier
