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
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qdelay/certifier/delay_system.h"
#include "qdelay/quantum/hermitian.h"
#include "qdelay/quantum/spin.h"

namespace qdelay::sim {

struct SimConfig {
  double dt = 1e-3;
  double horizon = 15.0;
  double tau = 0.0;
  std::uint64_t seed = 1;
  std::size_t paths = 1;
  std::size_t record_every = 1;  // keep every k-th step (the last step is always kept)
  bool noise = true;             // false drops the diffusion term
  // Reduced system only: capture the 2 tau/dt + 1 states on [t - 2 tau, t]
  // at each of these times (each must be a grid time >= tau).
  std::vector<double> window_times;

  // Throws std::invalid_argument: dt <= 0, horizon < tau, tau/dt not integral, ...
  void validate() const;
  std::size_t steps() const;
  std::size_t delay_steps() const;
};

// One Wiener increment per (seed, path, step), independent of scheduling.
double wiener_increment(std::uint64_t seed, std::size_t path, std::size_t step, double dt);

struct Trajectory {
  std::uint64_t seed = 0;
  std::size_t path = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::size_t steps = 0;
  std::size_t projections = 0;     // steps that left the domain
  double max_projection = 0.0;     // largest distance moved by a projection
  std::vector<std::vector<double>> windows;  // flat, n values per state
};

// Euler-Maruyama for dx = f(x, x(t - tau)) dt + sqrt(g_scale_sq) g(x) dw. The
// history is one state (held constant on [-tau, 0]) or tau/dt + 1 states on
// [-tau, 0]. A step that leaves the domain is pulled back along the ray to
// the system's projection center (bisection, so the result satisfies every
// domain inequality). Throws on a history outside the domain and on NaN.
Trajectory simulate_reduced(const certifier::DelaySystem& system, const SimConfig& config,
                            const std::vector<std::vector<double>>& history, std::size_t path = 0);

struct SmeOptions {
  bool control = true;  // false forces u = 0
};

struct SmeTrajectory {
  std::uint64_t seed = 0;
  std::size_t path = 0;
  std::vector<double> times;
  std::vector<quantum::HermitianMatrix> states;
  std::vector<double> controls;  // applied (delayed) input at the recorded steps
  std::size_t steps = 0;
  std::size_t psd_repairs = 0;   // steps where negative eigenvalues were clipped
  double max_clip = 0.0;         // most negative eigenvalue clipped
  double max_trace_fix = 0.0;    // largest |tr - 1| before renormalizing
};

// Euler-Maruyama for the filter with u_t = u(rho_{t - tau}) and rho held at
// rho0 on [-tau, 0]. Each step is followed by trace renormalization and, when
// needed, eigenvalue clipping.
SmeTrajectory simulate_sme(const quantum::SmeModel& model, const SimConfig& config, const quantum::DensityMatrix& rho0,
                           const SmeOptions& options = {}, std::size_t path = 0);

// Same noise, but only the recorded values of an observable are kept.
std::vector<double> simulate_sme_observable(const quantum::SmeModel& model, const SimConfig& config,
                                            const quantum::DensityMatrix& rho0, const SmeOptions& options,
                                            std::size_t path,
                                            const std::function<double(const quantum::DenseMatrix&)>& observable);

// Times at which states are recorded.
std::vector<double> record_times(const SimConfig& config);

// Worker threads from QDELAY_WORKERS (default 1).
int default_workers();

}  // namespace qdelay::sim
