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

#include "qdelay/simulator/simulate.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qdelay/simulator/rng.h"

namespace qdelay::sim {

void SimConfig::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be positive");
  if (!(tau >= 0.0)) fail("tau must be nonnegative");
  if (!(horizon >= tau)) fail("horizon must be at least tau");
  if (paths < 1) fail("paths must be at least 1");
  if (record_every < 1) fail("record_every must be at least 1");
  const double r = tau / dt;
  if (std::abs(r - std::round(r)) > 1e-9 * std::max(1.0, r)) {
    std::ostringstream m;
    m.precision(17);
    m << "tau/dt = " << r << " is not an integer";
    fail(m.str());
  }
  for (double t : window_times) {
    const double k = t / dt;
    if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k)) fail("window time " + std::to_string(t) + " is not on the grid");
    if (std::llround(k) < static_cast<long long>(delay_steps())) fail("window time " + std::to_string(t) + " is before tau");
    if (std::llround(k) > static_cast<long long>(steps())) fail("window time " + std::to_string(t) + " is past the horizon");
  }
}

std::size_t SimConfig::steps() const { return static_cast<std::size_t>(std::llround(horizon / dt)); }
std::size_t SimConfig::delay_steps() const { return static_cast<std::size_t>(std::llround(tau / dt)); }

double wiener_increment(std::uint64_t seed, std::size_t path, std::size_t step, double dt) {
  const CounterRng rng(seed);
  return std::sqrt(dt) * rng.normal2(path, static_cast<std::uint32_t>(step))[0];
}

std::vector<double> record_times(const SimConfig& config) {
  std::vector<double> t;
  const std::size_t K = config.steps();
  for (std::size_t k = 0; k <= K; ++k)
    if (k % config.record_every == 0 || k == K) t.push_back(static_cast<double>(k) * config.dt);
  return t;
}

int default_workers() {
  if (const char* v = std::getenv("QDELAY_WORKERS")) {
    const int w = std::atoi(v);
    if (w >= 1) return w;
  }
  return 1;
}

namespace {

bool inside(const std::vector<FloatPolynomial>& domain, const double* x, double tol) {
  for (const auto& p : domain)
    if (!(p(x) <= tol)) return false;
  return true;
}

}  // namespace

Trajectory simulate_reduced(const certifier::DelaySystem& sys, const SimConfig& config,
                            const std::vector<std::vector<double>>& history, std::size_t path) {
  config.validate();
  const std::size_t n = sys.n;
  const std::size_t D = config.delay_steps();
  const std::size_t K = config.steps();
  if (history.size() != 1 && history.size() != D + 1)
    throw std::invalid_argument("history must hold 1 or tau/dt + 1 states");
  std::vector<FloatPolynomial> f(sys.f.begin(), sys.f.end()), g(sys.g.begin(), sys.g.end());
  std::vector<FloatPolynomial> dom(sys.domain.begin(), sys.domain.end());
  const double gs = config.noise ? std::sqrt(sys.g_scale_sq.get_d()) : 0.0;
  const std::vector<double> center = sys.projection_center();
  if (!inside(dom, center.data(), 0.0)) throw std::invalid_argument("projection center is outside the domain");
  for (const auto& x : history) {
    if (x.size() != n) throw std::invalid_argument("history state has the wrong dimension");
    if (!inside(dom, x.data(), 1e-9)) throw std::invalid_argument("history leaves the domain");
  }

  const std::size_t M = config.window_times.empty() ? D + 1 : 2 * D + 1;
  std::vector<double> ring(M * n);
  auto slot = [&](long long i) -> double* {
    const long long m = static_cast<long long>(M);
    return ring.data() + static_cast<std::size_t>(((i % m) + m) % m) * n;
  };
  // Time indices -(M-1)..0; anything before -D repeats the first history state.
  for (long long i = -static_cast<long long>(M) + 1; i <= 0; ++i) {
    const long long j = std::max<long long>(i + static_cast<long long>(D), 0);
    const auto& src = history.size() == 1 ? history[0] : history[static_cast<std::size_t>(j)];
    std::copy(src.begin(), src.end(), slot(i));
  }

  std::vector<std::size_t> window_steps;
  for (double t : config.window_times) window_steps.push_back(static_cast<std::size_t>(std::llround(t / config.dt)));

  Trajectory tr;
  tr.seed = config.seed;
  tr.path = path;
  tr.steps = K;
  tr.windows.resize(window_steps.size());
  auto capture = [&](std::size_t k) {
    for (std::size_t w = 0; w < window_steps.size(); ++w) {
      if (window_steps[w] != k) continue;
      auto& out = tr.windows[w];
      out.clear();
      for (long long i = static_cast<long long>(k) - 2 * static_cast<long long>(D); i <= static_cast<long long>(k); ++i)
        out.insert(out.end(), slot(i), slot(i) + n);
    }
  };
  auto record = [&](std::size_t k) {
    if (k % config.record_every == 0 || k == K) {
      tr.times.push_back(static_cast<double>(k) * config.dt);
      tr.states.emplace_back(slot(static_cast<long long>(k)), slot(static_cast<long long>(k)) + n);
    }
    capture(k);
  };
  record(0);

  const CounterRng rng(config.seed);
  const double sdt = std::sqrt(config.dt);
  std::vector<double> xx(2 * n), next(n);
  for (std::size_t k = 0; k < K; ++k) {
    const long long kk = static_cast<long long>(k);
    const double* x = slot(kk);
    const double* xd = slot(kk - static_cast<long long>(D));
    std::copy(x, x + n, xx.begin());
    std::copy(xd, xd + n, xx.begin() + static_cast<long>(n));
    const double dw = gs != 0.0 ? sdt * rng.normal2(path, static_cast<std::uint32_t>(k))[0] : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = x[i] + f[i](xx.data()) * config.dt;
      if (gs != 0.0) next[i] += gs * g[i](x) * dw;
      if (!std::isfinite(next[i])) {
        std::ostringstream m;
        m << "non-finite state at step " << k + 1 << " (t = " << (k + 1) * config.dt << ") of path " << path;
        throw std::runtime_error(m.str());
      }
    }
    if (!inside(dom, next.data(), 0.0)) {
      double lo = 0.0, hi = 1.0;
      std::vector<double> p(n);
      for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        for (std::size_t i = 0; i < n; ++i) p[i] = center[i] + mid * (next[i] - center[i]);
        (inside(dom, p.data(), 0.0) ? lo : hi) = mid;
      }
      double moved = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        p[i] = center[i] + lo * (next[i] - center[i]);
        moved += (p[i] - next[i]) * (p[i] - next[i]);
      }
      next = p;
      ++tr.projections;
      tr.max_projection = std::max(tr.max_projection, std::sqrt(moved));
    }
    std::copy(next.begin(), next.end(), slot(kk + 1));
    record(k + 1);
  }
  return tr;
}

namespace {

using SmallMatrix = Eigen::Matrix<quantum::Complex, Eigen::Dynamic, Eigen::Dynamic, 0, 16, 16>;

struct SmeStepper {
  SmallMatrix Fy, Fz, rf;
  double k1, k2, sqrt_eta;

  explicit SmeStepper(const quantum::SmeModel& m)
      : Fy(m.ops.Fy), Fz(m.ops.Fz), rf(m.target_state()), k1(m.k1.get_d()), k2(m.k2.get_d()), sqrt_eta(m.sqrt_eta()) {
    if (m.ops.N > 16) throw std::invalid_argument("the filter simulator supports N <= 16");
  }

  double control(const SmallMatrix& rho) const {
    const double overlap = (rho * rf).trace().real();
    const SmallMatrix c = Fy * rho - rho * Fy;
    const double comm = (quantum::Complex(0, 1) * (c * rf).trace()).real();
    return k1 * (1.0 - overlap) + k2 * comm;
  }

  void step(SmallMatrix& rho, double u, double dt, double dw, SmeTrajectory& tr) const {
    const SmallMatrix c1 = Fz * rho - rho * Fz;
    SmallMatrix next = rho + (quantum::Complex(0, u * dt) * (Fy * rho - rho * Fy) - (0.5 * dt) * (Fz * c1 - c1 * Fz));
    if (dw != 0.0) {
      const double m = (Fz * rho).trace().real();
      next += (sqrt_eta * dw) * (Fz * rho + rho * Fz - (2.0 * m) * rho);
    }
    rho = (0.5 * (next + next.adjoint())).eval();
    const double t = rho.trace().real();
    tr.max_trace_fix = std::max(tr.max_trace_fix, std::abs(t - 1.0));
    rho /= t;
    Eigen::SelfAdjointEigenSolver<SmallMatrix> es;
    double lmin;
    if (rho.rows() == 2) {
      const double a = rho(0, 0).real(), d = rho(1, 1).real();
      lmin = 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(rho(0, 1)));
    } else {
      es.compute(rho, Eigen::EigenvaluesOnly);
      lmin = es.eigenvalues()[0];
    }
    if (lmin < -1e-13) {
      es.compute(rho);
      Eigen::VectorXd l = es.eigenvalues().cwiseMax(0.0);
      rho = es.eigenvectors() * l.cast<quantum::Complex>().asDiagonal() * es.eigenvectors().adjoint();
      rho = (0.5 * (rho + rho.adjoint())).eval();
      rho /= rho.trace().real();
      ++tr.psd_repairs;
      tr.max_clip = std::max(tr.max_clip, -lmin);
    }
  }
};

template <typename OnRecord>
SmeTrajectory run_sme(const quantum::SmeModel& model, const SimConfig& config, const quantum::DensityMatrix& rho0,
                      const SmeOptions& options, std::size_t path, OnRecord&& on_record) {
  config.validate();
  if (rho0.size() != model.ops.N) throw std::invalid_argument("initial state does not match the model dimension");
  const SmeStepper st(model);
  const std::size_t D = config.delay_steps();
  const std::size_t K = config.steps();
  SmallMatrix rho = rho0.dense();
  const double u0 = options.control ? st.control(rho) : 0.0;
  std::vector<double> ring(D + 1, u0);  // u at time indices k - D .. k
  SmeTrajectory tr;
  tr.seed = config.seed;
  tr.path = path;
  tr.steps = K;
  const CounterRng rng(config.seed);
  const double sdt = std::sqrt(config.dt);
  auto applied = [&](std::size_t k) { return ring[(k + 1) % (D + 1)]; };  // u at index k - D
  for (std::size_t k = 0;; ++k) {
    // ring slot k % (D+1) holds u(rho_k); slot (k+1) % (D+1) still holds u(rho_{k-D}).
    ring[k % (D + 1)] = options.control ? st.control(rho) : 0.0;
    const double u = applied(k);
    if (k % config.record_every == 0 || k == K) on_record(tr, k, rho, u);
    if (k == K) break;
    const double dw = config.noise ? sdt * rng.normal2(path, static_cast<std::uint32_t>(k))[0] : 0.0;
    st.step(rho, u, config.dt, dw, tr);
    if (!rho.allFinite()) {
      std::ostringstream m;
      m << "non-finite state at step " << k + 1 << " of path " << path;
      throw std::runtime_error(m.str());
    }
  }
  return tr;
}

quantum::DenseMatrix to_dense(const SmallMatrix& m) { return quantum::DenseMatrix(m); }

}  // namespace

SmeTrajectory simulate_sme(const quantum::SmeModel& model, const SimConfig& config, const quantum::DensityMatrix& rho0,
                           const SmeOptions& options, std::size_t path) {
  return run_sme(model, config, rho0, options, path,
                 [&](SmeTrajectory& tr, std::size_t k, const SmallMatrix& rho, double u) {
                   tr.times.push_back(static_cast<double>(k) * config.dt);
                   tr.states.push_back(quantum::HermitianMatrix::from_dense(to_dense(rho)));
                   tr.controls.push_back(u);
                 });
}

std::vector<double> simulate_sme_observable(const quantum::SmeModel& model, const SimConfig& config,
                                            const quantum::DensityMatrix& rho0, const SmeOptions& options,
                                            std::size_t path,
                                            const std::function<double(const quantum::DenseMatrix&)>& observable) {
  std::vector<double> out;
  run_sme(model, config, rho0, options, path,
          [&](SmeTrajectory&, std::size_t, const SmallMatrix& rho, double) { out.push_back(observable(to_dense(rho))); });
  return out;
}

}  // namespace qdelay::sim
