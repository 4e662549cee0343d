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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "common/sdp_instances.h"
#include "qdelay/certifier/certify.h"
#include "qdelay/certifier/functional.h"
#include "qdelay/poly/text.h"
#include "qdelay/quantum/reduction.h"
#include "qdelay/quantum/spin.h"
#include "qdelay/sdp/check.h"
#include "qdelay/sdp/solver.h"
#include "qdelay/simulator/ensemble.h"
#include "qdelay/simulator/rng.h"
#include "qdelay/simulator/simulate.h"
#include "qdelay/sos/solve.h"

using namespace qdelay;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Runs a check and turns an escaping exception into a FAIL line.
void guarded(int id, const char* name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

const quantum::SmeModel& model() {
  static const auto m = quantum::make_sme_model(2, 1, 4, Rational(9, 10), quantum::Target::Up);
  return m;
}

const certifier::DelaySystem& reference_system() {
  static const auto s = quantum::reduce_spin_half(model(), Rational(3, 10));
  return s;
}

quantum::DensityMatrix from_dense(const quantum::DenseMatrix& m) {
  return quantum::DensityMatrix(quantum::HermitianMatrix::from_dense(m));
}

std::optional<certifier::StabilityCertificate> certificate;

void reference_certificate() {
  const auto t0 = Clock::now();
  const auto r = certifier::certify(reference_system());
  bool verified = false;
  if (r.certificate) verified = certifier::verify_stability_certificate(*r.certificate, reference_system()).passed;
  const double secs = seconds_since(t0);
  if (r.certificate) certificate = r.certificate;
  const bool ok = r.status == certifier::CertifyStatus::Certified && verified && r.residual_inf <= 1e-6 && secs <= 60;
  report(1, "reference instance certified", ok,
         std::string(certifier::to_string(r.status)) + ", exact verify " + (verified ? "ok" : "failed") +
             fmt(", residual %.3g, %.2f s", r.residual_inf, secs));
}

void sampled_upsilon() {
  if (!certificate) return report(2, "sampled Upsilon nonpositive", false, "no certificate");
  const auto s = certifier::sample_upsilon(*certificate, reference_system(), 10000, 2026);
  report(2, "sampled Upsilon nonpositive", s.points == 10000 && s.max_value <= 1e-6,
         fmt("%.0f samples, max %.3g", s.points, s.max_value));
}

void closed_loop_convergence() {
  const auto t0 = Clock::now();
  sim::SimConfig c;
  c.dt = 1e-3;
  c.horizon = 15;
  c.tau = 0.3;
  c.seed = 7;
  c.paths = 30;
  c.record_every = 100;
  const auto rho0 = from_dense(quantum::eigenprojector(2, quantum::Target::Down));
  const auto stats = sim::ensemble(
      [&](std::uint64_t seed, std::size_t path) {
        sim::SimConfig cc = c;
        cc.seed = seed;
        return sim::simulate_sme_observable(model(), cc, rho0, {}, path,
                                            [](const quantum::DenseMatrix& rho) { return quantum::dist(model(), rho); });
      },
      c.paths, c.seed, sim::default_workers());
  const auto times = sim::record_times(c);
  double worst_after_1 = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k)
    if (times[k] >= 1.0 - 1e-9) worst_after_1 = std::max(worst_after_1, stats.mean[k]);
  const double secs = seconds_since(t0);
  const double final_mean = stats.mean.back();
  report(3, "closed-loop filter converges from the opposite eigenstate",
         final_mean <= 0.15 && worst_after_1 < 1.0 && secs <= 300,
         fmt("mean dist at t=15 %.4f, max mean for t>=1 %.4f, %.1f s", final_mean, worst_after_1, secs));
}

void open_loop_martingale() {
  sim::SimConfig c;
  c.dt = 1e-3;
  c.horizon = 5;
  c.seed = 11;
  c.paths = 1000;
  const auto fz = model().ops.Fz;
  const auto r = sim::martingale_check(
      model(), c, quantum::DensityMatrix::maximally_mixed(2),
      [&](const quantum::DenseMatrix& rho) { return (fz * rho).trace().real(); }, sim::default_workers());
  report(4, "open-loop tr(Fz rho) is a martingale", r.passed,
         fmt("E[tr(Fz rho_T)] = %.4f, initial %.4f, 3 SE = %.4f", r.mean_final, r.initial, 3 * r.stderr_final));
}

void reduction_statistic() {
  sim::SimConfig c;
  c.dt = 1e-3;
  c.horizon = 20;
  c.seed = 13;
  c.paths = 1000;
  quantum::DenseMatrix rho = quantum::DenseMatrix::Zero(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  const auto r = sim::reduction_statistic(model(), c, from_dense(rho), 0.01, sim::default_workers());
  report(5, "open-loop collapse frequency matches tr(rho0 rho_f)", r.passed,
         fmt("%.0f of 1000 paths (fraction %.3f), expected %.3f, 3 sigma %.4f", r.hits, r.fraction, r.expected,
             3 * r.sigma));
}

void one_step_consistency() {
  const sim::CounterRng rng(17);
  const double dt = 1e-3;
  const auto& sys = reference_system();
  auto ball = [&](std::uint64_t stream, std::uint32_t index) {
    // Uniform point of the Bloch ball, x1 (x1 - 1) + x2^2 + x3^2 <= 0.
    for (std::uint32_t lane = 0;; ++lane) {
      const auto a = rng.uniform2(stream, index, lane), b = rng.uniform2(stream + 1, index, lane);
      const double p = a[0] - 0.5, q = a[1] - 0.5, r = b[0] - 0.5;
      if (p * p + q * q + r * r < 0.25 - 1e-9) return std::array<double, 3>{p + 0.5, q, r};
    }
  };
  double worst = 0.0;
  int draws = 0;
  for (std::uint32_t k = 0; k < 1000; ++k, ++draws) {
    const auto p = ball(0, k), pd = ball(2, k);
    const double dw = std::sqrt(dt) * rng.normal2(4, k)[0];
    const auto rho = quantum::embed_state({p[0], p[1]}, p[2], quantum::Target::Up).dense();
    const auto rho_d = quantum::embed_state({pd[0], pd[1]}, pd[2], quantum::Target::Up).dense();
    const double u = quantum::control_input(model(), rho_d);
    const quantum::DenseMatrix next = rho + quantum::sme_drift(model(), rho, u).dense() * dt +
                                      quantum::sme_diffusion(model(), rho).dense() * dw;
    const auto proj = quantum::project_state(next, quantum::Target::Up);
    const std::vector<double> z = {p[0], p[1], pd[0], pd[1]}, zx = {p[0], p[1]};
    for (int i = 0; i < 2; ++i) {
      const double red = z[i] + evaluate(sys.f[i], z) * dt + model().sqrt_eta() * evaluate(sys.g[i], zx) * dw;
      worst = std::max(worst, std::abs(proj[i] - red));
    }
  }
  report(6, "one filter step matches the reduced model", worst <= 1e-10,
         fmt("%.0f draws, max deviation %.3g", draws, worst));
}

void functional_supermartingale() {
  if (!certificate) return report(7, "functional decreases in mean", false, "no certificate");
  const auto& sys = reference_system();
  sim::SimConfig c;
  c.dt = 1e-3;
  c.horizon = 15;
  c.tau = 0.3;
  c.seed = 19;
  c.paths = 500;
  c.record_every = c.steps();
  c.window_times = {0.3, 0.6, 5.0, 10.0, 15.0};
  const certifier::FunctionalEvaluator V(*certificate, sys);
  const std::vector<std::vector<double>> history = {{1.0, 0.0}};
  const auto series = sim::run_paths(
      [&](std::uint64_t seed, std::size_t path) {
        sim::SimConfig cc = c;
        cc.seed = seed;
        const auto tr = sim::simulate_reduced(sys, cc, history, path);
        std::vector<double> v;
        for (const auto& w : tr.windows) v.push_back(V.evaluate(w, c.dt));
        return v;
      },
      c.paths, c.seed, sim::default_workers());
  const auto stats = sim::summarize(series);
  bool ok = true;
  std::string detail = "E[V] at t = 0.3, 0.6, 5, 10, 15:";
  for (std::size_t k = 0; k < stats.mean.size(); ++k) detail += fmt(" %.4g", stats.mean[k]);
  for (std::size_t k = 0; k + 1 < stats.mean.size(); ++k) {
    // Paired increments, so the spread is that of V(t_{k+1}) - V(t_k).
    std::vector<std::vector<double>> diff;
    for (const auto& s : series) diff.push_back({s[k + 1] - s[k]});
    const auto d = sim::summarize(diff);
    if (d.mean[0] > 3.0 * d.std_error[0]) {
      ok = false;
      detail += fmt("; increase %.3g > 3 SE %.3g after checkpoint %.0f", d.mean[0], 3 * d.std_error[0], k + 1);
    }
  }
  report(7, "functional decreases in mean", ok, detail);
}

void unit_suite() {
  std::vector<std::string> bad;
  const std::vector<std::string> xy = {"x", "y"};
  const auto P = [&](const char* t) { return parse_polynomial(t, xy); };
  if ((P("x + y") * P("x - y")) != P("x^2 - y^2")) bad.push_back("poly product");
  if (differentiate(P("x^3*y + 2*y"), 0) != P("3*x^2*y")) bad.push_back("poly derivative");
  if (evaluate_exact(P("x^2 + 1/2*y"), {Rational(1, 3), Rational(2)}) != Rational(10, 9)) bad.push_back("poly evaluate");

  sdp::SdpProblem tp;
  tp.add_block(2);
  tp.add_constraint({{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}}, {}, 1.0});
  tp.add_objective(0, 0, 0, 1.0);
  tp.add_objective(0, 1, 1, 2.0);
  const auto ts = sdp::solve(tp);
  if (ts.status != sdp::SdpStatus::Optimal || std::abs(ts.primal_objective - 1.0) > 1e-7) bad.push_back("sdp diag(1, 2)");
  sdp::SdpProblem np;
  np.add_block(1);
  np.add_constraint({{{0, 0, 0, 1.0}}, {}, -1.0});
  if (sdp::solve(np).status != sdp::SdpStatus::Infeasible) bad.push_back("sdp trace -1");

  const auto x1 = std::vector<std::string>{"x1"};
  const auto sq = sos::prove_sos(parse_polynomial("x1^2 - 2*x1 + 1", x1), sos::gram_basis(2, 1));
  if (!sq.verified || sq.items.size() != 1 || sq.items[0].gram(0, 1) != -1) bad.push_back("sos perfect square");
  if (sos::prove_sos(parse_polynomial("-x1^2 - 1", x1), sos::gram_basis(2, 1)).verified) bad.push_back("sos -x^2-1");

  int ok = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto p = testdata::random_feasible_sdp(5000 + seed, seed % 2 == 1);
    const auto s = sdp::solve(p);
    const bool solved = s.status == sdp::SdpStatus::Feasible || s.status == sdp::SdpStatus::Optimal;
    if (solved && sdp::check_solution(p, s, 1e-7).passed) ++ok;
  }
  std::string detail = fmt("%.0f of 200 random SDPs within 1e-7", ok);
  for (const auto& b : bad) detail += "; failed: " + b;
  report(8, "polynomial, SDP and SOS unit checks", bad.empty() && ok >= 198, detail);
}

}  // namespace

int main() {
  guarded(1, "reference instance certified", reference_certificate);
  guarded(2, "sampled Upsilon nonpositive", sampled_upsilon);
  guarded(3, "closed-loop filter converges from the opposite eigenstate", closed_loop_convergence);
  guarded(4, "open-loop tr(Fz rho) is a martingale", open_loop_martingale);
  guarded(5, "open-loop collapse frequency matches tr(rho0 rho_f)", reduction_statistic);
  guarded(6, "one filter step matches the reduced model", one_step_consistency);
  guarded(7, "functional decreases in mean", functional_supermartingale);
  guarded(8, "polynomial, SDP and SOS unit checks", unit_suite);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
