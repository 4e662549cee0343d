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

#include <cmath>

#include <gtest/gtest.h>

#include "qdelay/poly/text.h"
#include "qdelay/quantum/reduction.h"
#include "qdelay/simulator/ensemble.h"
#include "qdelay/simulator/rng.h"
#include "qdelay/simulator/simulate.h"

using namespace qdelay;
using namespace qdelay::sim;

namespace {

using Block = std::array<std::uint32_t, 4>;

certifier::DelaySystem scalar(const char* f, const char* g, double box = 4.0) {
  certifier::DelaySystem s;
  s.n = 1;
  s.f = {parse_polynomial(f, std::vector<std::string>{"x1", "xd1"})};
  s.g = {parse_polynomial(g, std::vector<std::string>{"x1"})};
  s.domain = {parse_polynomial("x1^2", std::vector<std::string>{"x1"}) - Polynomial::constant(1, parse_rational(std::to_string(box)))};
  s.v_star = parse_polynomial("x1^2", std::vector<std::string>{"x1"});
  return s;
}

quantum::SmeModel reference_model() { return quantum::make_sme_model(2, 1, 4, Rational(9, 10), quantum::Target::Up); }

}  // namespace

TEST(SimRng, PhiloxKnownAnswers) {
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(SimRng, NormalMoments) {
  const CounterRng rng(123);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n / 2; ++i) {
    const auto z = rng.normal2(7, static_cast<std::uint32_t>(i));
    for (double v : z) {
      s += v;
      s2 += v * v;
    }
  }
  EXPECT_NEAR(s / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
  EXPECT_GT(to_open_unit(0, 0), 0.0);
  EXPECT_LT(to_open_unit(0xffffffff, 0xffffffff), 1.0);
}

TEST(SimReduced, ZeroDynamicsStayPut) {
  SimConfig c;
  c.horizon = 1.0;
  const auto tr = simulate_reduced(scalar("0", "0"), c, {{0.7}});
  for (const auto& x : tr.states) EXPECT_EQ(x[0], 0.7);
}

TEST(SimReduced, ExponentialDecay) {
  SimConfig c;
  c.horizon = 1.0;
  const auto tr = simulate_reduced(scalar("-x1", "0"), c, {{1.0}});
  EXPECT_NEAR(tr.times.back(), 1.0, 1e-12);
  EXPECT_NEAR(tr.states.back()[0], std::pow(1.0 - c.dt, 1000), 1e-12);
  EXPECT_NEAR(tr.states.back()[0], std::exp(-1.0), 1e-3);
}

TEST(SimReduced, DelayedFeedbackUsesHistory) {
  // dx = -x(t - 1) dt with x = 1 on [-1, 0]: x(t) = 1 - t on [0, 1].
  SimConfig c;
  c.tau = 1.0;
  c.horizon = 1.0;
  c.dt = 1.0 / 1024;
  const auto tr = simulate_reduced(scalar("-xd1", "0"), c, {{1.0}});
  EXPECT_NEAR(tr.states.back()[0], 0.0, 1e-12);
}

TEST(SimReduced, Reproducible) {
  const auto sys = quantum::reduce_spin_half(reference_model(), Rational(3, 10));
  SimConfig c;
  c.tau = 0.3;
  c.horizon = 2.0;
  c.seed = 9;
  const auto a = simulate_reduced(sys, c, {{1.0, 0.0}}, 3);
  const auto b = simulate_reduced(sys, c, {{1.0, 0.0}}, 3);
  const auto d = simulate_reduced(sys, c, {{1.0, 0.0}}, 4);
  EXPECT_EQ(a.states, b.states);
  EXPECT_NE(a.states, d.states);
  EXPECT_EQ(wiener_increment(9, 3, 17, 1e-3), wiener_increment(9, 3, 17, 1e-3));
}

TEST(SimConfig, RejectsNonIntegralDelay) {
  SimConfig c;
  c.tau = 0.3;
  c.dt = 7e-4;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.dt = 1e-3;
  EXPECT_NO_THROW(c.validate());
  c.window_times = {0.1};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.window_times = {0.3, 15.0};
  EXPECT_NO_THROW(c.validate());
  c.horizon = 0.2;
  c.window_times.clear();
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(SimReduced, RecordingAndWindows) {
  SimConfig c;
  c.tau = 0.01;
  c.horizon = 0.1;
  c.dt = 1e-3;
  c.record_every = 30;
  c.window_times = {0.05, 0.1};
  const auto tr = simulate_reduced(scalar("-xd1", "0"), c, {{1.0}});
  EXPECT_EQ(tr.times, record_times(c));
  ASSERT_EQ(tr.times.size(), 5u);  // 0, 0.03, 0.06, 0.09, 0.1
  EXPECT_NEAR(tr.times.back(), 0.1, 1e-12);
  ASSERT_EQ(tr.windows.size(), 2u);
  EXPECT_EQ(tr.windows[1].size(), 21u);
  EXPECT_EQ(tr.windows[1].back(), tr.states.back()[0]);
}

TEST(SimReduced, ProjectionIsRare) {
  const auto sys = quantum::reduce_spin_half(reference_model(), Rational(3, 10));
  SimConfig c;
  c.tau = 0.3;
  std::size_t proj = 0, steps = 0;
  for (std::size_t p = 0; p < 10; ++p) {
    const auto tr = simulate_reduced(sys, c, {{1.0, 0.0}}, p);
    proj += tr.projections;
    steps += tr.steps;
    for (const auto& x : tr.states) EXPECT_LE(evaluate(sys.domain[0], x), 1e-12);
  }
  EXPECT_LE(static_cast<double>(proj) / steps, 0.01);
}

TEST(SimReduced, GeneratorMatchesMonteCarlo) {
  // One step from (x, x_d) with the delay frozen at one step.
  const auto sys = quantum::reduce_spin_half(reference_model(), Rational(3, 10));
  const Polynomial V0 = parse_polynomial("x1^2 + 3*x1*x2 - x2^2", std::vector<std::string>{"x1", "x2"});
  const std::vector<double> x = {0.4, 0.2}, xd = {0.6, 0.1};
  SimConfig c;
  c.dt = 1e-3;
  c.tau = 1e-3;
  c.horizon = 1e-3;
  c.seed = 31;
  const int n = 200000;
  double s = 0, s2 = 0;
  const double v0 = evaluate(V0, x);
  for (int p = 0; p < n; ++p) {
    const auto tr = simulate_reduced(sys, c, {xd, x}, p);
    const double d = (evaluate(V0, tr.states.back()) - v0) / c.dt;
    s += d;
    s2 += d * d;
  }
  const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
  const std::vector<double> z = {x[0], x[1], xd[0], xd[1]};
  const double L = evaluate(apply_generator(V0, sys.f, sys.g, sys.g_scale_sq), z);
  EXPECT_LE(std::abs(mean - L), 3 * se) << "mean " << mean << " generator " << L << " se " << se;
}

TEST(SimReduced, FirstOrderInDt) {
  const auto sys = scalar("-xd1 - x1^3", "0");
  auto end = [&](double dt) {
    SimConfig c;
    c.tau = 0.25;
    c.horizon = 2.0;
    c.dt = dt;
    c.noise = false;
    return simulate_reduced(sys, c, {{1.0}}).states.back()[0];
  };
  const double ref = end(1.0 / 16384);
  const double e1 = std::abs(end(1.0 / 512) - ref), e2 = std::abs(end(1.0 / 1024) - ref);
  EXPECT_GT(e1 / e2, 1.6);
  EXPECT_LT(e1 / e2, 2.5);
}

TEST(SimSme, ReproducibleAndPhysical) {
  const auto m = reference_model();
  SimConfig c;
  c.tau = 0.3;
  c.horizon = 3.0;
  c.record_every = 100;
  const auto rho0 = quantum::DensityMatrix(quantum::HermitianMatrix::from_dense(quantum::eigenprojector(2, quantum::Target::Down)));
  const auto a = simulate_sme(m, c, rho0, {}, 2), b = simulate_sme(m, c, rho0, {}, 2);
  ASSERT_EQ(a.states.size(), b.states.size());
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    EXPECT_EQ(a.states[k].dense(), b.states[k].dense());
    EXPECT_TRUE(quantum::check_density(a.states[k]).valid);
  }
  const auto obs = simulate_sme_observable(m, c, rho0, {}, 2, [&](const quantum::DenseMatrix& r) { return quantum::dist(m, r); });
  ASSERT_EQ(obs.size(), a.states.size());
  for (std::size_t k = 0; k < obs.size(); ++k) EXPECT_EQ(obs[k], quantum::dist(m, a.states[k].dense()));
  EXPECT_LE(a.max_clip, 1e-3);
}

TEST(SimSme, TracksReducedModel) {
  // Same noise, same scheme: the two only differ by PSD clipping and
  // projection, both rare and small.
  const auto m = reference_model();
  const auto sys = quantum::reduce_spin_half(m, Rational(3, 10));
  SimConfig c;
  c.tau = 0.3;
  c.horizon = 2.0;
  const std::array<double, 2> x0 = {0.8, 0.3};
  const auto red = simulate_reduced(sys, c, {{x0[0], x0[1]}}, 5);
  const auto sme = simulate_sme(m, c, quantum::embed_state(x0, 0.0, m.target), {}, 5);
  ASSERT_EQ(red.states.size(), sme.states.size());
  double worst = 0;
  for (std::size_t k = 0; k < red.states.size(); ++k) {
    const auto p = quantum::project_state(sme.states[k].dense(), m.target);
    worst = std::max({worst, std::abs(p[0] - red.states[k][0]), std::abs(p[1] - red.states[k][1])});
  }
  EXPECT_LE(worst, 1e-3);
}

TEST(SimEnsemble, DeterministicPathsHaveNoSpread) {
  const auto sys = scalar("-x1", "0");
  SimConfig c;
  c.horizon = 0.5;
  c.record_every = 100;
  const PathRun run = [&](std::uint64_t, std::size_t p) {
    std::vector<double> out;
    for (const auto& x : simulate_reduced(sys, c, {{1.0}}, p).states) out.push_back(x[0]);
    return out;
  };
  const auto one = ensemble(run, 1, 1);
  const auto five = ensemble(run, 5, 1, 3);
  EXPECT_EQ(one.paths, 1u);
  EXPECT_EQ(one.mean, five.mean);
  for (double se : five.std_error) EXPECT_EQ(se, 0.0);
  EXPECT_EQ(five.min, five.max);
}

TEST(SimEnsemble, WorkerCountInvariant) {
  const auto m = reference_model();
  SimConfig c;
  c.tau = 0.3;
  c.horizon = 1.0;
  c.record_every = 50;
  const auto rho0 = quantum::DensityMatrix::maximally_mixed(2);
  const PathRun run = [&](std::uint64_t seed, std::size_t p) {
    SimConfig cc = c;
    cc.seed = seed;
    return simulate_sme_observable(m, cc, rho0, {}, p, [&](const quantum::DenseMatrix& r) { return quantum::dist(m, r); });
  };
  const auto a = ensemble(run, 12, 77, 1), b = ensemble(run, 12, 77, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(SimEnsemble, MartingaleShortHorizon) {
  const auto m = reference_model();
  SimConfig c;
  c.horizon = 1.0;
  c.paths = 300;
  c.seed = 5;
  const auto Fz = m.ops.Fz;
  const auto rep = martingale_check(m, c, quantum::DensityMatrix::maximally_mixed(2),
                                    [&](const quantum::DenseMatrix& r) { return (Fz * r).trace().real(); });
  EXPECT_TRUE(rep.passed) << rep.mean_final << " +- " << rep.stderr_final;
  EXPECT_GT(rep.stderr_final, 0.0);
}
