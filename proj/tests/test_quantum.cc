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
#include <random>

#include <gtest/gtest.h>

#include "qdelay/poly/text.h"
#include "qdelay/quantum/reduction.h"
#include "qdelay/quantum/spin.h"

using namespace qdelay;
using namespace qdelay::quantum;

namespace {

const Complex I(0.0, 1.0);

DensityMatrix random_state(std::size_t N, std::mt19937& rng) {
  std::normal_distribution<double> g;
  DenseMatrix A(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) A(i, j) = Complex(g(rng), g(rng));
  DenseMatrix rho = A * A.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(HermitianMatrix::from_dense(rho));
}

// Uniform point of the disc x1 (x1 - 1) + x2^2 + x3^2 <= 0 (a ball of radius 1/2).
std::array<double, 3> random_ball_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng);
    if (a * a + b * b + c * c < 0.25 - 1e-9) return {a + 0.5, b, c};
  }
}

SmeModel reference_model(Target t = Target::Up) { return make_sme_model(2, 1, 4, Rational(9, 10), t); }

}  // namespace

TEST(QuantumSpin, SpinHalfOperators) {
  const auto ops = make_spin_operators(2);
  EXPECT_EQ(ops.Fy(0, 1), Complex(0, 0.5));
  EXPECT_EQ(ops.Fy(1, 0), Complex(0, -0.5));
  EXPECT_EQ(ops.Fz(0, 0), Complex(0.5));
  EXPECT_EQ(ops.Fz(1, 1), Complex(-0.5));
}

TEST(QuantumSpin, CasimirAndSpectrum) {
  for (std::size_t N : {2u, 3u, 4u, 7u}) {
    const auto ops = make_spin_operators(N);
    EXPECT_LT((ops.Fy - ops.Fy.adjoint()).norm(), 1e-15);
    const DenseMatrix Fx = -I * (ops.Fy * ops.Fz - ops.Fz * ops.Fy);
    const double j = (N - 1) / 2.0;
    const DenseMatrix C = Fx * Fx + ops.Fy * ops.Fy + ops.Fz * ops.Fz;
    EXPECT_LT((C - j * (j + 1) * DenseMatrix::Identity(N, N)).norm(), 1e-12) << N;
    for (std::size_t k = 0; k < N; ++k) EXPECT_DOUBLE_EQ(ops.Fz(k, k).real(), j - static_cast<double>(k));
    EXPECT_NEAR(std::abs(ops.Fz.trace()), 0.0, 1e-15);
  }
}

TEST(QuantumSpin, ModelValidation) {
  EXPECT_THROW(make_sme_model(1, 1, 1, 1, Target::Up), std::invalid_argument);
  EXPECT_THROW(make_sme_model(2, 1, 1, 0, Target::Up), std::invalid_argument);
  EXPECT_THROW(make_sme_model(2, 1, 1, Rational(11, 10), Target::Up), std::invalid_argument);
  EXPECT_EQ(parse_target("down"), Target::Down);
  EXPECT_THROW(parse_target("sideways"), std::invalid_argument);
}

TEST(QuantumControl, Examples) {
  const auto up = reference_model();
  EXPECT_NEAR(control_input(up, up.target_state()), 0.0, 1e-15);
  EXPECT_NEAR(control_input(up, eigenprojector(2, Target::Down)), 1.0, 1e-15);
  const auto open = make_sme_model(2, 0, 0, Rational(9, 10), Target::Up);
  std::mt19937 rng(1);
  EXPECT_EQ(control_input(open, random_state(2, rng).dense()), 0.0);
  EXPECT_NEAR(control_input(make_sme_model(4, 1, 4, 1, Target::Up), eigenprojector(4, Target::Up)), 0.0, 1e-15);
}

TEST(QuantumSme, EigenstatesAreFixed) {
  const auto m = reference_model();
  for (Target t : {Target::Up, Target::Down}) {
    const DenseMatrix rho = eigenprojector(2, t);
    EXPECT_LT(sme_drift(m, rho, 0.0).dense().norm(), 1e-15);
    EXPECT_LT(sme_diffusion(m, rho).dense().norm(), 1e-15);
  }
}

TEST(QuantumSme, MaximallyMixedDiffusion) {
  const auto m = reference_model();
  const DenseMatrix rho = DensityMatrix::maximally_mixed(2).dense();
  EXPECT_LT((sme_diffusion(m, rho).dense() - m.sqrt_eta() * m.ops.Fz).norm(), 1e-15);
  EXPECT_LT(sme_drift(m, rho, 0.7).dense().norm(), 1e-15);
}

TEST(QuantumSme, TracelessIncrements) {
  std::mt19937 rng(2);
  for (std::size_t N = 2; N <= 10; ++N) {
    const auto m = make_sme_model(N, 1, 4, Rational(9, 10), Target::Up);
    for (int k = 0; k < 5; ++k) {
      const DenseMatrix rho = random_state(N, rng).dense();
      EXPECT_NEAR(sme_drift(m, rho, control_input(m, rho)).trace(), 0.0, 1e-12);
      EXPECT_NEAR(sme_diffusion(m, rho).trace(), 0.0, 1e-12);
    }
  }
}

TEST(QuantumDensity, Validation) {
  HermitianMatrix h(2);
  h.set(0, 0, 1.2);
  h.set(1, 1, -0.2);
  EXPECT_FALSE(check_density(h).valid);
  EXPECT_THROW(DensityMatrix{h}, std::invalid_argument);
  Eigen::VectorXcd psi(2);
  psi << 1.0, I;
  psi /= std::sqrt(2.0);
  const auto p = DensityMatrix::pure(psi);
  EXPECT_NEAR(p.matrix()(0, 1).imag(), -0.5, 1e-15);
  EXPECT_TRUE(check_density(p.matrix()).valid);
}

TEST(QuantumReduction, SystemPolynomials) {
  const std::vector<std::string> xx = {"x1", "x2", "xd1", "xd2"}, x = {"x1", "x2"};
  const auto up = reduce_spin_half(reference_model(), Rational(3, 10));
  EXPECT_EQ(up.f[0], parse_polynomial("-(xd1 + 4*xd2)*x2", xx));
  EXPECT_EQ(up.f[1], parse_polynomial("(xd1 + 4*xd2)*(x1 - 1/2) - x2/2", xx));
  EXPECT_EQ(up.g[0], parse_polynomial("2*x1*(x1 - 1)", x));
  EXPECT_EQ(up.g[1], parse_polynomial("(2*x1 - 1)*x2", x));
  EXPECT_EQ(up.g_scale_sq, Rational(9, 10));
  EXPECT_EQ(up.domain.at(0), parse_polynomial("x1^2 - x1 + x2^2", x));
  EXPECT_EQ(up.v_star, parse_polynomial("x1^2 + x2^2", x));
  const auto down = reduce_spin_half(reference_model(Target::Down), Rational(3, 10));
  EXPECT_EQ(down.f, up.f);
  EXPECT_EQ(down.g[0], -up.g[0]);
  EXPECT_THROW(reduce_spin_half(make_sme_model(3, 1, 4, 1, Target::Up), 0), std::invalid_argument);
}

TEST(QuantumReduction, EmbedProjectRoundTrip) {
  std::mt19937 rng(3);
  for (Target t : {Target::Up, Target::Down}) {
    const auto m = reference_model(t);
    for (int k = 0; k < 1000; ++k) {
      const auto p = random_ball_point(rng);
      const auto rho = embed_state({p[0], p[1]}, p[2], t);
      EXPECT_EQ(project_state(rho.dense(), t), p);
      EXPECT_NEAR(dist(m, rho.dense()), p[0], 1e-15);
    }
  }
  EXPECT_THROW(embed_state({1.5, 0.0}, 0.0, Target::Up), std::invalid_argument);
}

TEST(QuantumReduction, OneStepConsistency) {
  std::mt19937 rng(4);
  std::normal_distribution<double> g;
  const double dt = 1e-3;
  for (Target t : {Target::Up, Target::Down}) {
    const auto m = reference_model(t);
    const auto sys = reduce_spin_half(m, Rational(3, 10));
    for (int k = 0; k < 1000; ++k) {
      const auto p = random_ball_point(rng), pd = random_ball_point(rng);
      const double dw = std::sqrt(dt) * g(rng);
      const DenseMatrix rho = embed_state({p[0], p[1]}, p[2], t).dense();
      const DenseMatrix rho_d = embed_state({pd[0], pd[1]}, pd[2], t).dense();
      const double u = control_input(m, rho_d);
      EXPECT_NEAR(u, pd[0] + 4 * pd[1], 1e-12);
      const DenseMatrix next = rho + sme_drift(m, rho, u).dense() * dt + sme_diffusion(m, rho).dense() * dw;
      const auto proj = project_state(next, t);
      const std::vector<double> z = {p[0], p[1], pd[0], pd[1]}, zx = {p[0], p[1]};
      for (int i = 0; i < 2; ++i) {
        const double red = z[i] + evaluate(sys.f[i], z) * dt + m.sqrt_eta() * evaluate(sys.g[i], zx) * dw;
        EXPECT_NEAR(proj[i], red, 1e-10);
      }
    }
  }
}
