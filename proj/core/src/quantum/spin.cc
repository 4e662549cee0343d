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

#include "qdelay/quantum/spin.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdelay::quantum {

SpinOperators make_spin_operators(std::size_t N) {
  if (N < 2) throw std::invalid_argument("spin operators need N >= 2, got " + std::to_string(N));
  SpinOperators s;
  s.N = N;
  s.Fy = DenseMatrix::Zero(N, N);
  s.Fz = DenseMatrix::Zero(N, N);
  for (std::size_t m = 1; m < N; ++m) {
    const double c = std::sqrt(static_cast<double>((N - m) * m));
    s.Fy(m - 1, m) = Complex(0.0, 0.5 * c);
    s.Fy(m, m - 1) = Complex(0.0, -0.5 * c);
  }
  for (std::size_t j = 0; j < N; ++j)
    s.Fz(j, j) = 0.5 * (static_cast<double>(N) - 1.0 - 2.0 * static_cast<double>(j));
  return s;
}

const char* to_string(Target t) { return t == Target::Up ? "up" : "down"; }

Target parse_target(const std::string& text) {
  if (text == "up") return Target::Up;
  if (text == "down") return Target::Down;
  throw std::invalid_argument("target must be 'up' or 'down', got '" + text + "'");
}

DenseMatrix eigenprojector(std::size_t N, Target t) {
  DenseMatrix P = DenseMatrix::Zero(N, N);
  const std::size_t k = t == Target::Up ? 0 : N - 1;
  P(k, k) = 1.0;
  return P;
}

SmeModel make_sme_model(std::size_t N, const Rational& k1, const Rational& k2, const Rational& eta, Target target) {
  if (sgn(eta) <= 0 || eta > 1) throw std::invalid_argument("measurement efficiency must lie in (0, 1]");
  SmeModel m;
  m.ops = make_spin_operators(N);
  m.eta = eta;
  m.k1 = k1;
  m.k2 = k2;
  m.target = target;
  return m;
}

DenseMatrix SmeModel::target_state() const { return eigenprojector(ops.N, target); }

double SmeModel::sqrt_eta() const { return std::sqrt(eta.get_d()); }

namespace {

void check_shape(const SmeModel& m, const DenseMatrix& rho) {
  const auto N = static_cast<Eigen::Index>(m.ops.N);
  if (rho.rows() != N || rho.cols() != N)
    throw std::invalid_argument("state is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                                ", model expects " + std::to_string(N) + "x" + std::to_string(N));
}

}  // namespace

double control_input(const SmeModel& model, const DenseMatrix& rho) {
  check_shape(model, rho);
  const DenseMatrix rf = model.target_state();
  const DenseMatrix& Fy = model.ops.Fy;
  const Complex overlap = (rho * rf).trace();
  const Complex comm = (Complex(0, 1) * (Fy * rho - rho * Fy) * rf).trace();
  return model.k1.get_d() * (1.0 - overlap.real()) + model.k2.get_d() * comm.real();
}

HermitianMatrix sme_drift(const SmeModel& model, const DenseMatrix& rho, double u) {
  check_shape(model, rho);
  const DenseMatrix& Fy = model.ops.Fy;
  const DenseMatrix& Fz = model.ops.Fz;
  const DenseMatrix c1 = Fz * rho - rho * Fz;
  const DenseMatrix d = Complex(0, u) * (Fy * rho - rho * Fy) - 0.5 * (Fz * c1 - c1 * Fz);
  return HermitianMatrix::from_dense(d);
}

HermitianMatrix sme_diffusion(const SmeModel& model, const DenseMatrix& rho) {
  check_shape(model, rho);
  const DenseMatrix& Fz = model.ops.Fz;
  const double m = (Fz * rho).trace().real();
  const DenseMatrix d = model.sqrt_eta() * (Fz * rho + rho * Fz - 2.0 * m * rho);
  return HermitianMatrix::from_dense(d);
}

double dist(const SmeModel& model, const DenseMatrix& rho) {
  check_shape(model, rho);
  return 1.0 - (rho * model.target_state()).trace().real();
}

}  // namespace qdelay::quantum
