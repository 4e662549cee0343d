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

#include "qdelay/poly/rational.h"
#include "qdelay/quantum/hermitian.h"

namespace qdelay::quantum {

struct SpinOperators {
  std::size_t N = 0;  // N - 1 atoms
  DenseMatrix Fy, Fz;
};

// Fy(m-1, m) = (i/2) c_m, Fy(m, m-1) = -(i/2) c_m with c_m = sqrt((N - m) m),
// Fz = diag(N-1, N-3, ..., -(N-1)) / 2.
SpinOperators make_spin_operators(std::size_t N);

// Up is the top Fz eigenprojector e_1 e_1', Down the bottom one.
enum class Target { Up, Down };
const char* to_string(Target t);
Target parse_target(const std::string& text);

struct SmeModel {
  SpinOperators ops;
  Rational eta = 1;      // measurement efficiency in (0, 1]
  Rational k1 = 0, k2 = 0;
  Target target = Target::Up;

  DenseMatrix target_state() const;
  double sqrt_eta() const;
};

// Throws std::invalid_argument on N < 2 or eta outside (0, 1].
SmeModel make_sme_model(std::size_t N, const Rational& k1, const Rational& k2, const Rational& eta, Target target);

// Rank-one projector onto the top or bottom Fz eigenvector.
DenseMatrix eigenprojector(std::size_t N, Target t);

// u = k1 (1 - tr(rho rho_f)) + k2 tr(i [Fy, rho] rho_f).
double control_input(const SmeModel& model, const DenseMatrix& rho);

// i [u Fy, rho] - 1/2 [Fz, [Fz, rho]].
HermitianMatrix sme_drift(const SmeModel& model, const DenseMatrix& rho, double u);
// sqrt(eta) (Fz rho + rho Fz - 2 tr(Fz rho) rho).
HermitianMatrix sme_diffusion(const SmeModel& model, const DenseMatrix& rho);

// 1 - tr(rho rho_f).
double dist(const SmeModel& model, const DenseMatrix& rho);

}  // namespace qdelay::quantum
