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

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qdelay/sdp/problem.h"

namespace qdelay::testdata {

// Strictly feasible instance built around a random positive definite X*
// (b = A(X*)) and, with an objective, a strictly dual feasible Z* so that an
// optimum exists. Total block dimension stays <= 50.
inline sdp::SdpProblem random_feasible_sdp(std::uint64_t seed, bool with_objective) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nblocks(1, 3), dim(1, 16), nfree(0, 2);
  std::normal_distribution<double> gauss;
  sdp::SdpProblem p;
  std::vector<int> dims;
  const int k = nblocks(rng);
  for (int b = 0; b < k; ++b) {
    dims.push_back(dim(rng));
    p.add_block(dims.back());
  }
  const int free = nfree(rng);
  if (free > 0) p.add_free(free);
  int total = 0;
  for (int d : dims) total += d * (d + 1) / 2;
  const int m = std::max(1, std::uniform_int_distribution<int>(1, std::max(1, total / 2))(rng));

  auto random_sym = [&](int d) {
    Eigen::MatrixXd M(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) M(i, j) = gauss(rng);
    return Eigen::MatrixXd(0.5 * (M + M.transpose()));
  };
  auto random_pd = [&](int d) {
    Eigen::MatrixXd M(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) M(i, j) = gauss(rng);
    return Eigen::MatrixXd(M * M.transpose() / d + 0.5 * Eigen::MatrixXd::Identity(d, d));
  };

  std::vector<Eigen::MatrixXd> xstar;
  for (int d : dims) xstar.push_back(random_pd(d));
  std::vector<double> zstar(free);
  for (auto& z : zstar) z = gauss(rng);
  std::vector<double> ystar(m);
  for (auto& y : ystar) y = gauss(rng);

  std::vector<Eigen::MatrixXd> objective;
  for (int d : dims) objective.push_back(with_objective ? random_pd(d) : Eigen::MatrixXd::Zero(d, d));
  std::vector<double> free_objective(free, 0.0);
  for (int i = 0; i < m; ++i) {
    std::vector<Eigen::MatrixXd> blocks;
    double rhs = 0.0;
    for (std::size_t b = 0; b < dims.size(); ++b) {
      blocks.push_back(random_sym(dims[b]));
      rhs += (blocks.back().array() * xstar[b].array()).sum();
      if (with_objective) objective[b] += ystar[i] * blocks.back();
    }
    std::vector<std::pair<int, double>> fc;
    for (int j = 0; j < free; ++j) {
      const double c = gauss(rng);
      fc.emplace_back(j, c);
      rhs += c * zstar[j];
      if (with_objective) free_objective[j] += ystar[i] * c;
    }
    p.add_constraint_dense(blocks, fc, rhs);
  }
  if (with_objective) {
    p.set_objective_dense(objective);
    for (int j = 0; j < free; ++j) p.set_free_objective(j, free_objective[j]);
  }
  return p;
}

}  // namespace qdelay::testdata
