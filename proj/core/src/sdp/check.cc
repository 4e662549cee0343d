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

#include "qdelay/sdp/check.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdelay::sdp {

std::string CheckReport::first_failure() const {
  for (const auto& c : criteria)
    if (!c.passed) return c.name;
  return {};
}

CheckReport check_solution(const SdpProblem& problem, const SdpSolution& solution, double tol) {
  const auto& dims = problem.block_dims();
  if (solution.blocks.size() != dims.size()) throw std::invalid_argument("check_solution: block count mismatch");
  for (std::size_t b = 0; b < dims.size(); ++b)
    if (solution.blocks[b].rows() != dims[b] || solution.blocks[b].cols() != dims[b])
      throw std::invalid_argument("check_solution: block shape mismatch");
  if (solution.free_values.size() != problem.num_free())
    throw std::invalid_argument("check_solution: free variable count mismatch");

  CheckReport report;
  for (std::size_t b = 0; b < dims.size(); ++b) {
    const Eigen::MatrixXd& X = solution.blocks[b];
    const Eigen::MatrixXd S = 0.5 * (X + X.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    report.criteria.push_back({"psd block " + std::to_string(b), lmin, lmin >= -tol});
  }
  double res = 0.0;
  for (const auto& c : problem.constraints()) {
    double lhs = 0.0;
    for (const auto& e : c.entries) {
      const auto& X = solution.blocks[e.block];
      lhs += e.row == e.col ? e.value * X(e.row, e.col)
                            : e.value * (X(e.row, e.col) + X(e.col, e.row));
    }
    for (const auto& [j, v] : c.free) lhs += v * solution.free_values[j];
    res = std::max(res, std::abs(c.rhs - lhs));
  }
  report.criteria.push_back({"primal residual", res, res <= tol});
  report.passed = std::all_of(report.criteria.begin(), report.criteria.end(),
                              [](const CheckCriterion& c) { return c.passed; });
  return report;
}

}  // namespace qdelay::sdp
