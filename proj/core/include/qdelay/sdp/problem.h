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

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qdelay::sdp {

// One entry of a symmetric block matrix: A(row, col) = A(col, row) = value.
// Stored with row <= col after normalization.
struct Entry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// sum_b <A_b, X_b> + sum_j free[j].second * z[free[j].first] = rhs
struct Constraint {
  std::vector<Entry> entries;
  std::vector<std::pair<int, double>> free;
  double rhs = 0.0;
};

// minimize sum_b <C_b, X_b> + c'z  subject to the constraints, X_b PSD, z free.
class SdpProblem {
 public:
  int add_block(int dim);
  // Returns the index of the first new free variable.
  int add_free(int count = 1);

  // Swaps entries to the upper triangle, merges duplicates and range-checks.
  // Returns the constraint index.
  int add_constraint(Constraint c);
  // Dense per-block form; every matrix must be symmetric within
  // kSymmetryTolerance relative to its largest entry, and is symmetrized.
  int add_constraint_dense(const std::vector<Eigen::MatrixXd>& blocks,
                           const std::vector<std::pair<int, double>>& free, double rhs);

  void add_objective(int block, int row, int col, double value);
  void set_objective_dense(const std::vector<Eigen::MatrixXd>& blocks);
  void set_free_objective(int index, double value);

  const std::vector<int>& block_dims() const { return block_dims_; }
  int num_free() const { return num_free_; }
  const std::vector<Entry>& objective() const { return objective_; }
  const std::vector<double>& free_objective() const { return free_objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool has_zero_objective() const;

  int total_dim() const;

  // Dense symmetric matrix of constraint i (or the objective with i = -1) on a block.
  Eigen::MatrixXd block_matrix(int constraint, int block) const;

  static constexpr double kSymmetryTolerance = 1e-12;

 private:
  std::vector<Entry> normalize(std::vector<Entry> entries) const;

  std::vector<int> block_dims_;
  int num_free_ = 0;
  std::vector<Entry> objective_;
  std::vector<double> free_objective_;
  std::vector<Constraint> constraints_;
};

enum class SdpStatus { Optimal, Feasible, Infeasible, Unknown };
std::string to_string(SdpStatus s);

struct SdpOptions {
  double feas_tol = 1e-7;
  double gap_tol = 1e-7;
  int max_iterations = 200;
  double rank_tol = 1e-10;
  // A unit dual direction y proves infeasibility when b'y > 10 feas_tol and
  // the largest eigenvalue of sum y_i A_i (and |B'y|) is at most
  // ray_tol * b'y: any feasible X would then need trace(X) >= 1 / ray_tol.
  double ray_tol = 1e-8;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::Unknown;
  std::vector<Eigen::MatrixXd> blocks;       // primal X
  Eigen::VectorXd free_values;               // z
  Eigen::VectorXd dual;                      // y, zero on dropped rows
  std::vector<Eigen::MatrixXd> dual_blocks;  // Z
  double primal_residual = 0.0;  // ||b - A(X) - Bz||_inf
  double dual_residual = 0.0;    // relative
  double gap = 0.0;              // relative
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  int iterations = 0;
  std::vector<int> dropped_rows;
  std::vector<int> fixed_free;
  Eigen::VectorXd farkas_ray;  // set when Infeasible
  std::string message;
};

// Writes the problem in SDPA sparse format. The SDP here is the SDPA dual
// (max <F0,Y> s.t. <Fi,Y> = ci), so F_i = A_i, c_i = b_i, F_0 = -C; each
// free variable becomes a pair of entries of a trailing diagonal LP block.
void write_sparse(const SdpProblem& problem, std::ostream& out);

}  // namespace qdelay::sdp
