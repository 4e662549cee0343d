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

#include "qdelay/sdp/problem.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace qdelay::sdp {

int SdpProblem::add_block(int dim) {
  if (dim < 1) throw std::invalid_argument("block dimension must be positive");
  block_dims_.push_back(dim);
  return static_cast<int>(block_dims_.size()) - 1;
}

int SdpProblem::add_free(int count) {
  if (count < 0) throw std::invalid_argument("negative free variable count");
  const int first = num_free_;
  num_free_ += count;
  free_objective_.resize(num_free_, 0.0);
  return first;
}

std::vector<Entry> SdpProblem::normalize(std::vector<Entry> entries) const {
  std::map<std::tuple<int, int, int>, double> merged;
  for (auto e : entries) {
    if (e.block < 0 || e.block >= static_cast<int>(block_dims_.size()))
      throw std::out_of_range("constraint entry references unknown block");
    const int n = block_dims_[e.block];
    if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n)
      throw std::out_of_range("constraint entry outside its block (dimension mismatch)");
    if (e.row > e.col) std::swap(e.row, e.col);
    if (!std::isfinite(e.value)) throw std::invalid_argument("non-finite constraint entry");
    merged[{e.block, e.row, e.col}] += e.value;
  }
  std::vector<Entry> out;
  for (const auto& [k, v] : merged)
    if (v != 0.0) out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), v});
  return out;
}

int SdpProblem::add_constraint(Constraint c) {
  c.entries = normalize(std::move(c.entries));
  std::map<int, double> fm;
  for (const auto& [j, v] : c.free) {
    if (j < 0 || j >= num_free_) throw std::out_of_range("constraint references unknown free variable");
    fm[j] += v;
  }
  c.free.clear();
  for (const auto& [j, v] : fm)
    if (v != 0.0) c.free.emplace_back(j, v);
  if (!std::isfinite(c.rhs)) throw std::invalid_argument("non-finite right-hand side");
  constraints_.push_back(std::move(c));
  return static_cast<int>(constraints_.size()) - 1;
}

namespace {

std::vector<Entry> dense_to_entries(const std::vector<Eigen::MatrixXd>& blocks,
                                    const std::vector<int>& dims) {
  if (blocks.size() != dims.size()) throw std::invalid_argument("dense input: block count mismatch");
  std::vector<Entry> entries;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& A = blocks[b];
    if (A.size() == 0) continue;
    if (A.rows() != dims[b] || A.cols() != dims[b])
      throw std::invalid_argument("dense input: block dimension mismatch");
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > SdpProblem::kSymmetryTolerance * scale)
      throw std::invalid_argument("dense input: matrix is not symmetric");
    for (int i = 0; i < A.rows(); ++i)
      for (int j = i; j < A.cols(); ++j) {
        const double v = 0.5 * (A(i, j) + A(j, i));
        if (v != 0.0) entries.push_back({static_cast<int>(b), i, j, v});
      }
  }
  return entries;
}

}  // namespace

int SdpProblem::add_constraint_dense(const std::vector<Eigen::MatrixXd>& blocks,
                                     const std::vector<std::pair<int, double>>& free, double rhs) {
  Constraint c;
  c.entries = dense_to_entries(blocks, block_dims_);
  c.free = free;
  c.rhs = rhs;
  return add_constraint(std::move(c));
}

void SdpProblem::add_objective(int block, int row, int col, double value) {
  objective_.push_back({block, row, col, value});
  objective_ = normalize(std::move(objective_));
}

void SdpProblem::set_objective_dense(const std::vector<Eigen::MatrixXd>& blocks) {
  objective_ = normalize(dense_to_entries(blocks, block_dims_));
}

void SdpProblem::set_free_objective(int index, double value) {
  if (index < 0 || index >= num_free_) throw std::out_of_range("unknown free variable");
  free_objective_[index] = value;
}

bool SdpProblem::has_zero_objective() const {
  if (!objective_.empty()) return false;
  return std::all_of(free_objective_.begin(), free_objective_.end(), [](double v) { return v == 0.0; });
}

int SdpProblem::total_dim() const {
  int n = 0;
  for (int d : block_dims_) n += d;
  return n;
}

Eigen::MatrixXd SdpProblem::block_matrix(int constraint, int block) const {
  const int n = block_dims_.at(block);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  const auto& entries = constraint < 0 ? objective_ : constraints_.at(constraint).entries;
  for (const auto& e : entries) {
    if (e.block != block) continue;
    A(e.row, e.col) = e.value;
    A(e.col, e.row) = e.value;
  }
  return A;
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::Feasible: return "Feasible";
    case SdpStatus::Infeasible: return "Infeasible";
    case SdpStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

void write_sparse(const SdpProblem& problem, std::ostream& out) {
  const auto& dims = problem.block_dims();
  const int nf = problem.num_free();
  const int nblocks = static_cast<int>(dims.size()) + (nf > 0 ? 1 : 0);
  out << "\"qdelay sdp dump: matrix block row col value (1-based)\"\n";
  out << problem.constraints().size() << "\n" << nblocks << "\n";
  for (int d : dims) out << d << " ";
  if (nf > 0) out << -2 * nf;
  out << "\n";
  for (const auto& c : problem.constraints()) out << c.rhs << " ";
  out << "\n";
  out.precision(17);
  auto put = [&](std::size_t mat, int block, int row, int col, double v) {
    out << mat << " " << block + 1 << " " << row + 1 << " " << col + 1 << " " << v << "\n";
  };
  for (const auto& e : problem.objective()) put(0, e.block, e.row, e.col, -e.value);
  for (int j = 0; j < nf; ++j) {
    const double c = problem.free_objective()[j];
    if (c == 0.0) continue;
    put(0, static_cast<int>(dims.size()), 2 * j, 2 * j, -c);
    put(0, static_cast<int>(dims.size()), 2 * j + 1, 2 * j + 1, c);
  }
  for (std::size_t i = 0; i < problem.constraints().size(); ++i) {
    const auto& c = problem.constraints()[i];
    for (const auto& e : c.entries) put(i + 1, e.block, e.row, e.col, e.value);
    for (const auto& [j, v] : c.free) {
      put(i + 1, static_cast<int>(dims.size()), 2 * j, 2 * j, v);
      put(i + 1, static_cast<int>(dims.size()), 2 * j + 1, 2 * j + 1, -v);
    }
  }
}

}  // namespace qdelay::sdp
