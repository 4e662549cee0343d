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

#include "qdelay/poly/rational_matrix.h"

#include <stdexcept>

namespace qdelay {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd M(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) M(i, j) = (*this)(i, j).get_d();
  return M;
}

namespace {

bool eliminate(RationalMatrix A, bool strict) {
  if (!A.is_symmetric()) throw std::invalid_argument("definiteness test needs a symmetric matrix");
  const std::size_t n = A.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const int s = sgn(A(k, k));
    if (s < 0) return false;
    if (s == 0) {
      if (strict) return false;
      for (std::size_t j = k + 1; j < n; ++j)
        if (sgn(A(k, j)) != 0) return false;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(A(i, k)) == 0) continue;
      const Rational f = A(i, k) / A(k, k);
      for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
      A(i, k) = 0;
    }
  }
  return true;
}

}  // namespace

bool is_psd_exact(const RationalMatrix& A) { return eliminate(A, false); }
bool is_pd_exact(const RationalMatrix& A) { return eliminate(A, true); }

double min_eigenvalue(const RationalMatrix& A) {
  if (A.rows() == 0) return 0.0;
  Eigen::MatrixXd M = A.to_double();
  M = (0.5 * (M + M.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace qdelay
