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

#include "qdelay/quantum/hermitian.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdelay::quantum {

HermitianMatrix HermitianMatrix::from_dense(const DenseMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("Hermitian matrix must be square");
  const auto n = static_cast<std::size_t>(M.rows());
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) h.set(i, j, 0.5 * (M(i, j) + std::conj(M(j, i))));
  return h;
}

Complex HermitianMatrix::operator()(std::size_t i, std::size_t j) const {
  return i <= j ? data_[index(i, j)] : std::conj(data_[index(j, i)]);
}

void HermitianMatrix::set(std::size_t i, std::size_t j, Complex value) {
  if (i > j) throw std::invalid_argument("HermitianMatrix::set expects i <= j");
  data_[index(i, j)] = i == j ? Complex(value.real(), 0.0) : value;
}

DenseMatrix HermitianMatrix::dense() const {
  DenseMatrix M(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) M(i, j) = (*this)(i, j);
  return M;
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += data_[index(i, i)].real();
  return t;
}

Eigen::VectorXd HermitianMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
  if (other.n_ != n_) throw std::invalid_argument("Hermitian matrix size mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  for (auto& v : data_) v *= s;
  return *this;
}

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

DensityCheck check_density(const HermitianMatrix& rho, double trace_tol, double eig_tol) {
  DensityCheck c;
  if (rho.size() == 0) return c;
  c.trace_error = std::abs(rho.trace() - 1.0);
  c.min_eigenvalue = rho.eigenvalues()[0];
  c.valid = c.trace_error <= trace_tol && c.min_eigenvalue >= -eig_tol;
  return c;
}

DensityMatrix::DensityMatrix(HermitianMatrix rho) : rho_(std::move(rho)) {
  const auto c = check_density(rho_);
  if (!c.valid)
    throw std::invalid_argument("not a density matrix (trace error " + std::to_string(c.trace_error) +
                                ", min eigenvalue " + std::to_string(c.min_eigenvalue) + ")");
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double nrm = psi.norm();
  if (nrm == 0.0) throw std::invalid_argument("zero state vector");
  const Eigen::VectorXcd v = psi / nrm;
  return DensityMatrix(HermitianMatrix::from_dense(v * v.adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) h.set(i, i, 1.0 / static_cast<double>(n));
  return DensityMatrix(std::move(h));
}

}  // namespace qdelay::quantum
