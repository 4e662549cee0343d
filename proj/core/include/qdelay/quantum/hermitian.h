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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qdelay::quantum {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

// Packed upper triangle with a real diagonal: A == A* holds exactly for
// every value of this type.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t n) : n_(n), data_(n * (n + 1) / 2) {}
  // Keeps (M + M*)/2.
  static HermitianMatrix from_dense(const DenseMatrix& M);

  std::size_t size() const { return n_; }
  Complex operator()(std::size_t i, std::size_t j) const;
  // i <= j; the diagonal keeps only the real part.
  void set(std::size_t i, std::size_t j, Complex value);

  DenseMatrix dense() const;
  double trace() const;
  Eigen::VectorXd eigenvalues() const;  // ascending

  HermitianMatrix& operator+=(const HermitianMatrix& other);
  HermitianMatrix& operator*=(double s);

 private:
  std::size_t index(std::size_t i, std::size_t j) const { return i * n_ - i * (i + 1) / 2 + j; }
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, HermitianMatrix a);

struct DensityCheck {
  bool valid = false;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
};

// trace 1 within trace_tol and smallest eigenvalue >= -eig_tol.
DensityCheck check_density(const HermitianMatrix& rho, double trace_tol = 1e-9, double eig_tol = 1e-9);

class DensityMatrix {
 public:
  // Throws std::invalid_argument unless check_density passes.
  explicit DensityMatrix(HermitianMatrix rho);
  static DensityMatrix pure(const Eigen::VectorXcd& psi);
  static DensityMatrix maximally_mixed(std::size_t n);

  const HermitianMatrix& matrix() const { return rho_; }
  std::size_t size() const { return rho_.size(); }
  DenseMatrix dense() const { return rho_.dense(); }

 private:
  HermitianMatrix rho_;
};

}  // namespace qdelay::quantum
