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

#include "qdelay/sdp/solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qdelay::sdp {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// A constraint row restricted to one block.
struct RowBlock {
  int row = 0;                 // internal row index
  std::vector<Entry> entries;  // scaled values
  MatrixXd dense;              // filled when the row is dense in the block
};

struct BlockData {
  int dim = 0;
  std::vector<RowBlock> rows;
  MatrixXd C;
};

struct Internal {
  std::vector<int> row_of;      // internal row -> original constraint
  std::vector<double> scale;    // internal row scaling
  std::vector<int> free_of;     // internal free column -> original free variable
  VectorXd b;                   // scaled rhs
  MatrixXd B;                   // scaled free columns (m x nf)
  VectorXd c;                   // free objective
  std::vector<BlockData> blocks;
  double normC = 0.0;
};

double inner(const std::vector<Entry>& entries, const MatrixXd& X) {
  double s = 0.0;
  for (const auto& e : entries)
    s += e.row == e.col ? e.value * X(e.row, e.col) : 2.0 * e.value * X(e.row, e.col);
  return s;
}

void accumulate(const std::vector<Entry>& entries, double y, MatrixXd& S) {
  for (const auto& e : entries) {
    S(e.row, e.col) += y * e.value;
    if (e.row != e.col) S(e.col, e.row) += y * e.value;
  }
}

// Largest alpha with X + alpha dX PSD, given the Cholesky factor of X.
double max_step(const Eigen::LLT<MatrixXd>& llt, const MatrixXd& dX) {
  MatrixXd T = llt.matrixL().solve(dX);
  T = llt.matrixL().solve(T.transpose()).transpose().eval();
  T = (0.5 * (T + T.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(T, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin < 0.0 ? -1.0 / lmin : kInf;
}

struct NtScaling {
  MatrixXd G, Ginv, W;
  VectorXd v;
};

bool nt_scaling(const MatrixXd& X, const MatrixXd& Z, NtScaling& s, Eigen::LLT<MatrixXd>& lx,
                Eigen::LLT<MatrixXd>& lz) {
  lx.compute(X);
  lz.compute(Z);
  if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
  const MatrixXd L = lx.matrixL();
  const MatrixXd R = lz.matrixL();
  Eigen::JacobiSVD<MatrixXd> svd(R.transpose() * L, Eigen::ComputeFullU | Eigen::ComputeFullV);
  s.v = svd.singularValues();
  if (s.v.minCoeff() <= 0.0) return false;
  const VectorXd isq = s.v.cwiseSqrt().cwiseInverse();
  s.G = L * svd.matrixV() * isq.asDiagonal();
  const MatrixXd Linv = lx.matrixL().solve(MatrixXd::Identity(X.rows(), X.rows()));
  s.Ginv = s.v.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() * Linv;
  s.W = s.G * s.G.transpose();
  return true;
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options) {
  const auto& dims = problem.block_dims();
  const int nb = static_cast<int>(dims.size());
  const int m0 = static_cast<int>(problem.constraints().size());
  const int nf0 = problem.num_free();
  const double ftol = options.feas_tol;

  SdpSolution sol;
  sol.blocks.resize(nb);
  sol.dual_blocks.resize(nb);
  sol.free_values = VectorXd::Zero(nf0);
  sol.dual = VectorXd::Zero(m0);

  // Residual of the original problem at (X, z).
  auto original_residual = [&](const std::vector<MatrixXd>& X, const VectorXd& z) {
    double r = 0.0;
    for (const auto& c : problem.constraints()) {
      double lhs = 0.0;
      for (const auto& e : c.entries)
        lhs += e.row == e.col ? e.value * X[e.block](e.row, e.col) : 2.0 * e.value * X[e.block](e.row, e.col);
      for (const auto& [j, v] : c.free) lhs += v * z[j];
      r = std::max(r, std::abs(c.rhs - lhs));
    }
    return r;
  };

  // Checks whether y (original row indexing) is a Farkas ray and, if so,
  // records it and returns true.
  auto try_ray = [&](VectorXd y) {
    const double ny = y.norm();
    if (!(ny > 0.0) || !std::isfinite(ny)) return false;
    y /= ny;
    double by = 0.0;
    for (int i = 0; i < m0; ++i) by += problem.constraints()[i].rhs * y[i];
    if (!(by > 10.0 * ftol)) return false;
    double viol = 0.0;
    for (int b = 0; b < nb; ++b) {
      MatrixXd S = MatrixXd::Zero(dims[b], dims[b]);
      for (int i = 0; i < m0; ++i)
        for (const auto& e : problem.constraints()[i].entries)
          if (e.block == b) {
            S(e.row, e.col) += y[i] * e.value;
            if (e.row != e.col) S(e.col, e.row) += y[i] * e.value;
          }
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(S, Eigen::EigenvaluesOnly);
      viol = std::max(viol, es.eigenvalues().maxCoeff());
    }
    VectorXd bty = VectorXd::Zero(nf0);
    for (int i = 0; i < m0; ++i)
      for (const auto& [j, v] : problem.constraints()[i].free) bty[j] += v * y[i];
    if (nf0 > 0) viol = std::max(viol, bty.cwiseAbs().maxCoeff());
    if (viol > options.ray_tol * by) return false;
    sol.status = SdpStatus::Infeasible;
    sol.farkas_ray = y;
    return true;
  };

  // ---- preprocessing: row scaling, dependent rows, dependent free columns.
  std::vector<int> offset(nb + 1, 0);
  for (int b = 0; b < nb; ++b) offset[b + 1] = offset[b] + dims[b] * (dims[b] + 1) / 2;
  const int nsvec = offset[nb];
  auto svec_index = [&](const Entry& e) {
    // Column-major upper triangle.
    return offset[e.block] + e.col * (e.col + 1) / 2 + e.row;
  };
  MatrixXd K = MatrixXd::Zero(nsvec + nf0, m0);  // one column per constraint
  std::vector<double> scale(m0, 1.0);
  for (int i = 0; i < m0; ++i) {
    const auto& c = problem.constraints()[i];
    for (const auto& e : c.entries) K(svec_index(e), i) = e.row == e.col ? e.value : std::sqrt(2.0) * e.value;
    for (const auto& [j, v] : c.free) K(nsvec + j, i) = v;
    const double nrm = K.col(i).norm();
    if (nrm == 0.0) {
      if (std::abs(c.rhs) > ftol) {
        VectorXd y = VectorXd::Zero(m0);
        y[i] = c.rhs > 0 ? 1.0 : -1.0;
        if (try_ray(y)) {
          sol.message = "constraint " + std::to_string(i) + " reads 0 = " + std::to_string(c.rhs);
          return sol;
        }
      }
      scale[i] = 1.0;
    } else {
      scale[i] = 1.0 / nrm;
      K.col(i) *= scale[i];
    }
  }
  std::vector<int> keep;
  if (m0 > 0) {
    Eigen::ColPivHouseholderQR<MatrixXd> qr(K);
    qr.setThreshold(options.rank_tol);
    const int rank = static_cast<int>(qr.rank());
    for (int k = 0; k < rank; ++k) keep.push_back(qr.colsPermutation().indices()[k]);
    std::sort(keep.begin(), keep.end());
    std::vector<char> kept(m0, 0);
    for (int i : keep) kept[i] = 1;
    if (rank < m0) {
      MatrixXd Kk(K.rows(), rank);
      VectorXd bk(rank);
      for (int k = 0; k < rank; ++k) {
        Kk.col(k) = K.col(keep[k]);
        bk[k] = problem.constraints()[keep[k]].rhs * scale[keep[k]];
      }
      Eigen::HouseholderQR<MatrixXd> kqr(Kk);
      for (int i = 0; i < m0; ++i) {
        if (kept[i]) continue;
        sol.dropped_rows.push_back(i);
        const VectorXd alpha = kqr.solve(K.col(i));
        const double delta = problem.constraints()[i].rhs * scale[i] - alpha.dot(bk);
        if (std::abs(delta) > ftol) {
          VectorXd y = VectorXd::Zero(m0);
          y[i] = scale[i];
          for (int k = 0; k < rank; ++k) y[keep[k]] -= alpha[k] * scale[keep[k]];
          if (delta < 0) y = -y;
          if (try_ray(y)) {
            sol.message = "dependent constraint " + std::to_string(i) + " is inconsistent";
            return sol;
          }
        }
      }
    }
  }
  const int m = static_cast<int>(keep.size());

  Internal in;
  in.row_of = keep;
  in.scale.resize(m);
  in.b.resize(m);
  for (int k = 0; k < m; ++k) {
    in.scale[k] = scale[keep[k]];
    in.b[k] = problem.constraints()[keep[k]].rhs * in.scale[k];
  }
  {
    MatrixXd Bfull = MatrixXd::Zero(m, nf0);
    for (int k = 0; k < m; ++k)
      for (const auto& [j, v] : problem.constraints()[keep[k]].free) Bfull(k, j) = v * in.scale[k];
    if (nf0 > 0 && m > 0) {
      Eigen::ColPivHouseholderQR<MatrixXd> qr(Bfull);
      qr.setThreshold(options.rank_tol);
      const int rank = static_cast<int>(qr.rank());
      for (int k = 0; k < rank; ++k) in.free_of.push_back(qr.colsPermutation().indices()[k]);
      std::sort(in.free_of.begin(), in.free_of.end());
    }
    std::vector<char> used(nf0, 0);
    for (int j : in.free_of) used[j] = 1;
    for (int j = 0; j < nf0; ++j)
      if (!used[j]) sol.fixed_free.push_back(j);
    in.B.resize(m, in.free_of.size());
    in.c.resize(in.free_of.size());
    for (std::size_t j = 0; j < in.free_of.size(); ++j) {
      in.B.col(j) = Bfull.col(in.free_of[j]);
      in.c[j] = problem.free_objective()[in.free_of[j]];
    }
  }
  const int nf = static_cast<int>(in.free_of.size());

  in.blocks.resize(nb);
  for (int b = 0; b < nb; ++b) {
    in.blocks[b].dim = dims[b];
    in.blocks[b].C = problem.block_matrix(-1, b);
  }
  for (int k = 0; k < m; ++k) {
    const auto& c = problem.constraints()[keep[k]];
    std::vector<std::vector<Entry>> per(nb);
    for (auto e : c.entries) {
      e.value *= in.scale[k];
      per[e.block].push_back(e);
    }
    for (int b = 0; b < nb; ++b) {
      if (per[b].empty()) continue;
      RowBlock rb;
      rb.row = k;
      rb.entries = std::move(per[b]);
      if (static_cast<int>(rb.entries.size()) > dims[b]) {
        rb.dense = MatrixXd::Zero(dims[b], dims[b]);
        accumulate(rb.entries, 1.0, rb.dense);
      }
      in.blocks[b].rows.push_back(std::move(rb));
    }
  }
  double normC2 = in.c.squaredNorm();
  for (const auto& bd : in.blocks) normC2 += bd.C.squaredNorm();
  in.normC = std::sqrt(normC2);

  // ---- starting point.
  int N = 0;
  for (int d : dims) N += d;
  std::vector<MatrixXd> X(nb), Z(nb);
  for (int b = 0; b < nb; ++b) {
    const int n = dims[b];
    double xi = std::max(10.0, std::sqrt(static_cast<double>(n)));
    double zeta = std::max({10.0, std::sqrt(static_cast<double>(n)), in.blocks[b].C.norm()});
    for (const auto& rb : in.blocks[b].rows) {
      double an = 0.0;
      for (const auto& e : rb.entries) an += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
      an = std::sqrt(an);
      xi = std::max(xi, n * (1.0 + std::abs(in.b[rb.row])) / (1.0 + an));
      zeta = std::max(zeta, an);
    }
    X[b] = xi * MatrixXd::Identity(n, n);
    Z[b] = zeta * MatrixXd::Identity(n, n);
  }
  VectorXd y = VectorXd::Zero(m);
  VectorXd z = VectorXd::Zero(nf);

  auto full_z = [&](const VectorXd& zi) {
    VectorXd out = VectorXd::Zero(nf0);
    for (int j = 0; j < nf; ++j) out[in.free_of[j]] = zi[j];
    return out;
  };
  auto full_y = [&](const VectorXd& yi) {
    VectorXd out = VectorXd::Zero(m0);
    for (int k = 0; k < m; ++k) out[in.row_of[k]] = yi[k] * in.scale[k];
    return out;
  };
  auto finish = [&](SdpStatus status, const std::string& msg) {
    sol.status = status;
    sol.message = msg;
    sol.blocks = X;
    sol.dual_blocks = Z;
    sol.free_values = full_z(z);
    sol.dual = full_y(y);
    sol.primal_residual = original_residual(X, sol.free_values);
    return sol;
  };

  const bool zero_objective = problem.has_zero_objective();
  const double gamma = 0.95;
  int stall = 0;
  std::vector<NtScaling> nt(nb);
  std::vector<Eigen::LLT<MatrixXd>> lx(nb), lz(nb);

  for (int it = 0; it <= options.max_iterations; ++it) {
    sol.iterations = it;
    // Residuals.
    VectorXd AX = VectorXd::Zero(m);
    for (int b = 0; b < nb; ++b)
      for (const auto& rb : in.blocks[b].rows) AX[rb.row] += inner(rb.entries, X[b]);
    const VectorXd rp = in.b - AX - in.B * z;
    std::vector<MatrixXd> Rd(nb);
    double rd2 = 0.0;
    double mu = 0.0, pobj = 0.0;
    for (int b = 0; b < nb; ++b) {
      MatrixXd S = MatrixXd::Zero(dims[b], dims[b]);
      for (const auto& rb : in.blocks[b].rows) accumulate(rb.entries, y[rb.row], S);
      Rd[b] = in.blocks[b].C - S - Z[b];
      rd2 += Rd[b].squaredNorm();
      mu += (X[b].cwiseProduct(Z[b])).sum();
      pobj += (in.blocks[b].C.cwiseProduct(X[b])).sum();
    }
    const VectorXd rf = in.c - in.B.transpose() * y;
    rd2 += rf.squaredNorm();
    pobj += in.c.dot(z);
    const double dobj = in.b.dot(y);
    const double comp = mu;
    mu /= std::max(1, N);
    const double pinf = original_residual(X, full_z(z));
    const double dinf = std::sqrt(rd2) / (1.0 + in.normC);
    const double denom = 1.0 + std::abs(pobj) + std::abs(dobj);
    const double relgap = std::abs(pobj - dobj) / denom;
    sol.primal_residual = pinf;
    sol.dual_residual = dinf;
    sol.gap = std::max(relgap, comp / denom);
    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    if (!std::isfinite(pinf) || !std::isfinite(dinf) || !std::isfinite(mu))
      return finish(SdpStatus::Unknown, "non-finite iterate");

    if (pinf <= ftol && dinf <= ftol && relgap <= options.gap_tol && comp / denom <= options.gap_tol)
      return finish(zero_objective ? SdpStatus::Feasible : SdpStatus::Optimal, "converged");
    if (y.size() > 0 && dobj > 0.0) {
      const VectorXd yo = full_y(y);
      if (try_ray(yo)) {
        sol.blocks = X;
        sol.dual_blocks = Z;
        sol.free_values = full_z(z);
        sol.dual = yo;
        sol.message = "dual improving ray";
        return sol;
      }
    }
    if (it == options.max_iterations) break;

    // NT scaling.
    bool ok = true;
    for (int b = 0; b < nb && ok; ++b) ok = nt_scaling(X[b], Z[b], nt[b], lx[b], lz[b]);
    if (!ok) break;

    // Schur complement M_ij = <A_i, W A_j W>.
    MatrixXd Mfull = MatrixXd::Zero(m + nf, m + nf);
    for (int b = 0; b < nb; ++b) {
      const MatrixXd& W = nt[b].W;
      const int n = dims[b];
      MatrixXd P(n, n);
      for (const auto& rj : in.blocks[b].rows) {
        if (rj.dense.size() > 0) {
          P.noalias() = W * rj.dense * W;
        } else {
          P.setZero();
          for (const auto& e : rj.entries) {
            if (e.row == e.col) {
              P.noalias() += e.value * W.col(e.row) * W.row(e.row);
            } else {
              P.noalias() += e.value * W.col(e.row) * W.row(e.col);
              P.noalias() += e.value * W.col(e.col) * W.row(e.row);
            }
          }
        }
        for (const auto& ri : in.blocks[b].rows) Mfull(ri.row, rj.row) += inner(ri.entries, P);
      }
    }
    {
      const MatrixXd Mm = Mfull.topLeftCorner(m, m);
      Mfull.topLeftCorner(m, m) = 0.5 * (Mm + Mm.transpose());
    }
    Mfull.topRightCorner(m, nf) = in.B;
    Mfull.bottomLeftCorner(nf, m) = in.B.transpose();
    Eigen::LLT<MatrixXd> mllt;
    Eigen::PartialPivLU<MatrixXd> mlu;
    bool use_llt = false;
    if (nf == 0) {
      mllt.compute(Mfull);
      use_llt = mllt.info() == Eigen::Success;
    }
    if (!use_llt) mlu.compute(Mfull);

    auto direction = [&](const std::vector<MatrixXd>& Rc, std::vector<MatrixXd>& dX, VectorXd& dy,
                         std::vector<MatrixXd>& dZ, VectorXd& dz) {
      VectorXd rhs(m + nf);
      rhs.head(m) = rp;
      rhs.tail(nf) = rf;
      for (int b = 0; b < nb; ++b) {
        const MatrixXd T = Rc[b] - nt[b].W * Rd[b] * nt[b].W;
        for (const auto& rb : in.blocks[b].rows) rhs[rb.row] -= inner(rb.entries, T);
      }
      const VectorXd sol_vec = use_llt ? VectorXd(mllt.solve(rhs)) : VectorXd(mlu.solve(rhs));
      dy = sol_vec.head(m);
      dz = sol_vec.tail(nf);
      for (int b = 0; b < nb; ++b) {
        MatrixXd S = MatrixXd::Zero(dims[b], dims[b]);
        for (const auto& rb : in.blocks[b].rows) accumulate(rb.entries, dy[rb.row], S);
        dZ[b] = Rd[b] - S;
        dX[b] = Rc[b] - nt[b].W * dZ[b] * nt[b].W;
        dX[b] = (0.5 * (dX[b] + dX[b].transpose())).eval();
      }
    };
    auto step_lengths = [&](const std::vector<MatrixXd>& dX, const std::vector<MatrixXd>& dZ) {
      double ap = kInf, ad = kInf;
      for (int b = 0; b < nb; ++b) {
        ap = std::min(ap, max_step(lx[b], dX[b]));
        ad = std::min(ad, max_step(lz[b], dZ[b]));
      }
      return std::make_pair(ap, ad);
    };

    // Predictor.
    std::vector<MatrixXd> Rc(nb), dX(nb), dZ(nb);
    VectorXd dy, dz;
    for (int b = 0; b < nb; ++b) Rc[b] = -X[b];
    direction(Rc, dX, dy, dZ, dz);
    auto [ap_aff, ad_aff] = step_lengths(dX, dZ);
    ap_aff = std::min(1.0, ap_aff);
    ad_aff = std::min(1.0, ad_aff);
    double mu_aff = 0.0;
    for (int b = 0; b < nb; ++b)
      mu_aff += ((X[b] + ap_aff * dX[b]).cwiseProduct(Z[b] + ad_aff * dZ[b])).sum();
    mu_aff /= std::max(1, N);
    double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3.0);
    if (pinf > ftol || dinf > ftol) sigma = std::max(sigma, 1e-3);

    // Corrector in the scaled space.
    for (int b = 0; b < nb; ++b) {
      const NtScaling& s = nt[b];
      const MatrixXd dXs = s.Ginv * dX[b] * s.Ginv.transpose();
      const MatrixXd dZs = s.G.transpose() * dZ[b] * s.G;
      const MatrixXd H = dXs * dZs + dZs * dXs;
      const int n = dims[b];
      MatrixXd U(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double num = -H(i, j);
          if (i == j) num += 2.0 * sigma * mu - 2.0 * s.v[i] * s.v[i];
          U(i, j) = num / (s.v[i] + s.v[j]);
        }
      Rc[b] = s.G * U * s.G.transpose();
      Rc[b] = (0.5 * (Rc[b] + Rc[b].transpose())).eval();
    }
    direction(Rc, dX, dy, dZ, dz);
    auto [ap, ad] = step_lengths(dX, dZ);
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    if (!std::isfinite(ap) || !std::isfinite(ad)) break;
    for (int b = 0; b < nb; ++b) {
      X[b] += ap * dX[b];
      Z[b] += ad * dZ[b];
      X[b] = (0.5 * (X[b] + X[b].transpose())).eval();
      Z[b] = (0.5 * (Z[b] + Z[b].transpose())).eval();
    }
    y += ad * dy;
    z += ap * dz;
    stall = (ap < 1e-8 && ad < 1e-8) ? stall + 1 : 0;
    if (stall >= 5) break;
  }

  // A primal-feasible PD point solves a zero-objective problem outright.
  if (zero_objective && original_residual(X, full_z(z)) <= ftol) {
    bool pd = true;
    for (int b = 0; b < nb && pd; ++b) pd = Eigen::LLT<MatrixXd>(X[b]).info() == Eigen::Success;
    if (pd) return finish(SdpStatus::Feasible, "primal feasible point");
  }
  return finish(SdpStatus::Unknown,
                sol.iterations >= options.max_iterations ? "iteration cap reached" : "stalled");
}

}  // namespace qdelay::sdp
