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

#include "qdelay/certifier/certify.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

namespace qdelay::certifier {

const char* to_string(CertifyStatus status) {
  return status == CertifyStatus::Certified ? "Certified" : "Unknown";
}

namespace {

RationalMatrix to_matrix(const std::vector<std::vector<Rational>>& m) {
  RationalMatrix r(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = m[i][j];
  return r;
}

std::vector<std::vector<Rational>> from_matrix(const RationalMatrix& m) {
  std::vector<std::vector<Rational>> r(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

std::vector<Polynomial> lifted_domain(const DelaySystem& sys) {
  const std::size_t a = 4 * sys.n;
  std::vector<Polynomial> out;
  for (const auto& p : sys.domain) out.push_back(lift(p, a, 0));
  for (const auto& p : sys.domain) out.push_back(lift(p, a, sys.n));
  return out;
}

struct Handles {
  Decisions<AffineForm> dec;
  std::vector<int> multipliers;
  int master = -1;
};

// Matrix decision M = M' + eps I with M' a PSD Gram indexed by x1..xn; a
// pruned basis pins the missing rows and columns of M' to zero.
std::vector<std::vector<AffineForm>> psd_matrix(sos::SosProgram& prog, std::size_t n, const Rational& eps,
                                                const std::string& label) {
  std::vector<Monomial> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back(Monomial::variable(n, i));
  const int gi = prog.new_gram(basis, label);
  const auto& g = prog.grams()[gi];
  std::vector<int> pos(n, -1);
  for (std::size_t k = 0; k < g.basis.size(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (g.basis[k] == basis[i]) pos[i] = static_cast<int>(k);
  std::vector<std::vector<AffineForm>> M(n, std::vector<AffineForm>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (pos[i] >= 0 && pos[j] >= 0) M[i][j] = AffineForm::variable(g.ids[pos[i]][pos[j]], Rational(1));
      if (i == j) M[i][j] += AffineForm(eps);
    }
  return M;
}

Handles build_program(sos::SosProgram& prog, const DelaySystem& sys, const DecisionTemplate& tmpl) {
  const std::size_t n = sys.n;
  Handles h;
  Decisions<AffineForm>& d = h.dec;
  const auto tp = sys.target_point();
  d.V0 = ParametricPolynomial(n);
  for (const auto& m : monomials_up_to(n, tmpl.v0_degree)) {
    if (m.degree() == 0) continue;
    const Polynomial anchored = Polynomial::term(m, 1) - Polynomial::constant(n, evaluate_exact(Polynomial::term(m, 1), tp));
    d.V0 += times(AffineForm::variable(prog.new_free(), Rational(1)), anchored);
  }
  d.V1 = ParametricPolynomial(n);
  for (const auto& m : monomials_up_to(n, tmpl.v1_degree)) {
    if (m.degree() == 0) continue;
    d.V1.add_term(m, AffineForm::variable(prog.new_free(), Rational(1)));
  }
  d.S.assign(2 * n, std::vector<AffineForm>(n));
  for (auto& row : d.S)
    for (auto& s : row) s = AffineForm::variable(prog.new_free(), Rational(1));
  d.R = psd_matrix(prog, n, tmpl.epsilon, "R");
  d.T = psd_matrix(prog, n, tmpl.epsilon, "T");

  const auto F = build_F(sys, d);
  const auto Y = build_upsilon(F, d, sys.tau);
  auto enc = sos::encode_nonneg_on_set(prog, -Y, lifted_domain(sys), tmpl.multiplier_degree, "upsilon");
  for (const auto& m : enc.multipliers) h.multipliers.push_back(m.gram);
  h.master = enc.master.gram;
  return h;
}

std::vector<std::vector<Rational>> assign_matrix(const std::vector<std::vector<AffineForm>>& M,
                                                 const std::vector<Rational>& values) {
  std::vector<std::vector<Rational>> r(M.size());
  for (std::size_t i = 0; i < M.size(); ++i)
    for (const auto& f : M[i]) r[i].push_back(f.evaluate([&](int id) { return values[id]; }));
  return r;
}

bool pd_check(const RationalMatrix& M, const std::string& name, std::vector<std::string>& failures) {
  if (!M.is_symmetric()) {
    failures.push_back(name + " is not symmetric");
    return false;
  }
  if (!is_pd_exact(M)) {
    failures.push_back(name + " is not positive definite");
    return false;
  }
  return true;
}

}  // namespace

sos::SosProgram certify_program(const DelaySystem& system, const DecisionTemplate& tmpl) {
  check_structure(system, tmpl);
  sos::SosProgram prog;
  build_program(prog, system, tmpl);
  return prog;
}

Decisions<Rational> StabilityCertificate::decisions() const {
  Decisions<Rational> d;
  d.V0 = V0;
  d.V1 = V1;
  d.S = from_matrix(S);
  d.R = from_matrix(R);
  d.T = from_matrix(T);
  return d;
}

Polynomial upsilon_of(const StabilityCertificate& cert, const DelaySystem& system) {
  const auto d = cert.decisions();
  return build_upsilon(build_F(system, d), d, cert.tau);
}

CertifyResult certify(const DelaySystem& sys, const DecisionTemplate& tmpl, const CertifyOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  check_structure(sys, tmpl);
  CertifyResult r;
  auto outcome = sos::solve_with_reduction<Handles>(
      [&](sos::SosProgram& prog) { return build_program(prog, sys, tmpl); }, options.reduction);
  r.sdp_status = outcome.solution.status;
  r.primal_residual = outcome.solution.primal_residual;
  r.dual_residual = outcome.solution.dual_residual;
  r.iterations = outcome.solution.iterations;
  r.rounds = outcome.rounds;
  r.diagnostics = outcome.log;
  auto done = [&]() -> CertifyResult {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  };
  if (!outcome.solved) {
    if (!outcome.solution.message.empty()) r.diagnostics.push_back(outcome.solution.message);
    return done();
  }
  if (!outcome.rational.ok) {
    r.diagnostics.push_back("rationalization failed: " + outcome.rational.message);
    return done();
  }
  const auto& values = outcome.rational.values;
  const Handles& h = outcome.data;
  StabilityCertificate cert;
  cert.fingerprint = fingerprint(sys);
  cert.n = sys.n;
  cert.tau = sys.tau;
  cert.epsilon = tmpl.epsilon;
  auto value = [&](int id) { return values[id]; };
  cert.V0 = assign(h.dec.V0, value);
  cert.V1 = assign(h.dec.V1, value);
  cert.S = to_matrix(assign_matrix(h.dec.S, values));
  cert.R = to_matrix(assign_matrix(h.dec.R, values));
  cert.T = to_matrix(assign_matrix(h.dec.T, values));
  const std::size_t a = 4 * sys.n;
  for (int g : h.multipliers) cert.items.push_back(sos::make_item(outcome.program, g, values, a));
  cert.items.push_back(sos::make_item(outcome.program, h.master, values, a));
  cert.identity.target = -upsilon_of(cert, sys);
  const auto dom = lifted_domain(sys);
  for (std::size_t i = 0; i < dom.size(); ++i) cert.identity.multiplier_terms.push_back({dom[i], i});
  cert.identity.remainder.push_back(h.multipliers.size());

  const auto check = verify_stability_certificate(cert, sys, options.verify);
  r.residual_inf = check.report.residual_inf;
  for (const auto& f : check.failures) r.diagnostics.push_back(f);
  if (check.passed) {
    r.status = CertifyStatus::Certified;
    r.certificate = std::move(cert);
  }
  return done();
}

CertificateCheck verify_stability_certificate(const StabilityCertificate& cert, const DelaySystem& sys,
                                              const sos::VerifyOptions& options) {
  CertificateCheck c;
  auto& fail = c.failures;
  if (cert.fingerprint != fingerprint(sys)) fail.push_back("system fingerprint mismatch");
  if (cert.n != sys.n) {
    fail.push_back("dimension mismatch");
    return c;
  }
  if (cert.tau != sys.tau) fail.push_back("delay mismatch (certificate " + qdelay::to_string(cert.tau) +
                                          ", system " + qdelay::to_string(sys.tau) + ")");
  const std::size_t n = sys.n;
  if (cert.V0.arity() != n || cert.V1.arity() != n || cert.S.rows() != 2 * n || cert.S.cols() != n ||
      cert.R.rows() != n || cert.R.cols() != n || cert.T.rows() != n || cert.T.cols() != n) {
    fail.push_back("decision dimensions do not match the system");
    return c;
  }
  pd_check(cert.R, "R", fail);
  pd_check(cert.T, "T", fail);
  if (sgn(evaluate_exact(cert.V0, sys.target_point())) != 0) fail.push_back("V0 does not vanish at the target");

  const auto dom = lifted_domain(sys);
  bool shape_ok = cert.identity.multiplier_terms.size() == dom.size();
  for (std::size_t i = 0; shape_ok && i < dom.size(); ++i)
    shape_ok = cert.identity.multiplier_terms[i].domain == dom[i];
  if (!shape_ok) fail.push_back("multiplier terms do not match the system domain");
  for (const auto& t : cert.identity.multiplier_terms)
    if (t.multiplier >= cert.items.size()) {
      fail.push_back("multiplier index out of range");
      return c;
    }
  for (auto idx : cert.identity.remainder)
    if (idx >= cert.items.size()) {
      fail.push_back("remainder index out of range");
      return c;
    }
  try {
    if (cert.identity.target != -upsilon_of(cert, sys)) fail.push_back("stored target is not -Y for this system");
    c.report = sos::verify_certificate(cert.items, cert.identity, options);
  } catch (const std::exception& e) {
    fail.push_back(std::string("verification error: ") + e.what());
    return c;
  }
  for (const auto& f : c.report.failures) fail.push_back(f);
  c.passed = fail.empty() && c.report.passed;
  return c;
}

SampledUpsilon sample_upsilon(const StabilityCertificate& cert, const DelaySystem& sys, int points,
                              std::uint64_t seed, double box) {
  const std::size_t n = sys.n;
  const FloatPolynomial Y(upsilon_of(cert, sys));
  const Eigen::MatrixXd S = cert.S.to_double();
  const Eigen::MatrixXd Tinv = cert.T.to_double().inverse();
  const Eigen::MatrixXd Rinv = cert.R.to_double().inverse();
  const auto pts = sample_set(sys.domain, n, 2 * points, seed, box);
  SampledUpsilon out;
  out.max_value = -std::numeric_limits<double>::infinity();
  std::vector<double> z(4 * n);
  for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
    Eigen::VectorXd e(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = pts[k][i];
      e[n + i] = pts[k + 1][i];
    }
    const Eigen::VectorXd Se = S.transpose() * e;
    const Eigen::VectorXd yT = Tinv * Se;
    const Eigen::VectorXd yR = Rinv * Se;
    for (std::size_t i = 0; i < 2 * n; ++i) z[i] = e[i];
    for (std::size_t i = 0; i < n; ++i) {
      z[2 * n + i] = yT[i];
      z[3 * n + i] = yR[i];
    }
    const double v = Y(z.data());
    ++out.points;
    if (v > out.max_value) {
      out.max_value = v;
      out.argmax.assign(z.begin(), z.begin() + 2 * n);
    }
  }
  return out;
}

SweepResult max_certified_delay(const DelaySystem& system, const DecisionTemplate& tmpl, const Rational& tau_min,
                                const Rational& tau_max, const Rational& tol, int workers,
                                const CertifyOptions& options) {
  if (sgn(tol) <= 0) throw std::invalid_argument("sweep resolution must be positive");
  if (sgn(tau_min) < 0 || tau_max < tau_min) throw std::invalid_argument("invalid delay range");
  // Callers may hand in unreduced fractions such as Rational(2, 10).
  Rational lo = tau_min, hi = tau_max, step = tol;
  lo.canonicalize();
  hi.canonicalize();
  step.canonicalize();
  std::vector<Rational> grid;
  for (Rational t = lo; t <= hi; t += step) grid.push_back(t);
  if (grid.back() != hi) grid.push_back(hi);

  SweepResult result;
  result.rows.resize(grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      DelaySystem s = system;
      s.tau = grid[i];
      SweepRow& row = result.rows[i];
      row.tau = grid[i];
      const auto r = certify(s, tmpl, options);
      row.status = r.status;
      row.sdp_status = r.sdp_status;
      row.seconds = r.seconds;
      row.residual_inf = r.residual_inf;
      if (r.status != CertifyStatus::Certified && !r.diagnostics.empty()) row.note = r.diagnostics.back();
    }
  };
  const int nthreads = std::clamp(workers, 1, static_cast<int>(grid.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  bool prefix = true;
  for (const auto& row : result.rows) {
    const bool ok = row.status == CertifyStatus::Certified;
    if (prefix && ok) result.max_certified = row.tau;
    else if (ok) result.non_contiguous.push_back(row.tau);
    else prefix = false;
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "tau,status,sdp_status,residual_inf,note\n";
  for (const auto& row : result.rows) {
    std::string note = row.note;
    std::replace(note.begin(), note.end(), ',', ';');
    std::replace(note.begin(), note.end(), '\n', ' ');
    out << std::setprecision(17) << row.tau.get_d() << ',' << to_string(row.status) << ','
        << sdp::to_string(row.sdp_status) << ',' << row.residual_inf << ',' << note << '\n';
  }
}

}  // namespace qdelay::certifier
