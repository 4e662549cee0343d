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

#include "qdelay/sos/solve.h"

namespace qdelay::sos {

std::map<std::string, std::vector<Monomial>> pruned_bases(const SosProgram& program,
                                                          const std::vector<double>& values, double tol) {
  std::map<std::string, std::vector<Monomial>> out;
  for (const auto& g : program.grams()) {
    const std::size_t n = g.basis.size();
    double dmax = 0.0;
    std::size_t imax = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = values[g.ids[i][i]];
      if (d > dmax) {
        dmax = d;
        imax = i;
      }
    }
    const double cut = tol * std::max(1.0, dmax);
    std::vector<Monomial> kept;
    for (std::size_t i = 0; i < n; ++i)
      if (values[g.ids[i][i]] > cut) kept.push_back(g.basis[i]);
    // A Gram forced to zero still needs a nonempty basis.
    if (kept.empty()) kept.push_back(g.basis[imax]);
    out[g.label] = std::move(kept);
  }
  return out;
}

namespace {

struct Handles {
  std::vector<int> multipliers;
  int master = -1;
};

ProofResult finish(const SosOutcome<Handles>& outcome, const Polynomial& target,
                   const std::vector<Polynomial>& domain) {
  ProofResult r;
  r.status = outcome.solution.status;
  if (!outcome.solved) {
    r.message = outcome.solution.message;
    return r;
  }
  if (!outcome.rational.ok) {
    r.message = outcome.rational.message;
    return r;
  }
  const std::size_t arity = target.arity();
  for (std::size_t g = 0; g < outcome.program.grams().size(); ++g)
    r.items.push_back(make_item(outcome.program, static_cast<int>(g), outcome.rational.values, arity));
  r.identity.target = target;
  for (std::size_t i = 0; i < domain.size(); ++i)
    r.identity.multiplier_terms.push_back({domain[i], static_cast<std::size_t>(outcome.data.multipliers[i])});
  r.identity.remainder.push_back(static_cast<std::size_t>(outcome.data.master));
  r.report = verify_certificate(r.items, r.identity);
  r.verified = r.report.passed;
  if (!r.verified && !r.report.failures.empty()) r.message = r.report.failures.front();
  return r;
}

ParametricPolynomial constant_form(const Polynomial& p) {
  ParametricPolynomial q(p.arity());
  for (const auto& [m, c] : p.terms()) q.add_term(m, AffineForm(c));
  return q;
}

}  // namespace

ProofResult prove_sos(const Polynomial& target, const std::vector<Monomial>& basis,
                      const ReductionOptions& options) {
  const ParametricPolynomial t = constant_form(target);
  auto outcome = solve_with_reduction<Handles>(
      [&](SosProgram& prog) {
        Handles h;
        h.master = encode_sos(prog, t, basis, "sos").gram;
        return h;
      },
      options);
  return finish(outcome, target, {});
}

ProofResult prove_nonneg_on_set(const Polynomial& target, const std::vector<Polynomial>& domain,
                                int multiplier_degree, const ReductionOptions& options) {
  const ParametricPolynomial t = constant_form(target);
  auto outcome = solve_with_reduction<Handles>(
      [&](SosProgram& prog) {
        Handles h;
        auto enc = encode_nonneg_on_set(prog, t, domain, multiplier_degree, "nonneg");
        for (const auto& m : enc.multipliers) h.multipliers.push_back(m.gram);
        h.master = enc.master.gram;
        return h;
      },
      options);
  return finish(outcome, target, domain);
}

}  // namespace qdelay::sos
