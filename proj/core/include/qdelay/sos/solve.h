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

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdelay/sdp/solver.h"
#include "qdelay/sos/certificate.h"
#include "qdelay/sos/program.h"

namespace qdelay::sos {

struct ReductionOptions {
  sdp::SdpOptions sdp;
  // Basis monomials whose Gram diagonal is <= prune_tol * max(1, max diagonal)
  // are dropped and the program is rebuilt and re-solved.
  bool prune = true;
  double prune_tol = 1e-6;
  int max_rounds = 4;
  RationalizeOptions rationalize;
};

template <typename Data>
struct SosOutcome {
  bool solved = false;
  SosProgram program;
  Data data{};
  sdp::SdpSolution solution;
  std::vector<double> values;
  RationalizeResult rational;
  int rounds = 0;
  std::vector<std::string> log;
};

// Bases kept after dropping near-zero Gram diagonals.
std::map<std::string, std::vector<Monomial>> pruned_bases(const SosProgram& program,
                                                          const std::vector<double>& values, double tol);

// Builds, solves, optionally prunes and re-solves, then rationalizes. `build`
// must be deterministic; it is called once per round on a fresh program
// carrying the current basis overrides.
template <typename Data>
SosOutcome<Data> solve_with_reduction(const std::function<Data(SosProgram&)>& build,
                                      const ReductionOptions& options = {}) {
  std::optional<SosOutcome<Data>> best;
  std::map<std::string, std::vector<Monomial>> overrides;
  for (int round = 0; round < std::max(1, options.max_rounds); ++round) {
    SosOutcome<Data> cur;
    cur.program.set_basis_overrides(overrides);
    cur.data = build(cur.program);
    cur.solution = sdp::solve(cur.program.to_sdp(), options.sdp);
    cur.rounds = round + 1;
    const bool ok = cur.solution.status == sdp::SdpStatus::Feasible ||
                    cur.solution.status == sdp::SdpStatus::Optimal;
    std::string line = "round " + std::to_string(round) + ": " + sdp::to_string(cur.solution.status) +
                       " after " + std::to_string(cur.solution.iterations) + " iterations, residual " +
                       std::to_string(cur.solution.primal_residual);
    if (!ok) {
      if (best) {
        best->log.push_back(line + " (keeping previous round)");
        break;
      }
      cur.log.push_back(line);
      return cur;
    }
    cur.values = cur.program.extract(cur.solution);
    cur.solved = true;
    std::vector<std::string> log = best ? best->log : std::vector<std::string>{};
    log.push_back(line);
    cur.log = std::move(log);
    auto next = pruned_bases(cur.program, cur.values, options.prune_tol);
    bool changed = false;
    for (const auto& g : cur.program.grams())
      if (next.at(g.label).size() != g.basis.size()) changed = true;
    best = std::move(cur);
    if (!options.prune || !changed) break;
    overrides = std::move(next);
  }
  best->rational = rationalize(best->program, best->values, options.rationalize);
  return std::move(*best);
}

// One-shot helpers: certificate items in Gram order plus the exact check.
struct ProofResult {
  sdp::SdpStatus status = sdp::SdpStatus::Unknown;
  bool verified = false;
  std::vector<SosCertificateItem> items;
  SosIdentity identity;
  VerifyReport report;
  std::string message;
};

ProofResult prove_sos(const Polynomial& target, const std::vector<Monomial>& basis,
                      const ReductionOptions& options = {});
ProofResult prove_nonneg_on_set(const Polynomial& target, const std::vector<Polynomial>& domain,
                                int multiplier_degree, const ReductionOptions& options = {});

}  // namespace qdelay::sos
