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

#include <benchmark/benchmark.h>

#include "qdelay/certifier/certify.h"
#include "qdelay/quantum/reduction.h"
#include "qdelay/quantum/spin.h"
#include "qdelay/sdp/solver.h"
#include "qdelay/simulator/simulate.h"

using namespace qdelay;

namespace {

quantum::SmeModel reference_model() { return quantum::make_sme_model(2, 1, 4, Rational(9, 10), quantum::Target::Up); }

// min <C, X> over trace(X) = 1 with C = diag(1, ..., n).
sdp::SdpProblem diagonal_problem(int n) {
  sdp::SdpProblem p;
  p.add_block(n);
  sdp::Constraint c;
  for (int i = 0; i < n; ++i) {
    c.entries.push_back({0, i, i, 1.0});
    p.add_objective(0, i, i, i + 1.0);
  }
  c.rhs = 1.0;
  p.add_constraint(c);
  return p;
}

void BM_SdpDiagonal(benchmark::State& state) {
  const auto p = diagonal_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sdp::solve(p));
}
BENCHMARK(BM_SdpDiagonal)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CertifyReference(benchmark::State& state) {
  const auto sys = quantum::reduce_spin_half(reference_model(), Rational(3, 10));
  for (auto _ : state) benchmark::DoNotOptimize(certifier::certify(sys));
}
BENCHMARK(BM_CertifyReference)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_SmeSteps(benchmark::State& state) {
  const auto m = reference_model();
  const auto rho0 = quantum::DensityMatrix(quantum::HermitianMatrix::from_dense(quantum::eigenprojector(2, quantum::Target::Down)));
  sim::SimConfig c;
  c.tau = 0.3;
  c.horizon = 1.0;
  c.record_every = c.steps();
  for (auto _ : state) benchmark::DoNotOptimize(sim::simulate_sme(m, c, rho0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.steps()));
}
BENCHMARK(BM_SmeSteps)->Unit(benchmark::kMillisecond);

void BM_ReducedSteps(benchmark::State& state) {
  const auto sys = quantum::reduce_spin_half(reference_model(), Rational(3, 10));
  sim::SimConfig c;
  c.tau = 0.3;
  c.horizon = 1.0;
  c.record_every = c.steps();
  const std::vector<std::vector<double>> history = {{1.0, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(sim::simulate_reduced(sys, c, history));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.steps()));
}
BENCHMARK(BM_ReducedSteps)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
