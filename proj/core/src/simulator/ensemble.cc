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

#include "qdelay/simulator/ensemble.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qdelay::sim {

std::vector<std::vector<double>> run_paths(const PathRun& run, std::size_t paths, std::uint64_t seed, int workers) {
  if (paths < 1) throw std::invalid_argument("ensemble needs at least one path");
  std::vector<std::vector<double>> series(paths);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t p = next++; p < paths && !failed; p = next++) {
      try {
        series[p] = run(seed, p);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  const int n = std::clamp(workers, 1, static_cast<int>(std::min<std::size_t>(paths, 256)));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return series;
}

EnsembleStats summarize(const std::vector<std::vector<double>>& series) {
  EnsembleStats s;
  s.paths = series.size();
  if (series.empty()) return s;
  const std::size_t T = series[0].size();
  for (const auto& v : series)
    if (v.size() != T) throw std::invalid_argument("paths returned series of different lengths");
  s.mean.assign(T, 0.0);
  s.std_error.assign(T, 0.0);
  s.min.assign(T, INFINITY);
  s.max.assign(T, -INFINITY);
  const double P = static_cast<double>(series.size());
  for (std::size_t t = 0; t < T; ++t) {
    double sum = 0.0;
    for (const auto& v : series) {
      sum += v[t];
      s.min[t] = std::min(s.min[t], v[t]);
      s.max[t] = std::max(s.max[t], v[t]);
    }
    // Identical paths give exactly their common value and zero spread.
    const double m = s.min[t] == s.max[t] ? s.min[t] : sum / P;
    double ss = 0.0;
    for (const auto& v : series) ss += (v[t] - m) * (v[t] - m);
    s.mean[t] = m;
    s.std_error[t] = series.size() > 1 ? std::sqrt(ss / (P - 1.0) / P) : 0.0;
  }
  return s;
}

EnsembleStats ensemble(const PathRun& run, std::size_t paths, std::uint64_t seed, int workers) {
  return summarize(run_paths(run, paths, seed, workers));
}

MartingaleReport martingale_check(const quantum::SmeModel& model, const SimConfig& config,
                                  const quantum::DensityMatrix& rho0,
                                  const std::function<double(const quantum::DenseMatrix&)>& observable, int workers) {
  SimConfig c = config;
  c.record_every = c.steps() == 0 ? 1 : c.steps();
  const SmeOptions open{false};
  const auto stats = ensemble(
      [&](std::uint64_t seed, std::size_t path) {
        SimConfig cc = c;
        cc.seed = seed;
        return simulate_sme_observable(model, cc, rho0, open, path, observable);
      },
      c.paths, c.seed, workers);
  MartingaleReport r;
  r.initial = observable(rho0.dense());
  r.mean_final = stats.mean.back();
  r.stderr_final = stats.std_error.back();
  r.deviation = std::abs(r.mean_final - r.initial);
  r.passed = r.deviation <= 3.0 * r.stderr_final || r.deviation <= 1e-12;
  return r;
}

ReductionStatistic reduction_statistic(const quantum::SmeModel& model, const SimConfig& config,
                                       const quantum::DensityMatrix& rho0, double threshold, int workers) {
  SimConfig c = config;
  c.record_every = c.steps() == 0 ? 1 : c.steps();
  const SmeOptions open{false};
  const auto series = run_paths(
      [&](std::uint64_t seed, std::size_t path) {
        SimConfig cc = c;
        cc.seed = seed;
        return simulate_sme_observable(model, cc, rho0, open, path,
                                       [&](const quantum::DenseMatrix& rho) { return quantum::dist(model, rho); });
      },
      c.paths, c.seed, workers);
  ReductionStatistic r;
  r.paths = series.size();
  for (const auto& s : series)
    if (s.back() < threshold) ++r.hits;
  r.fraction = static_cast<double>(r.hits) / static_cast<double>(r.paths);
  r.expected = 1.0 - quantum::dist(model, rho0.dense());
  r.sigma = std::sqrt(r.expected * (1.0 - r.expected) / static_cast<double>(r.paths));
  r.passed = std::abs(r.fraction - r.expected) <= 3.0 * r.sigma;
  return r;
}

}  // namespace qdelay::sim
