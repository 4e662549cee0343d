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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qdelay/quantum/spin.h"
#include "qdelay/simulator/simulate.h"

namespace qdelay::sim {

// Observable series of one path; every path must return the same length.
using PathRun = std::function<std::vector<double>(std::uint64_t seed, std::size_t path)>;

struct EnsembleStats {
  std::size_t paths = 0;
  std::vector<double> mean, std_error, min, max;
};

// Paths run on `workers` threads; the reduction always walks paths in index
// order, so the result does not depend on the worker count.
EnsembleStats ensemble(const PathRun& run, std::size_t paths, std::uint64_t seed, int workers = 1);

// All per-path series, in path order.
std::vector<std::vector<double>> run_paths(const PathRun& run, std::size_t paths, std::uint64_t seed, int workers = 1);
EnsembleStats summarize(const std::vector<std::vector<double>>& series);

struct MartingaleReport {
  double initial = 0.0;
  double mean_final = 0.0;
  double stderr_final = 0.0;
  double deviation = 0.0;  // |mean_final - initial|
  bool passed = false;     // deviation <= 3 stderr (or both zero)
};

// Open loop (u = 0) filter: E[obs(rho_T)] should equal obs(rho_0).
MartingaleReport martingale_check(const quantum::SmeModel& model, const SimConfig& config,
                                  const quantum::DensityMatrix& rho0,
                                  const std::function<double(const quantum::DenseMatrix&)>& observable,
                                  int workers = 1);

struct ReductionStatistic {
  std::size_t paths = 0;
  std::size_t hits = 0;       // paths ending with dist < threshold
  double fraction = 0.0;
  double expected = 0.0;      // tr(rho0 rho_f)
  double sigma = 0.0;         // binomial standard deviation of the fraction
  bool passed = false;        // |fraction - expected| <= 3 sigma
};

// Open loop filter: fraction of paths collapsing onto the model's target.
ReductionStatistic reduction_statistic(const quantum::SmeModel& model, const SimConfig& config,
                                       const quantum::DensityMatrix& rho0, double threshold = 0.01, int workers = 1);

}  // namespace qdelay::sim
