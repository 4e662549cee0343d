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

#include <string>
#include <vector>

#include "qdelay/sdp/problem.h"

namespace qdelay::sdp {

struct CheckCriterion {
  std::string name;
  double value = 0.0;
  bool passed = false;
};

struct CheckReport {
  std::vector<CheckCriterion> criteria;
  bool passed = false;
  // First failing criterion, empty when all pass.
  std::string first_failure() const;
};

// Recomputes, independently of the solver, the smallest eigenvalue of every
// block ("psd block k": >= -tol) and the constraint residual
// ("primal residual": ||b - A(X) - Bz||_inf <= tol).
CheckReport check_solution(const SdpProblem& problem, const SdpSolution& solution, double tol);

}  // namespace qdelay::sdp
