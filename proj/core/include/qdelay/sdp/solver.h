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

#include "qdelay/sdp/problem.h"

namespace qdelay::sdp {

// Infeasible-start primal-dual interior-point method with Nesterov-Todd
// scaling and a Mehrotra predictor-corrector. Single-threaded and
// deterministic. Status is Infeasible only when a normalized dual ray y
// (||y||_2 = 1) with b'y > 10 feas_tol and max(lambda_max(A*y), |B'y|_inf)
// <= ray_tol * b'y has been found; otherwise failures are Unknown.
SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {});

}  // namespace qdelay::sdp
