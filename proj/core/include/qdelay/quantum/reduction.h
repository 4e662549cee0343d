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

#include <array>

#include "qdelay/certifier/delay_system.h"
#include "qdelay/quantum/spin.h"

namespace qdelay::quantum {

// Spin-1/2 closed loop in error coordinates, E = [x1, x2 + i x3; x2 - i x3, -x1]
// with rho = rho_f - E for the Up target and rho = rho_f + E for Down:
//   f = (-u x2, u (x1 - 1/2) - x2/2),  u = k1 xd1 + k2 xd2,
//   g = +-(2 x1 (x1 - 1), (2 x1 - 1) x2) (minus for Down), g_scale_sq = eta,
//   domain x1 (x1 - 1) + x2^2 <= 0, v_star = x1^2 + x2^2.
// x3 evolves on its own and does not enter (x1, x2).
certifier::DelaySystem reduce_spin_half(const SmeModel& model, const Rational& tau);

// Throws std::invalid_argument unless x1 (x1 - 1) + x2^2 + x3^2 <= 1e-12.
DensityMatrix embed_state(const std::array<double, 2>& x, double x3, Target target);
// (x1, x2, x3); reads only entries that embed_state writes without rounding,
// so project_state(embed_state(x, x3, t), t) returns the inputs exactly.
std::array<double, 3> project_state(const DenseMatrix& rho, Target target);

}  // namespace qdelay::quantum
