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
#include <string>
#include <string_view>
#include <vector>

#include "qdelay/poly/polynomial.h"

namespace qdelay {

// x1..xk.
std::vector<std::string> default_variable_names(std::size_t arity);

// Terms in descending graded-lex order joined by " + ", each written as
// coeff*x1^a1*...*xk^ak with exponent 1 and zero exponents omitted, e.g.
// "3/2*x1^2*x2 + -1*x3 + 5". The zero polynomial is "0".
std::string to_string(const Polynomial& p);
std::string to_string(const Polynomial& p, const std::vector<std::string>& names);

// Accepts the serialized form above and, more loosely, any expression built
// from rational or decimal literals, variables, + - * ^ parentheses and
// division by constants. Throws std::invalid_argument with a column on error.
Polynomial parse_polynomial(std::string_view text, std::size_t arity);
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names);

}  // namespace qdelay
