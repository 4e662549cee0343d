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
#include <string_view>

#include <gmpxx.h>

namespace qdelay {

using Rational = mpq_class;

// Parses "p", "p/q", or a decimal literal such as "-0.25" or "1e-3" into an
// exact rational. Decimal text is read digit-by-digit, so "0.9" is 9/10 and
// not the nearest double.
Rational parse_rational(std::string_view text);

// "p" when the denominator is one, otherwise "p/q".
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// Exact binary value of a double.
Rational rational_from_double(double value);

// Nearest k/denominator.
Rational round_to_denominator(double value, long denominator);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace qdelay
