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

#include <iosfwd>
#include <string>

#include "qdelay/certifier/certify.h"

namespace qdelay::certifier {

// Line-oriented text, exact rationals throughout:
//   qdelay-certificate 1
//   fingerprint <hex>
//   n <n>
//   tau <q>
//   epsilon <q>
//   V0 <poly in x1..xn>
//   V1 <poly in x1..xn>
//   S <rows> <cols>       followed by one line of entries per row
//   R <n> <n>             likewise
//   T <n> <n>             likewise
//   target <poly in 4n variables>
//   term <item index> <domain poly in 4n variables>     (one per multiplier)
//   remainder <item index>
//   item <label> <basis size> <arity>
//     basis <exponents>   one line per basis monomial
//     gram <entries>      one line per Gram row
//   end
// Item polynomials are not stored; they are rebuilt from basis and Gram.
void write_certificate(const StabilityCertificate& cert, std::ostream& out);
std::string format_certificate(const StabilityCertificate& cert);

// Throws std::invalid_argument("line <k>: ...") on malformed input.
StabilityCertificate parse_certificate(const std::string& text);
StabilityCertificate read_certificate(const std::string& path);

}  // namespace qdelay::certifier
