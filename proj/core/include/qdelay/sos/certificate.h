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
#include <vector>

#include "qdelay/poly/polynomial.h"
#include "qdelay/poly/rational_matrix.h"
#include "qdelay/sos/program.h"

namespace qdelay::sos {

struct SosCertificateItem {
  std::string label;
  std::vector<Monomial> basis;
  RationalMatrix gram;
  Polynomial polynomial;  // basis' gram basis
};

Polynomial gram_polynomial(const std::vector<Monomial>& basis, const RationalMatrix& gram, std::size_t arity);

struct RationalizeOptions {
  long denominator = 1000000;
};

struct RationalizeResult {
  bool ok = false;
  std::string message;
  std::vector<Rational> values;  // one per decision
  Rational max_row_residual;     // exact; zero on success
};

// Turns float decision values into exact ones satisfying every equality row:
// 1. decisions not owned by a coefficient-matching Gram are rounded to
//    k/denominator and then moved by the exact least-norm correction onto
//    the rows that involve only them;
// 2. owned Gram entries are rounded likewise, and each monomial's exact
//    residual is spread over the Gram entries of that monomial (least-norm
//    in the Frobenius metric).
// PSD-ness is not checked here; see verify_certificate.
RationalizeResult rationalize(const SosProgram& program, const std::vector<double>& values,
                              const RationalizeOptions& options = {});

SosCertificateItem make_item(const SosProgram& program, int gram, const std::vector<Rational>& values,
                             std::size_t arity);

// target + sum_k multiplier_terms[k].domain * items[multiplier].polynomial
//   == sum_{r in remainder} items[r].polynomial
struct SosIdentity {
  struct Term {
    Polynomial domain;
    std::size_t multiplier = 0;
  };
  Polynomial target;
  std::vector<Term> multiplier_terms;
  std::vector<std::size_t> remainder;
};

struct VerifyOptions {
  double residual_tol = 1e-6;
  double psd_tol = 1e-9;
  bool exact_psd = true;  // also require an exact LDL' proof of PSD-ness
};

struct ItemCheck {
  std::string label;
  double min_eigenvalue = 0.0;
  bool psd_float = false;
  bool psd_exact = false;
  bool consistent = false;  // stored polynomial equals basis' gram basis
};

struct VerifyReport {
  bool passed = false;
  double residual_inf = 0.0;
  Polynomial residual;
  std::vector<ItemCheck> items;
  std::vector<std::string> failures;
};

// Exact rational check of the identity and of every Gram.
VerifyReport verify_certificate(const std::vector<SosCertificateItem>& items, const SosIdentity& identity,
                                const VerifyOptions& options = {});

}  // namespace qdelay::sos
