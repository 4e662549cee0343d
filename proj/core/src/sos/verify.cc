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

#include <stdexcept>

#include "qdelay/poly/text.h"
#include "qdelay/sos/certificate.h"

namespace qdelay::sos {

VerifyReport verify_certificate(const std::vector<SosCertificateItem>& items, const SosIdentity& identity,
                                const VerifyOptions& options) {
  VerifyReport report;
  const std::size_t arity = identity.target.arity();
  for (const auto& item : items) {
    if (item.gram.rows() != item.basis.size() || item.gram.cols() != item.basis.size())
      throw std::invalid_argument("certificate item '" + item.label + "' is malformed");
    for (const auto& m : item.basis)
      if (m.arity() != arity) throw std::invalid_argument("certificate item '" + item.label + "' has wrong arity");
  }
  auto item_at = [&](std::size_t k) -> const SosCertificateItem& {
    if (k >= items.size()) throw std::invalid_argument("identity references a missing certificate item");
    return items[k];
  };

  for (const auto& item : items) {
    ItemCheck c;
    c.label = item.label;
    const Polynomial expanded = gram_polynomial(item.basis, item.gram, arity);
    c.consistent = item.gram.is_symmetric() && expanded == item.polynomial;
    c.min_eigenvalue = min_eigenvalue(item.gram);
    c.psd_float = c.min_eigenvalue >= -options.psd_tol;
    c.psd_exact = item.gram.is_symmetric() && is_psd_exact(item.gram);
    if (!c.consistent) report.failures.push_back("item '" + item.label + "': polynomial differs from basis' G basis");
    if (!c.psd_float)
      report.failures.push_back("item '" + item.label + "': Gram not PSD (min eigenvalue " +
                                std::to_string(c.min_eigenvalue) + ")");
    else if (options.exact_psd && !c.psd_exact)
      report.failures.push_back("item '" + item.label + "': Gram not PSD in exact arithmetic");
    report.items.push_back(c);
  }

  // Residual uses the Gram matrices, not the stored polynomials.
  Polynomial residual = identity.target;
  for (const auto& t : identity.multiplier_terms) {
    const auto& h = item_at(t.multiplier);
    residual += gram_polynomial(h.basis, h.gram, arity) * t.domain;
  }
  for (std::size_t r : identity.remainder) {
    const auto& s = item_at(r);
    residual -= gram_polynomial(s.basis, s.gram, arity);
  }
  report.residual_inf = coefficient_inf_norm(residual);
  if (report.residual_inf > options.residual_tol)
    report.failures.push_back("identity residual " + std::to_string(report.residual_inf) + " exceeds tolerance");
  report.residual = std::move(residual);
  report.passed = report.failures.empty();
  return report;
}

}  // namespace qdelay::sos
