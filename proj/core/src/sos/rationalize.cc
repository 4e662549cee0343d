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

#include <map>
#include <set>
#include <stdexcept>

#include "qdelay/sos/certificate.h"

namespace qdelay::sos {
namespace {

// Solves the square system A x = b exactly; returns false when singular.
bool solve_exact(RationalMatrix A, std::vector<Rational> b, std::vector<Rational>& x) {
  const std::size_t n = A.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(A(p, k)) == 0) ++p;
    if (p == n) return false;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(A(i, k)) == 0) continue;
      const Rational f = A(i, k) / A(k, k);
      for (std::size_t j = k; j < n; ++j) A(i, j) -= f * A(k, j);
      b[i] -= f * b[k];
    }
  }
  x.assign(n, Rational(0));
  for (std::size_t k = n; k-- > 0;) {
    Rational s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= A(k, j) * x[j];
    x[k] = s / A(k, k);
  }
  return true;
}

}  // namespace

Polynomial gram_polynomial(const std::vector<Monomial>& basis, const RationalMatrix& gram, std::size_t arity) {
  if (gram.rows() != basis.size() || gram.cols() != basis.size())
    throw std::invalid_argument("Gram matrix does not match its basis");
  Polynomial p(arity);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) p.add_term(basis[i] * basis[j], gram(i, j));
  return p;
}

RationalizeResult rationalize(const SosProgram& program, const std::vector<double>& values,
                              const RationalizeOptions& options) {
  RationalizeResult out;
  const int nd = program.num_decisions();
  if (static_cast<int>(values.size()) != nd) throw std::invalid_argument("rationalize: value count mismatch");
  auto owner_of = [&](int id) {
    const Decision& d = program.decision(id);
    if (d.kind == DecisionKind::GramEntry && program.grams()[d.index].owned) return d.index;
    return -1;
  };

  std::vector<Rational> v(nd);
  for (int id = 0; id < nd; ++id) v[id] = round_to_denominator(values[id], options.denominator);

  // Rows that touch only non-owned decisions.
  std::vector<const EqualityRow*> pure;
  std::map<int, std::vector<const EqualityRow*>> owned_rows;
  for (const auto& row : program.rows()) {
    std::set<int> owners;
    for (const auto& [id, c] : row.form.linear()) owners.insert(owner_of(id));
    owners.erase(-1);
    if (owners.size() > 1 || (owners.size() == 1 && *owners.begin() != row.owner)) {
      out.message = "row '" + row.what + "' couples several coefficient-matching Grams";
      return out;
    }
    if (owners.empty()) pure.push_back(&row);
    else owned_rows[row.owner].push_back(&row);
  }

  if (!pure.empty()) {
    std::map<int, std::size_t> col;
    for (const auto* row : pure)
      for (const auto& [id, c] : row->form.linear()) col.emplace(id, 0);
    std::size_t k = 0;
    for (auto& [id, j] : col) j = k++;
    const std::size_t nv = col.size();
    // Independent subset of the rows by incremental elimination.
    std::vector<std::vector<Rational>> basis_rows;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> independent;
    for (std::size_t r = 0; r < pure.size(); ++r) {
      std::vector<Rational> row(nv);
      for (const auto& [id, c] : pure[r]->form.linear()) row[col[id]] = c;
      for (std::size_t b = 0; b < basis_rows.size(); ++b) {
        const Rational f = row[pivots[b]] / basis_rows[b][pivots[b]];
        if (sgn(f) == 0) continue;
        for (std::size_t j = 0; j < nv; ++j) row[j] -= f * basis_rows[b][j];
      }
      std::size_t p = 0;
      while (p < nv && sgn(row[p]) == 0) ++p;
      if (p == nv) continue;
      basis_rows.push_back(std::move(row));
      pivots.push_back(p);
      independent.push_back(r);
    }
    const std::size_t ni = independent.size();
    if (ni > 0) {
      RationalMatrix C(ni, nv);
      std::vector<Rational> r(ni);
      for (std::size_t i = 0; i < ni; ++i) {
        const AffineForm& f = pure[independent[i]]->form;
        for (const auto& [id, c] : f.linear()) C(i, col[id]) = c;
        r[i] = -f.evaluate([&](int id) { return v[id]; });
      }
      RationalMatrix CC(ni, ni);
      for (std::size_t i = 0; i < ni; ++i)
        for (std::size_t j = 0; j < ni; ++j)
          for (std::size_t t = 0; t < nv; ++t) CC(i, j) += C(i, t) * C(j, t);
      std::vector<Rational> lambda;
      if (!solve_exact(CC, r, lambda)) {
        out.message = "singular normal equations for the decision-only rows";
        return out;
      }
      for (const auto& [id, j] : col) {
        Rational delta;
        for (std::size_t i = 0; i < ni; ++i) delta += C(i, j) * lambda[i];
        v[id] += delta;
      }
    }
    for (const auto* row : pure)
      if (sgn(row->form.evaluate([&](int id) { return v[id]; })) != 0) {
        out.message = "decision-only rows are inconsistent ('" + row->what + "')";
        return out;
      }
  }

  for (const auto& [g, rows] : owned_rows) {
    for (const auto* row : rows) {
      Rational res = -row->form.evaluate([&](int id) { return v[id]; });
      if (sgn(res) == 0) continue;
      Rational weight;
      for (const auto& [id, c] : row->form.linear()) {
        if (owner_of(id) != g) continue;
        const Decision& d = program.decision(id);
        weight += c * c / Rational(d.row == d.col ? 1 : 2);
      }
      const Rational lambda = res / weight;
      for (const auto& [id, c] : row->form.linear()) {
        if (owner_of(id) != g) continue;
        const Decision& d = program.decision(id);
        v[id] += lambda * c / Rational(d.row == d.col ? 1 : 2);
      }
    }
  }

  Rational worst;
  for (const auto& row : program.rows()) {
    Rational r = abs(row.form.evaluate([&](int id) { return v[id]; }));
    if (r > worst) worst = r;
  }
  out.max_row_residual = worst;
  out.values = std::move(v);
  out.ok = sgn(worst) == 0;
  if (!out.ok) out.message = "nonzero residual after projection (an owned Gram entry is shared between rows)";
  return out;
}

SosCertificateItem make_item(const SosProgram& program, int gram, const std::vector<Rational>& values,
                             std::size_t arity) {
  const GramHandle& g = program.grams().at(gram);
  const std::size_t n = g.basis.size();
  SosCertificateItem item;
  item.label = g.label;
  item.basis = g.basis;
  item.gram = RationalMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) item.gram(i, j) = values.at(g.ids[i][j]);
  item.polynomial = gram_polynomial(item.basis, item.gram, arity);
  return item;
}

}  // namespace qdelay::sos
