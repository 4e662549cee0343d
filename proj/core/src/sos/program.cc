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

#include "qdelay/sos/program.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qdelay/poly/text.h"

namespace qdelay::sos {

ParametricPolynomial gram_form(const GramHandle& gram, std::size_t arity) {
  ParametricPolynomial p(arity);
  const std::size_t n = gram.basis.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      p.add_term(gram.basis[i] * gram.basis[j],
                 AffineForm::variable(gram.ids[i][j], Rational(i == j ? 1 : 2)));
  return p;
}

int SosProgram::new_free() {
  const int id = static_cast<int>(decisions_.size());
  decisions_.push_back({DecisionKind::Free, num_free_, 0, 0});
  free_ids_.push_back(id);
  ++num_free_;
  return id;
}

int SosProgram::new_gram(std::vector<Monomial> basis, const std::string& label) {
  for (const auto& g : grams_)
    if (g.label == label) throw std::invalid_argument("duplicate Gram label '" + label + "'");
  auto ov = overrides_.find(label);
  if (ov != overrides_.end()) basis = ov->second;
  if (basis.empty()) throw std::invalid_argument("Gram '" + label + "' has an empty basis");
  GramHandle g;
  g.index = static_cast<int>(grams_.size());
  g.label = label;
  g.basis = std::move(basis);
  const std::size_t n = g.basis.size();
  g.ids.assign(n, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const int id = static_cast<int>(decisions_.size());
      decisions_.push_back({DecisionKind::GramEntry, g.index, static_cast<int>(i), static_cast<int>(j)});
      g.ids[i][j] = g.ids[j][i] = id;
    }
  grams_.push_back(std::move(g));
  return grams_.back().index;
}

void SosProgram::add_equality(const AffineForm& form, int owner, std::string what) {
  if (form.is_zero()) return;
  for (const auto& [id, c] : form.linear())
    if (id < 0 || id >= num_decisions()) throw std::out_of_range("equality references unknown decision");
  rows_.push_back({form, owner, std::move(what)});
}

sdp::SdpProblem SosProgram::to_sdp() const {
  sdp::SdpProblem p;
  for (const auto& g : grams_) p.add_block(static_cast<int>(g.basis.size()));
  if (num_free_ > 0) p.add_free(num_free_);
  for (const auto& row : rows_) {
    sdp::Constraint c;
    for (const auto& [id, coeff] : row.form.linear()) {
      const Decision& d = decisions_[id];
      const double v = coeff.get_d();
      if (d.kind == DecisionKind::Free) c.free.emplace_back(d.index, v);
      else c.entries.push_back({d.index, d.row, d.col, d.row == d.col ? v : 0.5 * v});
    }
    c.rhs = -row.form.constant().get_d();
    p.add_constraint(std::move(c));
  }
  return p;
}

std::vector<double> SosProgram::extract(const sdp::SdpSolution& solution) const {
  std::vector<double> values(decisions_.size());
  for (std::size_t id = 0; id < decisions_.size(); ++id) {
    const Decision& d = decisions_[id];
    values[id] = d.kind == DecisionKind::Free ? solution.free_values[d.index]
                                              : solution.blocks.at(d.index)(d.row, d.col);
  }
  return values;
}

std::vector<Monomial> gram_basis(int target_degree, std::size_t arity, const std::vector<std::size_t>& vars) {
  if (target_degree < 0 || target_degree % 2 != 0)
    throw std::invalid_argument("gram_basis: degree " + std::to_string(target_degree) + " is not even");
  if (vars.empty()) return monomials_up_to(arity, target_degree / 2);
  return monomials_up_to(arity, vars, target_degree / 2);
}

SosConstraint encode_sos(SosProgram& program, const ParametricPolynomial& target,
                         const std::vector<Monomial>& basis, const std::string& label, SpanPolicy policy) {
  if (program.has_override(label)) policy = SpanPolicy::ConstrainDecisions;
  for (const auto& m : basis)
    if (m.arity() != target.arity()) throw std::invalid_argument("encode_sos: basis arity mismatch");
  const int gi = program.new_gram(basis, label);
  GramHandle& g = program.gram(gi);
  g.owned = true;
  std::set<Monomial, GradedLexLess> span;
  for (std::size_t i = 0; i < g.basis.size(); ++i)
    for (std::size_t j = i; j < g.basis.size(); ++j) span.insert(g.basis[i] * g.basis[j]);
  if (policy == SpanPolicy::Strict)
    for (const auto& [m, c] : target.terms())
      if (!span.count(m))
        throw std::invalid_argument("encode_sos: monomial " + to_string(Polynomial::term(m, 1)) +
                                    " of the target is outside the span of the Gram basis products");
  ParametricPolynomial diff = gram_form(g, target.arity()) - target;
  std::set<Monomial, GradedLexLess> all = span;
  for (const auto& [m, c] : target.terms()) all.insert(m);
  for (const auto& m : all) {
    const AffineForm f = diff.coefficient(m);
    program.add_equality(f, span.count(m) ? gi : -1, label + ":" + to_string(Polynomial::term(m, 1)));
  }
  return {target, gi};
}

NonnegOnSet encode_nonneg_on_set(SosProgram& program, const ParametricPolynomial& target,
                                 const std::vector<Polynomial>& domain_polys, int multiplier_degree,
                                 const std::string& label) {
  if (multiplier_degree < 0 || multiplier_degree % 2 != 0)
    throw std::invalid_argument("encode_nonneg_on_set: multiplier degree must be even and nonnegative");
  for (const auto& p : domain_polys)
    if (p.arity() != target.arity()) throw std::invalid_argument("encode_nonneg_on_set: arity mismatch");
  int degree = std::max(target.degree(), 0);
  int multiplier_terms = -1;
  for (const auto& p : domain_polys) multiplier_terms = std::max(multiplier_terms, multiplier_degree + p.degree());
  if (degree % 2 != 0 && degree > multiplier_terms)
    throw std::invalid_argument("encode_nonneg_on_set: target degree " + std::to_string(degree) +
                                " is odd and the multiplier degree is too small to match it");
  NonnegOnSet out;
  ParametricPolynomial master = target;
  for (std::size_t i = 0; i < domain_polys.size(); ++i) {
    const auto basis = gram_basis(multiplier_degree, target.arity());
    const int gi = program.new_gram(basis, label + ".h" + std::to_string(i));
    ParametricPolynomial h = gram_form(program.grams()[gi], target.arity());
    master += h * domain_polys[i];
    degree = std::max(degree, multiplier_degree + domain_polys[i].degree());
    out.multipliers.push_back({h, gi});
  }
  if (degree % 2 != 0) ++degree;
  out.master = encode_sos(program, master, gram_basis(degree, target.arity()), label + ".master");
  out.master.target = master;
  return out;
}

}  // namespace qdelay::sos
