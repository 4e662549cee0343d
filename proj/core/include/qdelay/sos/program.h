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
#include <map>
#include <string>
#include <vector>

#include "qdelay/poly/polynomial.h"
#include "qdelay/sdp/problem.h"

namespace qdelay::sos {

enum class DecisionKind { Free, GramEntry };

struct Decision {
  DecisionKind kind = DecisionKind::Free;
  int index = 0;  // free variable index, or Gram handle index
  int row = 0;    // Gram entry, row <= col
  int col = 0;
};

// A PSD block indexed by a monomial basis. ids[i][j] == ids[j][i] is the
// decision id of entry (i, j).
struct GramHandle {
  int index = -1;  // position in SosProgram::grams(), equals the SDP block
  std::string label;
  std::vector<Monomial> basis;
  std::vector<std::vector<int>> ids;
  // Set by encode_sos: coefficient matching rows are attributed to this Gram.
  bool owned = false;
};

// basis' G basis as a polynomial with unknown coefficients.
ParametricPolynomial gram_form(const GramHandle& gram, std::size_t arity);

struct EqualityRow {
  AffineForm form;  // form == 0
  int owner = -1;   // owning Gram for coefficient-matching rows, -1 otherwise
  std::string what;
};

// Builder of an SOS program: decision scalars (free or Gram entries) and
// linear equalities between them. Single owner, not thread-safe.
class SosProgram {
 public:
  int new_free();
  AffineForm new_free_form() { return AffineForm::variable(new_free()); }

  // New PSD block over `basis`; returns its index. If a basis override was
  // registered for this label, the override is used instead.
  int new_gram(std::vector<Monomial> basis, const std::string& label);

  void add_equality(const AffineForm& form, int owner = -1, std::string what = {});

  void set_basis_overrides(std::map<std::string, std::vector<Monomial>> overrides) {
    overrides_ = std::move(overrides);
  }
  bool has_override(const std::string& label) const { return overrides_.count(label) > 0; }

  int num_decisions() const { return static_cast<int>(decisions_.size()); }
  const Decision& decision(int id) const { return decisions_.at(id); }
  int num_free() const { return num_free_; }
  const std::vector<GramHandle>& grams() const { return grams_; }
  GramHandle& gram(int index) { return grams_.at(index); }
  const std::vector<EqualityRow>& rows() const { return rows_; }

  // Blocks follow grams() order; free variables follow creation order.
  sdp::SdpProblem to_sdp() const;
  // Decision values read back from a solution.
  std::vector<double> extract(const sdp::SdpSolution& solution) const;

 private:
  std::vector<Decision> decisions_;
  std::vector<int> free_ids_;
  int num_free_ = 0;
  std::vector<GramHandle> grams_;
  std::vector<EqualityRow> rows_;
  std::map<std::string, std::vector<Monomial>> overrides_;
};

enum class SpanPolicy {
  Strict,              // a target monomial outside the product span is an error
  ConstrainDecisions,  // its coefficient is constrained to zero instead
};

// All monomials of degree <= target_degree / 2 over `vars` (all variables
// when empty) in an `arity`-variable space. Throws on odd degree.
std::vector<Monomial> gram_basis(int target_degree, std::size_t arity,
                                 const std::vector<std::size_t>& vars = {});

struct SosConstraint {
  ParametricPolynomial target;
  int gram = -1;  // index into SosProgram::grams()
};

// target == basis' G basis, G PSD. One equality per monomial of the union
// of the product span and the target support.
SosConstraint encode_sos(SosProgram& program, const ParametricPolynomial& target,
                         const std::vector<Monomial>& basis, const std::string& label = "sos",
                         SpanPolicy policy = SpanPolicy::Strict);

struct Multiplier {
  ParametricPolynomial poly;
  int gram = -1;
};

struct NonnegOnSet {
  SosConstraint master;
  std::vector<Multiplier> multipliers;
};

// Certifies target >= 0 on {x : p_i(x) <= 0 for all i}: introduces SOS
// multipliers h_i (multiplier_degree, all variables) and requires
// target + sum_i h_i p_i to be SOS. Gram labels are label + ".h<i>" and
// label + ".master".
NonnegOnSet encode_nonneg_on_set(SosProgram& program, const ParametricPolynomial& target,
                                 const std::vector<Polynomial>& domain_polys, int multiplier_degree,
                                 const std::string& label = "nonneg");

}  // namespace qdelay::sos
