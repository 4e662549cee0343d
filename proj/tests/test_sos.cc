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

#include <random>

#include <gtest/gtest.h>

#include "qdelay/certifier/delay_system.h"
#include "qdelay/poly/text.h"
#include "qdelay/sos/solve.h"

using namespace qdelay;
using namespace qdelay::sos;

namespace {

const std::vector<std::string> kX = {"x1", "x2"};

Polynomial P(const char* text, const std::vector<std::string>& names = kX) { return parse_polynomial(text, names); }
Polynomial psi() { return P("x1*(x1 - 1) + x2^2"); }

ParametricPolynomial constant_form(const Polynomial& p) {
  ParametricPolynomial q(p.arity());
  for (const auto& [m, c] : p.terms()) q.add_term(m, AffineForm(c));
  return q;
}

}  // namespace

TEST(SosGramBasis, Sizes) {
  const auto b1 = gram_basis(2, 1);
  ASSERT_EQ(b1.size(), 2u);
  EXPECT_TRUE(b1[0].is_constant());
  EXPECT_EQ(b1[1], Monomial::variable(1, 0));
  EXPECT_EQ(gram_basis(4, 2).size(), 6u);
  EXPECT_EQ(gram_basis(4, 8).size(), 45u);
  EXPECT_EQ(gram_basis(4, 8, {0, 1}).size(), 6u);
  EXPECT_THROW(gram_basis(3, 2), std::invalid_argument);
}

TEST(SosEncode, PerfectSquare) {
  const auto r = prove_sos(P("x1^2 - 2*x1 + 1", {"x1"}), gram_basis(2, 1));
  ASSERT_TRUE(r.verified) << r.message;
  ASSERT_EQ(r.items.size(), 1u);
  const auto& G = r.items[0].gram;
  EXPECT_EQ(G(0, 0), 1);
  EXPECT_EQ(G(0, 1), -1);
  EXPECT_EQ(G(1, 1), 1);
  EXPECT_EQ(r.report.residual_inf, 0.0);
}

TEST(SosEncode, NegativeIsInfeasible) {
  const auto r = prove_sos(P("-x1^2 - 1", {"x1"}), gram_basis(2, 1));
  EXPECT_FALSE(r.verified);
  EXPECT_EQ(r.status, sdp::SdpStatus::Infeasible);
}

TEST(SosEncode, ResidueOfDomain) {
  // x1 (1 - x1) + psi = x2^2.
  const Polynomial p = P("x1*(1 - x1)");
  EXPECT_EQ(p + psi(), P("x2^2"));
  const auto r = prove_sos(p + psi(), gram_basis(2, 2));
  EXPECT_TRUE(r.verified) << r.message;
}

TEST(SosEncode, SpanViolationNamesMonomial) {
  SosProgram prog;
  try {
    encode_sos(prog, constant_form(P("x1^3 + 1")), gram_basis(2, 2));
    FAIL() << "expected a span violation";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("x1^3"), std::string::npos) << e.what();
  }
}

TEST(SosNonneg, DegreeZeroMultiplier) {
  const auto r = prove_nonneg_on_set(P("x1*(1 - x1)"), {psi()}, 0);
  ASSERT_TRUE(r.verified) << r.message;
  ASSERT_EQ(r.items.size(), 2u);
  EXPECT_EQ(r.items[0].polynomial, Polynomial::constant(2, 1));
  EXPECT_EQ(r.items[1].polynomial, P("x2^2"));
}

TEST(SosNonneg, OneIsNonnegativeAnywhere) {
  // Any constant h in [0, 4] works; the canonical witness is h = 0, residue 1.
  const auto r = prove_nonneg_on_set(Polynomial::constant(2, 1), {psi()}, 0);
  ASSERT_TRUE(r.verified) << r.message;
  EXPECT_EQ(r.items[1].polynomial, Polynomial::constant(2, 1) + r.items[0].polynomial * psi());

  const auto hb = gram_basis(0, 2), mb = gram_basis(2, 2);
  RationalMatrix H(1, 1), M(3, 3);
  M(0, 0) = 1;
  SosCertificateItem h{"h", hb, H, gram_polynomial(hb, H, 2)};
  SosCertificateItem master{"master", mb, M, gram_polynomial(mb, M, 2)};
  EXPECT_TRUE(h.polynomial.is_zero());
  EXPECT_EQ(master.polynomial, Polynomial::constant(2, 1));
  EXPECT_TRUE(verify_certificate({h, master}, {Polynomial::constant(2, 1), {{psi(), 0}}, {1}}).passed);
}

TEST(SosNonneg, MinusDomainPolynomial) {
  const auto r = prove_nonneg_on_set(-psi(), {psi()}, 0);
  ASSERT_TRUE(r.verified) << r.message;
  EXPECT_EQ(r.items[0].polynomial, Polynomial::constant(2, 1));
  EXPECT_TRUE(r.items[1].polynomial.is_zero());
}

TEST(SosNonneg, OddDegreeTooHighThrows) {
  SosProgram prog;
  EXPECT_THROW(encode_nonneg_on_set(prog, constant_form(P("x1^3")), {psi()}, 0), std::invalid_argument);
  EXPECT_THROW(encode_nonneg_on_set(prog, constant_form(P("x1")), {psi()}, 1), std::invalid_argument);
}

TEST(SosNonneg, EmptyDomainIsPlainSos) {
  const Polynomial t = P("x1^2 + 2*x1*x2 + 3*x2^2 + 1");
  SosProgram a, b;
  const auto ea = encode_nonneg_on_set(a, constant_form(t), {}, 2);
  encode_sos(b, constant_form(t), gram_basis(2, 2), "nonneg.master");
  EXPECT_TRUE(ea.multipliers.empty());
  ASSERT_EQ(a.grams().size(), b.grams().size());
  EXPECT_EQ(a.grams()[0].basis, b.grams()[0].basis);
  ASSERT_EQ(a.rows().size(), b.rows().size());
  for (std::size_t i = 0; i < a.rows().size(); ++i) EXPECT_EQ(a.rows()[i].form, b.rows()[i].form);
}

TEST(SosVerify, HandBuiltCertificate) {
  const auto basis = gram_basis(2, 1);
  RationalMatrix G(2, 2);
  G(0, 0) = 1;
  G(0, 1) = G(1, 0) = -1;
  G(1, 1) = 1;
  SosCertificateItem item{"sos", basis, G, gram_polynomial(basis, G, 1)};
  SosIdentity id{P("x1^2 - 2*x1 + 1", {"x1"}), {}, {0}};
  const auto ok = verify_certificate({item}, id);
  EXPECT_TRUE(ok.passed);
  EXPECT_EQ(ok.residual_inf, 0.0);

  item.gram(0, 1) = item.gram(1, 0) = Rational(-1) + Rational(1, 1000);
  item.polynomial = gram_polynomial(basis, item.gram, 1);
  const auto bad = verify_certificate({item}, id);
  EXPECT_FALSE(bad.passed);
  EXPECT_NEAR(bad.residual_inf, 2e-3, 1e-12);
  EXPECT_FALSE(bad.failures.empty());
}

TEST(SosVerify, IndefiniteGramFails) {
  const auto basis = gram_basis(2, 1);
  RationalMatrix G(2, 2);
  G(0, 0) = 1;
  G(1, 1) = -1;
  SosCertificateItem item{"sos", basis, G, gram_polynomial(basis, G, 1)};
  const auto r = verify_certificate({item}, {P("1 - x1^2", {"x1"}), {}, {0}});
  EXPECT_FALSE(r.passed);
  ASSERT_EQ(r.items.size(), 1u);
  EXPECT_FALSE(r.items[0].psd_exact);
}

TEST(SosProperty, RoundTripOfSumsOfSquares) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial q(2);
    for (int k = 0; k < 3; ++k) {
      Polynomial s(2);
      for (const auto& m : monomials_up_to(2, 2)) s.add_term(m, Rational(coef(rng)));
      q += s * s;
    }
    if (q.is_zero()) continue;
    const auto r = prove_sos(q, gram_basis(4, 2));
    EXPECT_TRUE(r.verified) << "trial " << trial << ": " << r.message << " " << to_string(q);
  }
}

TEST(SosProperty, SamplingSoundness) {
  // Positive on the disc; needs the x2^2 psi term in the multiplier.
  const Polynomial target = P("x1 - x1^2 - x2^2 + 1/10*x1*x2^2 + x2^4 + 1/10");
  const auto r = prove_nonneg_on_set(target, {psi()}, 2);
  ASSERT_TRUE(r.verified) << r.message;
  const auto pts = certifier::sample_set({psi()}, 2, 10000, 99, 1.5);
  ASSERT_EQ(pts.size(), 10000u);
  double lo = 1e300;
  for (const auto& z : pts) lo = std::min(lo, evaluate(target, z));
  EXPECT_GE(lo, -1e-6);
}
