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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qdelay/poly/polynomial.h"
#include "qdelay/poly/text.h"
#include "qdelay/quantum/reduction.h"
#include "qdelay/quantum/spin.h"

using namespace qdelay;

namespace {

const std::vector<std::string> kXY = {"x", "y"};

Polynomial P(const char* text, const std::vector<std::string>& names = kXY) { return parse_polynomial(text, names); }

Polynomial psi() { return P("x1*(x1 - 1) + x2^2", {"x1", "x2"}); }

Polynomial random_poly(std::mt19937& rng, std::size_t arity, int max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-9, 9), den(1, 4), deg(0, max_deg);
  Polynomial p(arity);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(arity, 0);
    int left = deg(rng);
    for (int k = 0; k < left; ++k) e[std::uniform_int_distribution<std::size_t>(0, arity - 1)(rng)]++;
    Rational c(coef(rng), den(rng));
    c.canonicalize();
    p.add_term(Monomial(e), c);
  }
  return p;
}

}  // namespace

TEST(PolyAdd, Cancellation) { EXPECT_EQ(add(P("x^2 + y"), P("-y")), P("x^2")); }

TEST(PolyAdd, ZeroIsIdentity) {
  const Polynomial p = P("3*x^2*y - 1/2*y + 7");
  EXPECT_EQ(add(p, Polynomial(2)), p);
}

TEST(PolyAdd, LikeTermsCombine) { EXPECT_EQ(add(P("x + 1"), P("x - 1")), P("2*x")); }

TEST(PolyAdd, ArityMismatchThrows) { EXPECT_THROW(add(Polynomial(2), Polynomial(3)), std::invalid_argument); }

TEST(PolyMul, DifferenceOfSquares) { EXPECT_EQ(mul(P("x + y"), P("x - y")), P("x^2 - y^2")); }

TEST(PolyMul, OneIsIdentity) {
  const Polynomial p = P("x^3 - 2*x*y + 5/3");
  EXPECT_EQ(mul(p, Polynomial::constant(2, 1)), p);
}

TEST(PolyMul, BuildsDomainPolynomial) {
  const std::vector<std::string> n = {"x1", "x2"};
  EXPECT_EQ(add(mul(P("x1", n), P("x1 - 1", n)), mul(P("x2", n), P("x2", n))), psi());
}

TEST(PolyMul, ZeroStoresNoTerms) {
  EXPECT_TRUE(mul(P("x + y"), Polynomial(2)).is_zero());
  EXPECT_TRUE(add(P("x"), P("-x")).terms().empty());
}

TEST(PolyDifferentiate, Examples) {
  EXPECT_EQ(differentiate(P("x^2*y"), 0), P("2*x*y"));
  EXPECT_TRUE(differentiate(P("x^2"), 1).is_zero());
  const std::vector<std::string> n = {"x1", "x2"};
  EXPECT_EQ(differentiate(P("x1*(x1 - 1)", n), 0), P("2*x1 - 1", n));
  EXPECT_THROW(differentiate(P("x"), 2), std::out_of_range);
}

TEST(PolyEvaluate, Examples) {
  const std::vector<double> a = {1, 2}, b = {1, 0}, c = {0.5, 0};
  EXPECT_EQ(evaluate(P("x^2 + y^2"), a), 5.0);
  EXPECT_EQ(evaluate(psi(), b), 0.0);
  EXPECT_EQ(evaluate(psi(), c), -0.25);
  const std::vector<double> bad = {1};
  EXPECT_THROW(evaluate(psi(), bad), std::invalid_argument);
}

TEST(PolySubstitute, Binomial) {
  const std::vector<std::string> uv = {"u", "v"};
  const Polynomial x2 = P("x1^2", {"x1"});
  EXPECT_EQ(substitute(x2, {{0, P("u + v", uv)}}), P("u^2 + 2*u*v + v^2", uv));
}

TEST(PolySubstitute, IdentityAssignment) {
  const Polynomial p = P("x^2*y - 3*y + 1/7");
  EXPECT_EQ(substitute(p, {{0, Polynomial::variable(2, 0)}, {1, Polynomial::variable(2, 1)}}), p);
}

TEST(PolySubstitute, LiftToEightVariables) {
  const Polynomial q = substitute(psi(), {{0, Polynomial::variable(8, 0)}, {1, Polynomial::variable(8, 1)}});
  EXPECT_EQ(q.arity(), 8u);
  EXPECT_EQ(q, lift(psi(), 8, 0));
  for (const auto& [m, c] : q.terms())
    for (std::size_t i = 2; i < 8; ++i) EXPECT_EQ(m.exponent(i), 0);
}

TEST(PolySubstitute, InconsistentArityThrows) {
  EXPECT_THROW(substitute(P("x*y"), {{0, Polynomial::variable(2, 0)}, {1, Polynomial::variable(3, 0)}}),
               std::invalid_argument);
}

TEST(PolyGenerator, ScalarIto) {
  // V0 = x^2, f = -x, g = c: L V0 = -2 x^2 + c^2.
  const Polynomial V0 = P("x1^2", {"x1"});
  const Rational c(3, 2);
  const auto L = apply_generator(V0, {P("-x1", {"x1", "xd1"})}, {Polynomial::constant(1, c)});
  EXPECT_EQ(L, P("-2*x1^2 + 9/4", {"x1", "xd1"}));
}

TEST(PolyGenerator, LinearV0GivesDrift) {
  const std::vector<std::string> n = {"x1", "x2", "xd1", "xd2"};
  const std::vector<Polynomial> f = {P("x1*xd2 - 3", n), P("x2^2 + xd1", n)};
  const std::vector<Polynomial> g = {P("x1^2 + 1", {"x1", "x2"}), P("x2", {"x1", "x2"})};
  const auto L = apply_generator(P("2*x1 - x2 + 5", {"x1", "x2"}), f, g);
  EXPECT_EQ(L, 2 * f[0] - f[1]);
}

TEST(PolyGenerator, SpinHalfAgainstSymbolicOracle) {
  // Expanded by hand with a CAS from f = (-u x2, u (x1 - 1/2) - x2/2),
  // u = xd1 + 4 xd2, g = (2 x1 (x1 - 1), (2 x1 - 1) x2), eta = 9/10.
  const std::vector<std::string> n = {"x1", "x2", "xd1", "xd2"};
  const Polynomial oracle = P(
      "18/5*x1^4 - 36/5*x1^3 + 18/5*x1^2*x2^2 + 18/5*x1^2 - 18/5*x1*x2^2 - 1/10*x2^2 - x2*xd1 - 4*x2*xd2", n);
  const auto model = quantum::make_sme_model(2, 1, 4, Rational(9, 10), quantum::Target::Up);
  const auto sys = quantum::reduce_spin_half(model, Rational(3, 10));
  const auto L = apply_generator(P("x1^2 + x2^2", {"x1", "x2"}), sys.f, sys.g, sys.g_scale_sq);
  ASSERT_EQ(L.size(), oracle.size());
  for (const auto& [m, c] : oracle.terms()) EXPECT_EQ(L.coefficient(m), c) << to_string(Polynomial::term(m, 1), n);
}

TEST(PolyGenerator, DimensionMismatchThrows) {
  EXPECT_THROW(apply_generator(P("x1^2", {"x1"}), {P("x1", {"x1"})}, {Polynomial::constant(1, 1)}),
               std::invalid_argument);
}

TEST(PolyProperty, ProductEvaluatesToProductOfValues) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial p = random_poly(rng, 3, 4, 6), q = random_poly(rng, 3, 4, 6);
    const std::vector<double> z = {u(rng), u(rng), u(rng)};
    const double lhs = evaluate(mul(p, q), z), rhs = evaluate(p, z) * evaluate(q, z);
    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(PolyProperty, ProductRule) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial p = random_poly(rng, 3, 4, 5), q = random_poly(rng, 3, 4, 5);
    for (std::size_t v = 0; v < 3; ++v)
      EXPECT_EQ(differentiate(mul(p, q), v), differentiate(p, v) * q + p * differentiate(q, v));
  }
}

TEST(PolyProperty, GeneratorIsLinear) {
  std::mt19937 rng(13);
  const std::vector<std::string> n = {"x1", "x2", "xd1", "xd2"};
  const std::vector<Polynomial> f = {P("-x1*xd2 + x2", n), P("x1 - xd1^2", n)};
  const std::vector<Polynomial> g = {P("x1*x2", {"x1", "x2"}), P("1 - x1", {"x1", "x2"})};
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial U = random_poly(rng, 2, 3, 5), V = random_poly(rng, 2, 3, 5);
    Rational a(trial - 20, 3), b(7, trial + 1);
    a.canonicalize();
    b.canonicalize();
    EXPECT_EQ(apply_generator(U * a + V * b, f, g, Rational(2, 5)),
              apply_generator(U, f, g, Rational(2, 5)) * a + apply_generator(V, f, g, Rational(2, 5)) * b);
  }
}

TEST(PolyProperty, CommutativeAndAssociative) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p = random_poly(rng, 2, 3, 4), q = random_poly(rng, 2, 3, 4), r = random_poly(rng, 2, 3, 4);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ((p + q) + r, p + (q + r));
  }
}

TEST(PolyText, RoundTrip) {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p = random_poly(rng, 4, 4, 6);
    EXPECT_EQ(parse_polynomial(to_string(p), 4), p);
  }
  EXPECT_EQ(to_string(P("3/2*x^2*y - y + 5")), "3/2*x1^2*x2 + -1*x2 + 5");
}

TEST(PolyText, DecimalsAreExact) {
  EXPECT_EQ(parse_rational("0.9"), Rational(9, 10));
  EXPECT_EQ(parse_rational("09"), Rational(9));
  EXPECT_EQ(parse_rational("-1e-3"), Rational(-1, 1000));
  EXPECT_THROW(parse_polynomial("x1 +* 2", 1), std::invalid_argument);
}

TEST(PolyMonomial, GradedLexOrder) {
  const auto ms = monomials_up_to(2, 2);
  ASSERT_EQ(ms.size(), 6u);
  EXPECT_EQ(ms[0].degree(), 0);
  EXPECT_EQ(ms[1], Monomial::variable(2, 1));  // x2 < x1
  EXPECT_EQ(ms[2], Monomial::variable(2, 0));
  EXPECT_EQ(ms[5], Monomial::variable(2, 0, 2));
}
