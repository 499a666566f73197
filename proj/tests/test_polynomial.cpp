#include <gtest/gtest.h>

#include <random>

#include "layerperc/polynomial.hpp"
#include "layerperc/rational.hpp"

using namespace layerperc;

namespace {

const IntPolynomial p = IntPolynomial::variable();

IntPolynomial random_poly(std::mt19937& rng, int max_degree, int bound) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-bound, bound);
  std::vector<Integer> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = coef(rng);
  return IntPolynomial(std::move(c));
}

}  // namespace

TEST(Ring, PaperProducts) {
  EXPECT_EQ((1 - p) * (1 - p * p), (IntPolynomial{1, -1, -1, 1}));
  EXPECT_EQ(p * p * (3 - 2 * p), (IntPolynomial{0, 0, 3, -2}));
  IntPolynomial q{4, 0, -7, 2};
  EXPECT_EQ(q * IntPolynomial(1), q);
}

TEST(Ring, DegreeRules) {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto a = random_poly(rng, 6, 5), b = random_poly(rng, 6, 5);
    EXPECT_LE((a + b).degree(), std::max(a.degree(), b.degree()));
    if (!a.is_zero() && !b.is_zero()) { EXPECT_EQ((a * b).degree(), a.degree() + b.degree()); }
    EXPECT_EQ(a - a, IntPolynomial());
    EXPECT_EQ(a * b, b * a);
  }
  EXPECT_EQ(IntPolynomial().degree(), -1);
  EXPECT_TRUE(IntPolynomial(0).is_zero());
}

TEST(Ring, Power) {
  EXPECT_EQ(pow(1 - p, 3), (IntPolynomial{1, -3, 3, -1}));
  EXPECT_EQ(pow(p, 0), IntPolynomial(1));
  EXPECT_EQ(bernoulli_weight(2, 1), p * p * (1 - p));
}

TEST(Ring, ExactDivision) {
  auto a = (1 - p) * (2 + 3 * p);
  EXPECT_EQ(exact_div(a, 1 - p), 2 + 3 * p);
  EXPECT_THROW(exact_div(a, 1 + p), Error);
  EXPECT_THROW(exact_div(2 * p + 1, IntPolynomial{0, 2}), Error);  // not divisible over Z
  try {
    exact_div(a, 1 + p);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::inexact_division);
  }
  Polynomial ra = to_rational(a);
  EXPECT_EQ(exact_div(ra, to_rational(2 + 3 * p)), to_rational(1 - p));
  EXPECT_THROW(exact_div(ra, Polynomial()), Error);
}

TEST(Ring, RationalDivmod) {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto a = to_rational(random_poly(rng, 7, 9));
    auto b = to_rational(random_poly(rng, 4, 9));
    if (b.is_zero()) continue;
    auto [q, r] = divmod(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
  }
}

TEST(Eval, Examples) {
  IntPolynomial q{0, 0, 3, -2};
  // 3/4 - 1/4
  EXPECT_EQ(q(Rational(1, 2)), Rational(3, 4) - Rational(1, 4));
  IntPolynomial c{5, 1, 1};
  EXPECT_EQ(c(Rational(0)), Rational(5));
  EXPECT_EQ((1 - p)(Rational(1)), Rational(0));
}

TEST(Eval, SignAtMatchesExactValue) {
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto q = random_poly(rng, 8, 6);
    Rational x(static_cast<long>(rng() % 201) - 100, static_cast<unsigned long>(rng() % 50 + 1));
    x.canonicalize();
    EXPECT_EQ(sign_at(q, x), sgn(q(x)));
    EXPECT_NEAR(q.evaluate(x.get_d()), q(x).get_d(), 1e-6 * (1 + std::abs(q(x).get_d())));
  }
}

TEST(Remainders, PseudoRemainderIdentity) {
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto a = random_poly(rng, 7, 9), b = random_poly(rng, 4, 9);
    if (b.degree() < 1 || a.degree() < b.degree()) continue;
    auto r = pseudo_remainder(a, b);
    EXPECT_LT(r.degree(), b.degree());
    // lc(b)^(da-db+1) a - r is divisible by b
    Integer lead_power;
    mpz_pow_ui(lead_power.get_mpz_t(), b.leading().get_mpz_t(), static_cast<unsigned long>(a.degree() - b.degree() + 1));
    auto scaled = a * lead_power;
    EXPECT_NO_THROW(exact_div(to_rational(scaled - r), to_rational(b)));
  }
}

TEST(Gcd, DividesDerivativeAndSelf) {
  std::mt19937 rng(9);
  for (int i = 0; i < 200; ++i) {
    auto q = random_poly(rng, 8, 5);
    if (q.degree() < 1) continue;
    auto g = gcd(q, q.derivative());
    EXPECT_NO_THROW(exact_div(primitive_part(q), g));
    EXPECT_NO_THROW(exact_div(primitive_part(q.derivative()), g));
  }
}

TEST(Gcd, KnownFactor) {
  auto common = 2 * p - 1;
  auto g = gcd(common * (p + 3) * 6, common * (p * p + 1) * 4);
  EXPECT_EQ(g, common);
  EXPECT_EQ(gcd(to_rational(common * (p + 3)), to_rational(common * 5)), to_rational(common) * Rational(1, 2));
}

TEST(Squarefree, ReconstructsPrimitivePart) {
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    auto a = random_poly(rng, 3, 4), b = random_poly(rng, 2, 4), c = random_poly(rng, 2, 4);
    auto q = a * pow(b, 2) * pow(c, 3);
    if (q.degree() < 1) continue;
    auto f = squarefree_decomposition(q);
    IntPolynomial prod(1);
    for (std::size_t k = 0; k < f.size(); ++k) prod *= pow(f[k], static_cast<unsigned>(k + 1));
    auto pq = primitive_part(q);
    if (pq.leading() < 0) pq = -pq;
    EXPECT_EQ(primitive_part(prod), pq);
    for (const auto& fk : f)
      if (fk.degree() > 0) { EXPECT_EQ(gcd(fk, fk.derivative()).degree(), 0); }
  }
}

TEST(Squarefree, MultiplicitiesLandInPlace) {
  auto f = squarefree_decomposition(pow(2 * p - 1, 2) * (p + 5));
  ASSERT_EQ(f.size(), 2U);
  EXPECT_EQ(f[0], p + 5);
  EXPECT_EQ(f[1], 2 * p - 1);
}

TEST(Content, PrimitiveKeepsSign) {
  IntPolynomial q{-6, 0, -9};
  EXPECT_EQ(content(q), 3);
  EXPECT_EQ(primitive_part(q), (IntPolynomial{-2, 0, -3}));
  Polynomial r({Rational(1, 2), Rational(-1, 3)});
  EXPECT_EQ(to_primitive_integer(r), (IntPolynomial{3, -2}));
}

TEST(Text, Rendering) {
  EXPECT_EQ(to_string(IntPolynomial{1, -2, 1}), "1 - 2*p + p^2");
  EXPECT_EQ(to_string(IntPolynomial()), "0");
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  Rational half(-2, 4);
  half.canonicalize();
  EXPECT_EQ(to_string(half), "-1/2");
}

TEST(Text, ParseRational) {
  EXPECT_EQ(parse_rational("3/10"), Rational(3, 10));
  EXPECT_EQ(parse_rational("0.3"), Rational(3, 10));
  EXPECT_EQ(parse_rational("2"), Rational(2));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}
