#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "lensembed/arith.hpp"
#include "lensembed/contfrac.hpp"
#include "lensembed/korbit.hpp"
#include "oracles.hpp"

using namespace lensembed;

TEST(Contfrac, ExpandKnownFractions) {
  EXPECT_EQ(hj_expand(64, 39).to_ints(), (std::vector<std::int64_t>{2, 3, 5, 3}));
  EXPECT_EQ(hj_expand(7, 1).to_ints(), (std::vector<std::int64_t>{7}));
  EXPECT_EQ(hj_expand(5, 4).to_ints(), (std::vector<std::int64_t>{2, 2, 2, 2}));
  EXPECT_EQ(hj_terms(64, 45), (std::vector<std::int64_t>{2, 2, 4, 4, 2}));
}

TEST(Contfrac, ExpandRejectsBadInput) {
  EXPECT_THROW(hj_expand(4, 2), DomainError);
  EXPECT_THROW(hj_expand(3, 3), DomainError);
  EXPECT_THROW(hj_expand(3, 0), DomainError);
}

TEST(Contfrac, ExpandEvalRoundTrip) {
  for (std::int64_t p = 2; p <= 120; ++p)
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      auto s = hj_expand(p, q);
      for (const auto& a : s.terms()) ASSERT_GE(a, 2);
      auto v = oracle::minus_fraction(s.to_ints());
      ASSERT_TRUE(v.has_value());
      ASSERT_EQ(*v, oracle::Rational(p, q));
      auto [pp, qq] = hj_eval(s);
      ASSERT_EQ(pp, p);
      ASSERT_EQ(qq, q);
    }
}

TEST(Contfrac, ConvergentSeeds) {
  auto s = HJString::from_ints(std::vector<std::int64_t>{2, 3, 5, 3});
  EXPECT_EQ(s.p(-1), 0);
  EXPECT_EQ(s.p(0), 1);
  EXPECT_EQ(s.q(-1), -1);
  EXPECT_EQ(s.q(0), 0);
  EXPECT_EQ(s.p(4), 64);
  EXPECT_EQ(s.q(4), 39);
  EXPECT_EQ(s.r(4), 25);
  EXPECT_EQ(numerators(std::vector<std::int64_t>{2, 3, 5, 3}), (std::vector<std::int64_t>{0, 1, 2, 5, 23, 64}));
}

TEST(Contfrac, ReverseOrbitIsInverse) {
  for (std::int64_t p = 2; p <= 200; ++p)
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      auto r = reverse_orbit(p, q);
      ASSERT_EQ(mul_mod(q, r, p), 1 % p);
      auto rev = hj_expand(p, q).reversed();
      ASSERT_EQ(hj_expand(p, r), rev);
      ASSERT_EQ(q_orbit(p, q), std::min(q, r));
    }
}

TEST(Contfrac, DualPointRule) {
  auto d = riemenschneider_dual(HJString::from_ints(std::vector<std::int64_t>{2, 3, 5, 3}));
  EXPECT_EQ(d.to_ints(), (std::vector<std::int64_t>{3, 3, 2, 2, 3, 2}));
  for (std::int64_t p = 3; p <= 80; ++p)
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      auto dual = riemenschneider_dual(hj_expand(p, q));
      ASSERT_EQ(dual, hj_expand(p, p - q));
      ASSERT_EQ(riemenschneider_dual(dual), hj_expand(p, q));
    }
}

TEST(Contfrac, BigValues) {
  std::vector<std::int64_t> terms;
  for (int i = 0; i < 60; ++i) terms.push_back(2 + (i * 7) % 9);
  auto [p, q] = hj_eval(HJString::from_ints(terms));
  EXPECT_GT(p, BigInt("1000000000000000000000000"));
  EXPECT_EQ(hj_expand(p, q).to_ints(), terms);
  auto v = oracle::minus_fraction(terms);
  EXPECT_EQ(*v, oracle::Rational(p, q));
}

TEST(Arith, ModularHelpers) {
  EXPECT_EQ(mod(-3, 7), 4);
  EXPECT_EQ(inverse_mod(3, 7), 5);
  EXPECT_THROW(inverse_mod(2, 4), DomainError);
  EXPECT_EQ(isqrt(99), 9);
  EXPECT_EQ(isqrt(100), 10);
  EXPECT_THROW(checked_mul(INT64_MAX, 2), std::overflow_error);
  for (std::int64_t m = 2; m < 60; ++m)
    for (std::int64_t a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) ASSERT_EQ(inverse_mod(a, m), oracle::inverse_by_trial(a, m));
}

TEST(KOrbit, CanonicalRepresentative) {
  // {19, 45, 27, 37} mod 64
  EXPECT_EQ(canonical_k_orbit(64, 19).representative, 19);
  EXPECT_EQ(canonical_k_orbit(64, -19).representative, 19);
  EXPECT_EQ(canonical_k_orbit(64, 27).representative, 19);
  EXPECT_EQ(canonical_k_orbit(64, 37).representative, 19);
  for (std::int64_t p = 2; p < 100; ++p)
    for (std::int64_t k = 1; k < p; ++k) {
      if (std::gcd(p, k) != 1) continue;
      auto o = canonical_k_orbit(p, k);
      ASSERT_EQ(o.modulus, p);
      for (auto x : {k, p - k, oracle::inverse_by_trial(k, p), p - oracle::inverse_by_trial(k, p)}) {
        ASSERT_LE(o.representative, x == 0 ? p : x);
        ASSERT_EQ(canonical_k_orbit(p, x), o);
      }
    }
}
