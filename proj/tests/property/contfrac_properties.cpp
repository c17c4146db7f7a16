#include <gtest/gtest.h>

#include <random>

#include "lensembed/contfrac.hpp"
#include "oracles.hpp"

using lensembed::BigInt;
using lensembed::HJString;
using oracle::Rational;

namespace {

constexpr int string_count = 10000;

std::vector<std::int64_t> random_string(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::int64_t> entry(2, 8);
  std::vector<std::int64_t> s(len(rng));
  for (auto& x : s) x = entry(rng);
  return s;
}

Rational ratio(const BigInt& a, const BigInt& b) { return Rational(a, b); }

Rational value(const std::vector<std::int64_t>& terms) {
  auto v = oracle::minus_fraction(terms);
  if (!v) throw std::runtime_error("degenerate continued fraction");
  return *v;
}

std::vector<std::int64_t> cat(std::initializer_list<std::vector<std::int64_t>> parts) {
  std::vector<std::int64_t> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<std::int64_t> twos(std::int64_t count) { return std::vector<std::int64_t>(static_cast<std::size_t>(count), 2); }

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  return r < 0 ? BigInt(r + m) : r;
}

}  // namespace

TEST(ContfracBasics, ConvergentIdentities) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::int64_t> xdist(2, 50);
  for (int trial = 0; trial < string_count; ++trial) {
    auto a = random_string(rng, 1, 8);
    auto s = HJString::from_ints(a);
    auto n = static_cast<std::ptrdiff_t>(a.size());
    for (std::ptrdiff_t j = 1; j <= n; ++j) {
      const BigInt aj = a[static_cast<std::size_t>(j - 1)];
      // (1) recurrences, and agreement with the naive evaluation of the prefix
      ASSERT_EQ(s.p(j), s.p(j - 1) * aj - s.p(j - 2));
      ASSERT_EQ(s.q(j), s.q(j - 1) * aj - s.q(j - 2));
      std::vector<std::int64_t> prefix(a.begin(), a.begin() + j);
      ASSERT_EQ(value(prefix), ratio(s.p(j), s.q(j)));
      // (3) reversed prefix
      std::vector<std::int64_t> rev(prefix.rbegin(), prefix.rend());
      ASSERT_EQ(value(rev), ratio(s.p(j), s.p(j - 1)));
      // (4) p_{j-1} = q_j^{-1} mod p_j, least positive
      ASSERT_EQ(mod(s.p(j - 1) * s.q(j), s.p(j)), 1 % s.p(j));
      ASSERT_GT(s.p(j - 1), 0);
      ASSERT_LT(s.p(j - 1), s.p(j));
      // (5) q_{j-1} = -p_j^{-1} mod q_j
      ASSERT_EQ(mod(s.q(j - 1) * s.p(j) + 1, s.q(j)), 0);
      ASSERT_GE(s.q(j - 1), 0);
      ASSERT_LT(s.q(j - 1), s.q(j));
      // (6) r_{j-1} = p_j^{-1} = q_j^{-1} mod r_j
      ASSERT_EQ(mod(s.r(j - 1) * s.p(j) - 1, s.r(j)), 0);
      ASSERT_EQ(mod(s.r(j - 1) * s.q(j) - 1, s.r(j)), 0);
      ASSERT_GT(s.r(j - 1), 0);
      if (s.r(j) > 1) {
        ASSERT_LT(s.r(j - 1), s.r(j));
      } else {
        ASSERT_EQ(s.r(j - 1), 1);
      }
    }
    // (2) appending an indeterminate
    std::int64_t x = xdist(rng);
    ASSERT_EQ(value(cat({a, {x}})), Rational(s.p(n) * x - s.p(n - 1), s.q(n) * x - s.q(n - 1)));
    // expansion and evaluation are inverse
    auto [p, q] = lensembed::hj_eval(s);
    ASSERT_EQ(lensembed::hj_expand(p, q), s);
    ASSERT_EQ(ratio(p, q), value(a));
  }
}

TEST(ContfracBasics, NegativeEntryReductions) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> small(1, 6);
  for (int trial = 0; trial < string_count; ++trial) {
    auto head = random_string(rng, 0, 3);
    auto tail = random_string(rng, 0, 3);
    std::int64_t a = small(rng), b = small(rng), c = small(rng);
    // (1)
    auto lhs1 = cat({head, {b + 1}, twos(a - 1), {c + 1}, tail});
    auto rhs1 = cat({head, {b, -a, c}, tail});
    auto [p1, q1] = lensembed::hj_eval(HJString::from_ints(lhs1));
    ASSERT_EQ(ratio(p1, q1), value(rhs1));
    // (2)
    auto lhs2 = cat({twos(a - 1), {b + 1}, tail});
    auto [p2, q2] = lensembed::hj_eval(HJString::from_ints(lhs2));
    ASSERT_EQ(value(cat({{-a, b}, tail})), Rational(-p2, p2 - q2));
    // (3)
    auto lhs3 = cat({head, {b + 1}, twos(a - 1)});
    auto [p3, q3] = lensembed::hj_eval(HJString::from_ints(lhs3));
    ASSERT_EQ(ratio(p3, q3), value(cat({head, {b, -a}})));
  }
}

TEST(ContfracBasics, DualStringIdentities) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> tdist(1, 9);
  for (int trial = 0; trial < string_count; ++trial) {
    auto a = random_string(rng, 1, 7);
    auto s = HJString::from_ints(a);
    auto l = static_cast<std::ptrdiff_t>(a.size());
    const BigInt pl = s.p(l), ql = s.q(l), rl = s.r(l);
    const BigInt pm = s.p(l - 1), qm = s.q(l - 1), rm = s.r(l - 1);
    auto b = lensembed::riemenschneider_dual(s).to_ints();
    ASSERT_EQ(value(b), ratio(pl, rl));
    std::size_t m = b.size();
    std::vector<std::int64_t> b_rev(b.rbegin(), b.rend());                   // b_m..b_1
    std::vector<std::int64_t> b_rev2(b.rbegin(), b.rend() - 1);              // b_m..b_2
    auto eval = [](const std::vector<std::int64_t>& t) { return lensembed::hj_eval(HJString::from_ints(t)); };
    auto expect = [&](const std::vector<std::int64_t>& t, const BigInt& num, const BigInt& den) {
      auto [p, q] = eval(t);
      ASSERT_EQ(p, num);
      ASSERT_EQ(q, den);
    };
    std::int64_t t = tdist(rng);
    // (5)
    expect(cat({a, {t + 1}, b_rev2}), pl * rl * t + 1, ql * rl * t + 1);
    // (7)
    expect(cat({a, b_rev}), pl * pl - pl * pm + pm * pm, pl * ql - pl * qm + pm * qm);
    // (9)
    {
      auto merged = a;
      merged.back() += b_rev.front() + 1;
      merged.insert(merged.end(), b_rev.begin() + 1, b_rev.end());
      expect(merged, pl * pl + pl * pm - pm * pm, ql * pl + qm * pl - qm * pm - 1);
    }
    if (m < 2) continue;
    // (4)
    ASSERT_EQ(value(b_rev2), Rational(rl, rl - rm));
    // (6)
    {
      std::int64_t t2 = t + 1;
      auto head = a;
      head.back() += 1;
      auto rest = b_rev2;
      rest.front() += 1;
      expect(cat({head, twos(t2 - 2), rest}), pl * rl * t2 - 1, ql * rl * t2 - 1);
    }
    // (8)
    expect(cat({a, b_rev2}), pl * rl - pm * rl + pm * rm, ql * rl - qm * rl + qm * rm);
    // (10)
    {
      auto merged = a;
      merged.back() += b_rev2.front() + 1;
      merged.insert(merged.end(), b_rev2.begin() + 1, b_rev2.end());
      expect(merged, pl * rl + pm * rl - pm * rm - 1, ql * rl + qm * rl - qm * rm - 1);
    }
  }
}
