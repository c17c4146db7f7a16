#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "lensembed/arith.hpp"
#include "lensembed/lattice.hpp"
#include "oracles.hpp"

using namespace lensembed;

TEST(Lattice, DeterminantMatchesOracle) {
  IntMatrix m{{2, -1, 0}, {-1, 3, -1}, {0, -1, 5}};
  EXPECT_EQ(determinant(m), oracle::determinant(m));
  EXPECT_EQ(determinant(m), 23);
  IntMatrix singular{{1, 2}, {2, 4}};
  EXPECT_EQ(determinant(singular), 0);
}

TEST(Lattice, GramValidation) {
  EXPECT_THROW(GramLattice(IntMatrix{{1, 2}, {3, 1}}), DomainError);
  EXPECT_THROW(GramLattice(IntMatrix{{1, 2}, {2, 1}}), DomainError);
  GramLattice lat(IntMatrix{{2, -1}, {-1, 2}});
  EXPECT_EQ(lat.norm(std::vector<std::int64_t>{1, 1}), 2);
  EXPECT_EQ(lat.discriminant(), 3);
}

TEST(Lattice, LinearLatticeDiscriminant) {
  for (std::int64_t p = 2; p <= 60; ++p)
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      auto d = linear_lattice(p, q);
      ASSERT_EQ(d.lattice.discriminant(), p);
      ASSERT_EQ(oracle::determinant_bareiss(d.lattice.gram()), p);
    }
}

TEST(Lattice, SparseVectorOps) {
  auto a = SparseVec::from_dense(std::vector<std::int64_t>{1, 0, -2, 0});
  auto b = SparseVec::from_dense(std::vector<std::int64_t>{0, 3, 1, 0});
  EXPECT_EQ(a.norm(), 5);
  EXPECT_EQ(a.dot(b), -2);
  EXPECT_EQ((a + b).to_dense(4), (IntVec{1, 3, -1, 0}));
  EXPECT_EQ((-a).at(2), 2);
  EXPECT_EQ(a.support(), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(a.support_plus(), (std::vector<std::size_t>{0}));
  EXPECT_EQ(a.support_minus(), (std::vector<std::size_t>{2}));
}

TEST(Lattice, ShortVectorsAgreeWithOracle) {
  auto d = linear_lattice(64, 39);
  std::set<IntVec> mine;
  for_each_short_vector(d.lattice, 6, [&](const IntVec& v, std::int64_t n) {
    EXPECT_EQ(d.lattice.norm(v), n);
    mine.insert(v);
    return true;
  });
  auto ref = oracle::short_vectors(d.lattice.gram(), 6);
  EXPECT_EQ(mine, std::set<IntVec>(ref.begin(), ref.end()));
}

TEST(Lattice, IntervalClassesIrreducible) {
  auto d = linear_lattice(64, 39);  // norms 2,3,5,3
  auto n = d.norms.size();
  auto shorts = oracle::short_vectors(d.lattice.gram(), 14);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) {
      auto v = interval_class(d, i, j);
      EXPECT_TRUE(irreducible(d.lattice, v, {14}));
      EXPECT_FALSE(oracle::reducible(d.lattice.gram(), v, shorts));
      std::size_t heavy = 0;
      for (std::size_t t = i; t <= j; ++t) heavy += d.norms[t - 1] >= 3;
      EXPECT_EQ(breakable(d.lattice, v, {14}), heavy >= 2);
    }
  EXPECT_FALSE(irreducible(d.lattice, IntVec{2, 0, 0, 0}, {14}));
}

TEST(Lattice, OracleBound) {
  auto d = linear_lattice(64, 39);
  EXPECT_THROW(irreducible(d.lattice, IntVec{1, 1, 1, 1}, {2}), OracleBoundExceeded);
}

TEST(Lattice, GraphLatticeOfPath) {
  auto g = linear_graph(std::vector<std::int64_t>{2, 3, 5, 3});
  auto lat = graph_lattice(g);
  EXPECT_EQ(lat.gram(), tridiagonal_gram(std::vector<std::int64_t>{2, 3, 5, 3}));
  auto disconnected = RootedGraph::empty(3, 0);
  disconnected.add_edge(0, 1);
  EXPECT_FALSE(disconnected.connected());
  EXPECT_THROW(graph_lattice(disconnected), DomainError);
}

TEST(Lattice, GersteinCriterion) {
  EXPECT_TRUE(linear_iso(64, 39, 64, 39));
  EXPECT_TRUE(linear_iso(64, 39, 64, 23));  // 39 * 23 = 897 = 14 * 64 + 1
  EXPECT_FALSE(linear_iso(64, 39, 64, 25));
  EXPECT_FALSE(linear_iso(64, 39, 63, 2));
  for (std::int64_t p = 2; p <= 40; ++p)
    for (std::int64_t q = 1; q < p; ++q)
      for (std::int64_t q2 = 1; q2 < p; ++q2) {
        if (std::gcd(p, q) != 1 || std::gcd(p, q2) != 1) continue;
        bool same_norms = linear_lattice(p, q).norms == linear_lattice(p, q2).norms;
        auto rev = linear_lattice(p, q2).norms;
        std::reverse(rev.begin(), rev.end());
        bool reversed = linear_lattice(p, q).norms == rev;
        ASSERT_EQ(linear_iso(p, q, p, q2), same_norms || reversed);
      }
}
