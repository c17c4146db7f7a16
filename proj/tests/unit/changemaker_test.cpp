#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "lensembed/arith.hpp"
#include "lensembed/changemaker.hpp"
#include "oracles.hpp"

using namespace lensembed;

TEST(Changemaker, Predicate) {
  EXPECT_TRUE(is_changemaker(std::vector<std::int64_t>{1, 1, 2, 4}));
  EXPECT_TRUE(is_changemaker(std::vector<std::int64_t>{1, 2, 3, 5, 5}));
  EXPECT_FALSE(is_changemaker(std::vector<std::int64_t>{1, 3}));
  EXPECT_FALSE(is_changemaker(std::vector<std::int64_t>{2}));
  EXPECT_FALSE(is_changemaker(std::vector<std::int64_t>{1, 2, 1}));
  EXPECT_FALSE(is_changemaker(std::vector<std::int64_t>{}));
  EXPECT_THROW(Changemaker(std::vector<std::int64_t>{1, 3}), DomainError);
}

TEST(Changemaker, ParseAndPrint) {
  auto s = parse_changemaker("1,1,2,4");
  EXPECT_EQ(s.norm(), 22);
  EXPECT_EQ(s.one_norm(), 8);
  EXPECT_EQ(s.to_string(), "(1,1,2,4)");
  EXPECT_EQ(parse_changemaker("(1,2)").entries(), (std::vector<std::int64_t>{1, 2}));
  EXPECT_THROW(parse_changemaker("1,x"), std::invalid_argument);
}

TEST(Changemaker, EnumerationCap) {
  auto all = enumerate_changemakers(8, {10});
  std::set<std::vector<std::int64_t>> got;
  for (const auto& s : all) got.insert(s.entries());
  EXPECT_EQ(got, (std::set<std::vector<std::int64_t>>{{1, 1, 1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 2}}));
  EXPECT_THROW(enumerate_changemakers(8, {6}), ResourceError);
}

TEST(Changemaker, StandardBasisClasses) {
  auto sb = standard_basis(Changemaker({1, 1, 2, 4}));
  ASSERT_EQ(sb.vectors.size(), 3u);
  EXPECT_EQ(sb.vectors[0].vec.to_dense(4), (IntVec{1, -1, 0, 0}));
  EXPECT_EQ(sb.vectors[1].vec.to_dense(4), (IntVec{1, 1, -1, 0}));
  EXPECT_EQ(sb.vectors[2].vec.to_dense(4), (IntVec{1, 1, 1, -1}));
  for (const auto& v : sb.vectors) EXPECT_EQ(v.cls, BasisClass::just_right);

  auto tight = standard_basis(Changemaker({1, 2}));
  EXPECT_EQ(tight.vectors[0].cls, BasisClass::tight);
  EXPECT_EQ(tight.vectors[0].vec.to_dense(2), (IntVec{2, -1}));

  auto gappy = standard_basis(Changemaker({1, 1, 3, 3, 4}));
  EXPECT_EQ(gappy.vectors[3].vec.to_dense(5), (IntVec{0, 1, 0, 1, -1}));
  EXPECT_EQ(gappy.vectors[3].cls, BasisClass::gappy);
  EXPECT_EQ(gappy.vectors[3].gappy_indices, (std::vector<std::size_t>{1}));
  EXPECT_EQ(gappy.vectors[1].cls, BasisClass::tight);
}

TEST(Changemaker, StandardBasisSpansComplement) {
  for (std::int64_t p = 2; p <= 40; ++p)
    for (const auto& s : enumerate_changemakers(p)) {
      auto sb = standard_basis(s);
      ASSERT_EQ(oracle::determinant_bareiss(sb.gram), p);
      for (const auto& v : sb.vectors) {
        ASSERT_EQ(v.vec.dot(s.entries()), 0);
        if (v.cls == BasisClass::tight) ASSERT_TRUE(v.subset.empty());
        if (v.cls == BasisClass::gappy) ASSERT_FALSE(v.gappy_indices.empty());
      }
    }
}

TEST(WeightExpansionUnit, FigureExample) {
  auto w = weight_expansion(std::vector<std::int64_t>{2, 3, 1, 2, 1});
  EXPECT_EQ(w.entries, (std::vector<std::int64_t>{1, 1, 2, 2, 2, 7, 9, 9, 25}));
  EXPECT_EQ(w.width(), 25);
  EXPECT_EQ(w.height(), 34);
  EXPECT_EQ(w.norm(), 25 * 34);
  EXPECT_THROW(weight_expansion(std::vector<std::int64_t>{}), DomainError);
  EXPECT_THROW(weight_expansion(std::vector<std::int64_t>{1, 0}), DomainError);
  auto svg = tiling_svg(w, 4.0);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_EQ(std::count_if(svg.begin(), svg.end(), [](char c) { return c == '\n'; }) > 9, true);
}
