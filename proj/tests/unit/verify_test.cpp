#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "lensembed/verify.hpp"

using namespace lensembed;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
  std::random_device rd;
  auto dir = fs::temp_directory_path() / ("lensembed-" + tag + "-" + std::to_string(rd()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Verify, SmallRangeMatches) {
  RealizationSummary summary;
  auto records = verify_realization(2, 40, {}, &summary);
  EXPECT_EQ(summary.records, records.size());
  EXPECT_EQ(summary.mismatches, 0u);
  EXPECT_EQ(summary.unresolved, 0u);
  EXPECT_EQ(summary.matches, records.size());
  std::size_t orbits = 0;
  for (std::int64_t p = 2; p <= 40; ++p)
    for (std::int64_t q = 1; q < p; ++q)
      if (std::gcd(p, q) == 1) {
        std::int64_t inv = 1;
        while ((inv * q) % p != 1 % p) ++inv;
        orbits += q <= inv;
      }
  EXPECT_EQ(records.size(), orbits);
  for (const auto& r : records) {
    EXPECT_EQ(r.status, RealizationStatus::match);
    EXPECT_EQ(r.embedding_orbits, r.berge_orbits);
    EXPECT_EQ(r.berge_types.size(), r.berge_orbits.size());
  }
}

TEST(Verify, ThirtyThreeHasNothing) {
  auto records = verify_realization(33, 33);
  for (const auto& r : records) {
    if (r.q_orbit != 2 && r.q_orbit != 17) continue;
    EXPECT_TRUE(r.embeddings.empty());
    EXPECT_TRUE(r.berge_orbits.empty());
  }
}

TEST(Verify, CacheIsReusedAndStable) {
  auto dir = scratch_dir("cache");
  VerifyOptions opts;
  opts.cache_dir = dir;
  RealizationSummary first, second;
  auto a = verify_realization(2, 30, opts, &first);
  EXPECT_EQ(first.cached_p, 0u);
  auto b = verify_realization(2, 30, opts, &second);
  EXPECT_EQ(second.cached_p, 29u);
  EXPECT_EQ(a, b);
  opts.force = true;
  RealizationSummary third;
  auto c = verify_realization(2, 30, opts, &third);
  EXPECT_EQ(third.cached_p, 0u);
  EXPECT_EQ(a, c);
  fs::remove_all(dir);
}

TEST(Verify, ParallelMatchesSerial) {
  VerifyOptions par;
  par.jobs = 3;
  std::vector<std::int64_t> order;
  par.on_p = [&](std::int64_t p, const auto&) { order.push_back(p); };
  auto a = verify_realization(20, 60, par);
  auto b = verify_realization(20, 60);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(std::is_sorted(order.begin(), order.end()));
  EXPECT_EQ(order.size(), 41u);
}

TEST(Verify, BudgetLeavesUnresolved) {
  VerifyOptions opts;
  opts.node_budget = 1;
  RealizationSummary summary;
  verify_realization(60, 62, opts, &summary);
  EXPECT_GT(summary.unresolved, 0u);
  EXPECT_EQ(summary.mismatches, 0u);
}

TEST(Verify, StatusNames) {
  for (auto s : {RealizationStatus::match, RealizationStatus::mismatch, RealizationStatus::unresolved})
    EXPECT_EQ(parse_realization_status(to_string(s)), s);
  EXPECT_FALSE(parse_realization_status("maybe").has_value());
}

TEST(CrossCheck, DirectionsAgree) {
  auto report = cross_check_directions(45);
  EXPECT_TRUE(report.ok());
  EXPECT_GT(report.changemakers, 0u);
  EXPECT_EQ(report.changemakers, report.linear + report.sum_of_two + report.not_linear);
  EXPECT_GT(report.embeddings, 0u);
}

TEST(Genus, ExactBounds) {
  bool eq = false;
  EXPECT_TRUE(genus_bound_holds(11, 3, &eq));  // (1,1,3): 2g = 11 - 5
  EXPECT_TRUE(eq);
  EXPECT_FALSE(genus_bound_holds(5, 1));
  EXPECT_TRUE(i_minus_bound_holds(5, 1, &eq));  // (1,2)
  EXPECT_TRUE(eq);
  for (std::int64_t p = 2; p < 2000; ++p)
    for (std::int64_t g = 0; 2 * g <= p; ++g) {
      // 2g - 1 <= p - 2 sqrt((4p+1)/5)  <=>  5 (p - 2g + 1)^2 >= 4 (4p + 1)
      bool exact = genus_bound_holds(p, g);
      double lhs = 2.0 * g - 1, rhs = p - 2 * std::sqrt((4.0 * p + 1) / 5.0);
      if (std::abs(lhs - rhs) > 1e-6) ASSERT_EQ(exact, lhs <= rhs) << p << "," << g;
    }
}

TEST(Genus, ReportOverSmallRange) {
  auto records = verify_realization(2, 120);
  auto report = verify_genus_bound(records, 120);
  EXPECT_TRUE(report.ok()) << (report.problems.empty() ? "" : report.problems.front());
  std::set<std::int64_t> equal;
  bool exception = false;
  for (const auto& r : report.records) {
    if (r.equality) equal.insert(r.p);
    exception = exception || r.exception;
    if (r.p == 5 && r.sigma == std::vector<std::int64_t>{1, 2}) EXPECT_TRUE(r.exception);
  }
  EXPECT_TRUE(exception);
  EXPECT_EQ(equal, (std::set<std::int64_t>{11, 31, 61, 101}));
}
