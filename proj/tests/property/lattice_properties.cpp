#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "lensembed/changemaker.hpp"
#include "lensembed/lattice.hpp"
#include "oracles.hpp"

using namespace lensembed;

namespace {

// All nondecreasing positive sequences with sum of squares <= max_norm.
void for_each_sequence(std::int64_t max_norm, const std::function<void(const IntVec&)>& visit) {
  IntVec cur;
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t low, std::int64_t norm) {
    if (!cur.empty()) visit(cur);
    for (std::int64_t x = low; norm + x * x <= max_norm; ++x) {
      cur.push_back(x);
      rec(x, norm + x * x);
      cur.pop_back();
    }
  };
  rec(1, 0);
}

std::int64_t norm_of(const IntVec& v) {
  return std::accumulate(v.begin(), v.end(), std::int64_t{0}, [](auto s, auto x) { return s + x * x; });
}

}  // namespace

TEST(ChangemakerLattice, EnumerationMatchesSubsetSums) {
  std::map<std::int64_t, std::set<IntVec>> expected;
  std::size_t sequences = 0;
  for_each_sequence(60, [&](const IntVec& v) {
    ++sequences;
    bool naive = oracle::makes_change(v);
    ASSERT_EQ(is_changemaker(v), naive);
    if (naive) expected[norm_of(v)].insert(v);
  });
  ASSERT_GT(sequences, 1000u);
  for (std::int64_t p = 1; p <= 60; ++p) {
    std::set<IntVec> got;
    for (const auto& s : enumerate_changemakers(p)) got.insert(s.entries());
    ASSERT_EQ(got, expected[p]) << "p=" << p;
  }
}

TEST(ChangemakerLattice, DiscriminantAndIrreducibleBasis) {
  std::size_t checked = 0;
  for (std::int64_t p = 2; p <= 60; ++p) {
    for (const auto& sigma : enumerate_changemakers(p)) {
      if (sigma.size() < 2) continue;
      auto sb = standard_basis(sigma);
      std::size_t n = sb.vectors.size();
      ASSERT_EQ(n, sigma.size() - 1);
      // Gram entries against the frame vectors, and orthogonality to sigma
      std::vector<oracle::Vec> frame;
      for (const auto& v : sb.vectors) {
        frame.push_back(v.vec.to_dense(sigma.size()));
        ASSERT_EQ(oracle::dot(frame.back(), sigma.entries()), 0);
      }
      auto gram = oracle::gram_of(frame);
      ASSERT_EQ(gram, sb.gram);
      ASSERT_EQ(oracle::determinant_bareiss(gram), p) << sigma.to_string();
      if (n <= 7) ASSERT_EQ(oracle::determinant(gram), p);
      GramLattice lat(sb.gram);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& v = sb.vectors[i].vec;
        OracleOptions opts{std::max<std::int64_t>(12, v.norm())};
        ASSERT_TRUE(irreducible_in_complement(sigma.entries(), v, opts)) << sigma.to_string() << " v" << i + 1;
        if (n <= 10) {
          IntVec unit(n, 0);
          unit[i] = 1;
          ASSERT_TRUE(irreducible(lat, unit, opts)) << sigma.to_string() << " v" << i + 1;
        }
        if (sigma.size() <= 6) ASSERT_FALSE(oracle::reducible_in_complement(sigma.entries(), frame[i]));
        ++checked;
      }
    }
  }
  ASSERT_GT(checked, 1000u);
}

namespace {

struct Graph {
  std::size_t n = 0;
  std::vector<std::vector<std::int64_t>> mult;
};

RootedGraph rooted(const Graph& g) {
  auto r = RootedGraph::empty(g.n, 0);
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = u + 1; v < g.n; ++v)
      if (g.mult[u][v] > 0) r.add_edge(u, v, g.mult[u][v]);
  return r;
}

// Canonical code under permutations fixing the root.
std::vector<std::int64_t> canonical(const Graph& g) {
  std::vector<std::size_t> perm(g.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::int64_t> best;
  do {
    std::vector<std::int64_t> code;
    for (std::size_t u = 0; u < g.n; ++u)
      for (std::size_t v = u + 1; v < g.n; ++v) code.push_back(g.mult[perm[u]][perm[v]]);
    if (best.empty() || code < best) best = code;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

std::vector<Graph> rooted_graphs(std::size_t n, std::int64_t max_mult) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::set<std::vector<std::int64_t>> seen;
  std::vector<Graph> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) total *= static_cast<std::size_t>(max_mult + 1);
  for (std::size_t code = 0; code < total; ++code) {
    Graph g{n, std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(n, 0))};
    std::size_t c = code;
    for (auto [u, v] : pairs) {
      g.mult[u][v] = g.mult[v][u] = static_cast<std::int64_t>(c % static_cast<std::size_t>(max_mult + 1));
      c /= static_cast<std::size_t>(max_mult + 1);
    }
    if (!rooted(g).connected()) continue;
    if (seen.insert(canonical(g)).second) out.push_back(g);
  }
  return out;
}

void check_graph(const Graph& g) {
  auto rg = rooted(g);
  auto lat = graph_lattice(rg);
  std::size_t k = g.n - 1;  // non-root vertices 1..n-1 map to coordinates 0..n-2
  std::set<oracle::Vec> predicted;
  std::int64_t max_norm = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<bool> in_t(g.n, false);
    oracle::Vec t(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) {
        in_t[i + 1] = true;
        t[i] = 1;
      }
    std::vector<bool> out_t(g.n);
    for (std::size_t v = 0; v < g.n; ++v) out_t[v] = !in_t[v];
    bool expect = rg.induces_connected(in_t) && rg.induces_connected(out_t);
    max_norm = std::max(max_norm, lat.norm(t));
    ASSERT_EQ(irreducible(lat, t, {std::max<std::int64_t>(12, lat.norm(t))}), expect);
    if (expect) {
      predicted.insert(t);
      oracle::Vec neg(t);
      for (auto& x : neg) x = -x;
      predicted.insert(neg);
    }
  }
  // Every vector up to the largest [T] norm: irreducible exactly when predicted.
  auto vectors = oracle::short_vectors(lat.gram(), max_norm);
  std::sort(vectors.begin(), vectors.end(),
            [&](const auto& a, const auto& b) { return oracle::pair(lat.gram(), a, a) < oracle::pair(lat.gram(), b, b); });
  for (const auto& x : vectors) {
    bool irr = !oracle::reducible(lat.gram(), x, vectors);
    ASSERT_EQ(irr, predicted.count(x) == 1);
  }
}

}  // namespace

TEST(GraphLattice, IrreducibleElementsAreConnectedCuts) {
  std::size_t graphs = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    for (const auto& g : rooted_graphs(n, 1)) {
      check_graph(g);
      ++graphs;
      if (HasFatalFailure()) return;
    }
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    for (const auto& g : rooted_graphs(n, 2)) {
      check_graph(g);
      ++graphs;
      if (HasFatalFailure()) return;
    }
  }
  ASSERT_GT(graphs, 500u);
}
