#include "lensembed/changemaker.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace lensembed {

bool is_changemaker(std::span<const std::int64_t> v) {
  if (v.empty() || v[0] != 1) return false;
  std::int64_t prefix = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 1) return false;
    if (i > 0 && v[i] < v[i - 1]) return false;
    if (v[i] > prefix + 1) return false;
    prefix += v[i];
  }
  return true;
}

Changemaker::Changemaker(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
  if (!is_changemaker(entries_)) throw DomainError("not a changemaker vector");
}

std::int64_t Changemaker::norm() const {
  std::int64_t s = 0;
  for (auto x : entries_) s = checked_add(s, checked_mul(x, x));
  return s;
}

std::int64_t Changemaker::one_norm() const { return std::accumulate(entries_.begin(), entries_.end(), std::int64_t{0}); }

std::string Changemaker::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) os << (i ? "," : "") << entries_[i];
  os << ')';
  return os.str();
}

Changemaker parse_changemaker(const std::string& text) {
  std::vector<std::int64_t> v;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c) || c == '(' || c == ')'; }),
                token.end());
    if (token.empty()) throw DomainError("empty entry in changemaker list");
    std::size_t used = 0;
    long long x = std::stoll(token, &used);
    if (used != token.size()) throw DomainError("malformed changemaker entry: " + token);
    v.push_back(x);
  }
  return Changemaker(std::move(v));
}

std::vector<Changemaker> enumerate_changemakers(std::int64_t p, EnumerationOptions opts) {
  if (p < 1) throw DomainError("norm must be positive");
  if (p > opts.cap) {
    throw ResourceError("changemaker enumeration above the cap " + std::to_string(opts.cap) + " (p=" +
                        std::to_string(p) + ")");
  }
  std::vector<Changemaker> out;
  std::vector<std::int64_t> cur{1};
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t remaining, std::int64_t prefix) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (std::int64_t v = cur.back(); v <= prefix + 1 && v * v <= remaining; ++v) {
      cur.push_back(v);
      rec(remaining - v * v, prefix + v);
      cur.pop_back();
    }
  };
  rec(p - 1, 1);
  return out;
}

std::string to_string(BasisClass c) {
  switch (c) {
    case BasisClass::tight: return "tight";
    case BasisClass::gappy: return "gappy";
    case BasisClass::just_right: return "just-right";
  }
  return "?";
}

StandardBasis standard_basis(const Changemaker& sigma) {
  StandardBasis sb;
  sb.sigma = sigma;
  const auto& s = sigma.entries();
  std::int64_t prefix = s.empty() ? 0 : s[0];
  for (std::size_t j = 1; j < s.size(); ++j) {
    StandardVector sv;
    std::vector<SparseVec::Entry> e{{j, -1}};
    if (s[j] == prefix + 1) {
      sv.cls = BasisClass::tight;
      e.emplace_back(0, 2);
      for (std::size_t i = 1; i < j; ++i) e.emplace_back(i, 1);
    } else {
      // Greedy from the top index realizes the binary-maximal subset, since every prefix
      // of a changemaker makes change for any amount up to its sum.
      std::int64_t rem = s[j];
      for (std::size_t i = j; i-- > 0 && rem > 0;) {
        if (s[i] <= rem) {
          sv.subset.push_back(i);
          rem -= s[i];
        }
      }
      std::reverse(sv.subset.begin(), sv.subset.end());
      for (auto i : sv.subset) e.emplace_back(i, 1);
      for (auto i : sv.subset) {
        bool next_in = std::binary_search(sv.subset.begin(), sv.subset.end(), i + 1);
        if (!next_in && i + 1 != j) sv.gappy_indices.push_back(i);
      }
      sv.cls = sv.gappy_indices.empty() ? BasisClass::just_right : BasisClass::gappy;
    }
    sv.vec = SparseVec(std::move(e));
    sb.vectors.push_back(std::move(sv));
    prefix += s[j];
  }
  std::size_t n = sb.vectors.size();
  sb.gram.assign(n, IntVec(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) sb.gram[a][b] = sb.vectors[a].vec.dot(sb.vectors[b].vec);
  }
  return sb;
}

namespace {

using Adjacency = std::vector<std::vector<bool>>;

std::vector<std::size_t> component_labels(const Adjacency& adj, const std::vector<bool>& alive) {
  std::size_t n = adj.size();
  std::vector<std::size_t> label(n, n);
  std::size_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!alive[s] || label[s] != n) continue;
    std::vector<std::size_t> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w) {
        if (alive[w] && adj[u][w] && label[w] == n) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

void find_claws_and_triples(const StandardBasis& sb, IntersectionGraphReport& r) {
  const auto& g = r.intersection_graph;
  std::size_t n = g.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::size_t> nb;
    for (std::size_t w = 0; w < n; ++w) {
      if (w != c && g[c][w]) nb.push_back(w);
    }
    for (std::size_t a = 0; a < nb.size(); ++a) {
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        if (g[nb[a]][nb[b]]) continue;
        for (std::size_t d = b + 1; d < nb.size(); ++d) {
          if (!g[nb[a]][nb[d]] && !g[nb[b]][nb[d]]) r.claws.push_back({c, nb[a], nb[b], nb[d]});
        }
      }
    }
  }
  std::vector<bool> alive(n);
  for (std::size_t i = 0; i < n; ++i) alive[i] = !r.breakable[i];
  auto comp = component_labels(g, alive);
  std::vector<std::size_t> heavy;
  for (std::size_t i = 0; i < n; ++i) {
    if (alive[i] && sb.vectors[i].vec.norm() >= 3) heavy.push_back(i);
  }
  for (std::size_t a = 0; a < heavy.size(); ++a) {
    for (std::size_t b = a + 1; b < heavy.size(); ++b) {
      if (comp[heavy[a]] != comp[heavy[b]]) continue;
      for (std::size_t c = b + 1; c < heavy.size(); ++c) {
        if (comp[heavy[a]] != comp[heavy[c]]) continue;
        std::array<std::size_t, 3> t{heavy[a], heavy[b], heavy[c]};
        bool separated = false;
        for (std::size_t k = 0; k < 3 && !separated; ++k) {
          auto without = alive;
          without[t[k]] = false;
          auto lab = component_labels(g, without);
          if (lab[t[(k + 1) % 3]] != lab[t[(k + 2) % 3]]) separated = true;
        }
        if (!separated) r.heavy_triples.push_back(t);
      }
    }
  }
}

IntersectionGraphReport pairing_only(const StandardBasis& sb) {
  IntersectionGraphReport r;
  std::size_t n = sb.vectors.size();
  r.pairing_graph.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) r.pairing_graph[a][b] = a != b && sb.gram[a][b] != 0;
  }
  return r;
}

}  // namespace

IntersectionGraphReport intersection_graph_report(const StandardBasis& sb) {
  auto r = pairing_only(sb);
  std::size_t n = sb.vectors.size();
  r.breakable.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = sb.vectors[i].vec;
    r.breakable[i] = breakable_in_complement(sb.sigma.entries(), v, {std::max<std::int64_t>(12, v.norm())});
  }
  r.intersection_graph = r.pairing_graph;
  for (std::size_t t = 0; t < n; ++t) {
    if (!r.breakable[t]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == t) continue;
      std::int64_t x = sb.gram[t][j];
      bool edge = x == 1 || x == -1 || x == sb.gram[j][j] - 1;
      r.intersection_graph[t][j] = r.intersection_graph[j][t] = edge;
    }
  }
  find_claws_and_triples(sb, r);
  return r;
}

IntersectionGraphReport intersection_graph_report(const StandardBasis& sb, const std::vector<IntervalForm>& intervals,
                                                  std::span<const std::int64_t> vertex_norms) {
  std::size_t n = sb.vectors.size();
  if (intervals.size() != n) throw DomainError("one interval per standard vector is required");
  auto r = pairing_only(sb);
  r.from_intervals = true;
  r.breakable.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t heavy = 0;
    for (std::size_t k = intervals[i].first; k <= intervals[i].last; ++k) heavy += vertex_norms[k - 1] >= 3;
    r.breakable[i] = heavy >= 2;
  }
  r.intersection_graph.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto& s = intervals[a];
      const auto& t = intervals[b];
      bool abut = s.first == t.first || s.last == t.last || s.last + 1 == t.first || t.last + 1 == s.first;
      r.intersection_graph[a][b] = abut;
    }
  }
  find_claws_and_triples(sb, r);
  return r;
}

std::int64_t WeightExpansion::norm() const {
  std::int64_t s = 0;
  for (auto x : entries) s = checked_add(s, checked_mul(x, x));
  return s;
}

std::int64_t WeightExpansion::one_norm() const { return std::accumulate(entries.begin(), entries.end(), std::int64_t{0}); }
std::int64_t WeightExpansion::width() const { return anchors[anchors.size() - 2]; }
std::int64_t WeightExpansion::height() const { return anchors.back(); }

WeightExpansion weight_expansion(std::span<const std::int64_t> multiplicities) {
  if (multiplicities.empty()) throw DomainError("weight expansion needs at least one multiplicity");
  WeightExpansion w;
  w.multiplicities.assign(multiplicities.begin(), multiplicities.end());
  w.anchors = {0, 1};
  for (auto m : multiplicities) {
    if (m < 1) throw DomainError("multiplicities must be positive");
    std::size_t k = w.anchors.size();
    w.entries.insert(w.entries.end(), static_cast<std::size_t>(m), w.anchors[k - 1]);
    w.anchors.push_back(checked_add(checked_mul(m, w.anchors[k - 1]), w.anchors[k - 2]));
  }
  return w;
}

std::optional<WeightExpansion> as_weight_expansion(std::span<const std::int64_t> sigma) {
  if (sigma.empty()) return std::nullopt;
  std::vector<std::int64_t> values, counts;
  for (auto x : sigma) {
    if (!values.empty() && values.back() == x) {
      ++counts.back();
    } else {
      values.push_back(x);
      counts.push_back(1);
    }
  }
  auto w = weight_expansion(counts);
  if (w.entries != std::vector<std::int64_t>(sigma.begin(), sigma.end())) return std::nullopt;
  return w;
}

bool is_weight_expansion(std::span<const std::int64_t> sigma) { return as_weight_expansion(sigma).has_value(); }

}  // namespace lensembed
