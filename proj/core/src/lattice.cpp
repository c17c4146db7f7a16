#include "lensembed/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

namespace lensembed {

namespace {

// Bareiss elimination; returns the successive leading principal minors.
std::vector<BigInt> leading_minors(const IntMatrix& m) {
  std::size_t n = m.size();
  std::vector<std::vector<BigInt>> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw DomainError("matrix is not square");
    a[i].assign(m[i].begin(), m[i].end());
  }
  std::vector<BigInt> minors;
  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    minors.push_back(a[k][k]);
    if (a[k][k] == 0) {
      // Pivot vanished: remaining minors are not needed by callers once one is zero.
      minors.resize(n, 0);
      return minors;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return minors;
}

}  // namespace

BigInt determinant(const IntMatrix& m) {
  if (m.empty()) return 1;
  std::size_t n = m.size();
  std::vector<std::vector<BigInt>> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw DomainError("matrix is not square");
    a[i].assign(m[i].begin(), m[i].end());
  }
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

GramLattice::GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
  std::size_t n = gram_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (gram_[i].size() != n) throw DomainError("Gram matrix is not square");
    for (std::size_t j = 0; j < i; ++j) {
      if (gram_[i][j] != gram_[j][i]) throw DomainError("Gram matrix is not symmetric");
    }
  }
  for (const auto& minor : leading_minors(gram_)) {
    if (minor <= 0) throw DomainError("Gram matrix is not positive definite");
  }
}

std::int64_t GramLattice::pair(std::span<const std::int64_t> u, std::span<const std::int64_t> v) const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < gram_.size(); ++i) {
    if (u[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < gram_.size(); ++j) row += gram_[i][j] * v[j];
    total += u[i] * row;
  }
  return total;
}

SparseVec::SparseVec(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  for (const auto& [i, x] : entries) {
    if (x == 0) continue;
    if (!entries_.empty() && entries_.back().first == i) {
      entries_.back().second += x;
      if (entries_.back().second == 0) entries_.pop_back();
    } else {
      entries_.emplace_back(i, x);
    }
  }
}

SparseVec SparseVec::from_dense(std::span<const std::int64_t> dense) {
  std::vector<Entry> e;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) e.emplace_back(i, dense[i]);
  }
  return SparseVec(std::move(e));
}

std::int64_t SparseVec::at(std::size_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{i, std::numeric_limits<std::int64_t>::min()});
  return it != entries_.end() && it->first == i ? it->second : 0;
}

std::int64_t SparseVec::norm() const {
  std::int64_t s = 0;
  for (const auto& [i, x] : entries_) s += x * x;
  return s;
}

std::int64_t SparseVec::dot(const SparseVec& other) const {
  std::int64_t s = 0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      s += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return s;
}

std::int64_t SparseVec::dot(std::span<const std::int64_t> dense) const {
  std::int64_t s = 0;
  for (const auto& [i, x] : entries_) s += x * dense[i];
  return s;
}

std::vector<std::size_t> SparseVec::support() const {
  std::vector<std::size_t> s;
  for (const auto& [i, x] : entries_) s.push_back(i);
  return s;
}

std::vector<std::size_t> SparseVec::support_plus() const {
  std::vector<std::size_t> s;
  for (const auto& [i, x] : entries_) {
    if (x > 0) s.push_back(i);
  }
  return s;
}

std::vector<std::size_t> SparseVec::support_minus() const {
  std::vector<std::size_t> s;
  for (const auto& [i, x] : entries_) {
    if (x < 0) s.push_back(i);
  }
  return s;
}

IntVec SparseVec::to_dense(std::size_t size) const {
  IntVec d(size, 0);
  for (const auto& [i, x] : entries_) d.at(i) = x;
  return d;
}

SparseVec SparseVec::operator-() const {
  SparseVec r = *this;
  for (auto& e : r.entries_) e.second = -e.second;
  return r;
}

SparseVec SparseVec::operator+(const SparseVec& other) const {
  std::vector<Entry> e = entries_;
  e.insert(e.end(), other.entries_.begin(), other.entries_.end());
  return SparseVec(std::move(e));
}

IntMatrix tridiagonal_gram(std::span<const std::int64_t> norms) {
  std::size_t n = norms.size();
  IntMatrix g(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    g[i][i] = norms[i];
    if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = -1;
  }
  return g;
}

LinearLatticeDesc linear_lattice(std::int64_t p, std::int64_t q) {
  LinearLatticeDesc d;
  d.p = p;
  d.q = q;
  d.norms = hj_terms(p, q);
  d.lattice = GramLattice(tridiagonal_gram(d.norms));
  return d;
}

RootedGraph RootedGraph::empty(std::size_t vertices, std::size_t root) {
  if (root >= vertices) throw DomainError("root outside the vertex set");
  RootedGraph g;
  g.vertices = vertices;
  g.root = root;
  g.multiplicity.assign(vertices, std::vector<std::int64_t>(vertices, 0));
  return g;
}

void RootedGraph::add_edge(std::size_t u, std::size_t v, std::int64_t count) {
  if (u == v) throw DomainError("graph lattices require loopless graphs");
  if (count < 0) throw DomainError("negative edge multiplicity");
  multiplicity.at(u).at(v) += count;
  multiplicity.at(v).at(u) += count;
}

bool RootedGraph::induces_connected(const std::vector<bool>& subset) const {
  std::size_t start = vertices;
  std::size_t size = 0;
  for (std::size_t v = 0; v < vertices; ++v) {
    if (subset[v]) {
      ++size;
      if (start == vertices) start = v;
    }
  }
  if (size == 0) return true;
  std::vector<bool> seen(vertices, false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < vertices; ++w) {
      if (subset[w] && !seen[w] && multiplicity[u][w] > 0) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == size;
}

bool RootedGraph::connected() const { return induces_connected(std::vector<bool>(vertices, true)); }

GramLattice graph_lattice(const RootedGraph& g) {
  if (!g.connected()) throw DomainError("graph lattice requires a connected graph");
  IntMatrix gram;
  std::vector<std::size_t> index;
  for (std::size_t v = 0; v < g.vertices; ++v) {
    if (v != g.root) index.push_back(v);
  }
  gram.assign(index.size(), IntVec(index.size(), 0));
  for (std::size_t a = 0; a < index.size(); ++a) {
    std::int64_t degree = 0;
    for (std::size_t w = 0; w < g.vertices; ++w) degree += g.multiplicity[index[a]][w];
    gram[a][a] = degree;
    for (std::size_t b = 0; b < index.size(); ++b) {
      if (a != b) gram[a][b] = -g.multiplicity[index[a]][index[b]];
    }
  }
  return GramLattice(std::move(gram));
}

RootedGraph linear_graph(std::span<const std::int64_t> norms) {
  std::size_t n = norms.size();
  auto g = RootedGraph::empty(n + 1, n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t path_degree = (i > 0 ? 1 : 0) + (i + 1 < n ? 1 : 0);
    g.add_edge(i, n, norms[i] - path_degree);
  }
  return g;
}

IntVec interval_class(const LinearLatticeDesc& desc, std::size_t i, std::size_t j) {
  std::size_t n = desc.norms.size();
  if (i < 1 || i > j || j > n) throw std::out_of_range("interval outside 1..n");
  IntVec v(n, 0);
  for (std::size_t k = i; k <= j; ++k) v[k - 1] = 1;
  return v;
}

void for_each_short_vector(const GramLattice& lat, std::int64_t max_norm,
                           const std::function<bool(const IntVec&, std::int64_t)>& visit) {
  const std::size_t n = lat.rank();
  if (n == 0 || max_norm <= 0) return;
  const auto& g = lat.gram();
  std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q[i][j] = static_cast<double>(g[i][j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
  }
  IntVec x(n, 0);
  const double bound = static_cast<double>(max_norm) + 1e-6;
  bool stop = false;
  std::function<void(std::size_t, double)> descend = [&](std::size_t level, double used) {
    double center = 0.0;
    for (std::size_t j = level + 1; j < n; ++j) center -= q[level][j] * static_cast<double>(x[j]);
    double room = (bound - used) / q[level][level];
    if (room < 0) return;
    double radius = std::sqrt(room);
    auto lo = static_cast<std::int64_t>(std::ceil(center - radius - 1e-9));
    auto hi = static_cast<std::int64_t>(std::floor(center + radius + 1e-9));
    for (std::int64_t v = lo; v <= hi && !stop; ++v) {
      double d = static_cast<double>(v) - center;
      double next = used + q[level][level] * d * d;
      if (next > bound) continue;
      x[level] = v;
      if (level == 0) {
        bool nonzero = std::any_of(x.begin(), x.end(), [](std::int64_t c) { return c != 0; });
        if (!nonzero) continue;
        std::int64_t exact = lat.norm(x);
        if (exact <= max_norm && !visit(x, exact)) stop = true;
      } else {
        descend(level - 1, next);
      }
    }
    x[level] = 0;
  };
  descend(n - 1, 0.0);
}

namespace {

void check_nonzero_and_cap(std::int64_t norm, const OracleOptions& opts) {
  if (norm == 0) throw DomainError("oracle requires a nonzero vector");
  if (norm > opts.norm_cap) {
    throw OracleBoundExceeded("vector norm " + std::to_string(norm) + " exceeds oracle cap " +
                              std::to_string(opts.norm_cap));
  }
}

}  // namespace

bool irreducible(const GramLattice& lat, std::span<const std::int64_t> v, OracleOptions opts) {
  std::int64_t nv = lat.norm(v);
  check_nonzero_and_cap(nv, opts);
  bool found = false;
  for_each_short_vector(lat, nv - 1, [&](const IntVec& y, std::int64_t ny) {
    if (lat.pair(y, v) >= ny) found = true;
    return !found;
  });
  return !found;
}

bool breakable(const GramLattice& lat, std::span<const std::int64_t> v, OracleOptions opts) {
  std::int64_t nv = lat.norm(v);
  check_nonzero_and_cap(nv, opts);
  bool found = false;
  for_each_short_vector(lat, nv - 1, [&](const IntVec& x, std::int64_t nx) {
    if (nx >= 3 && lat.pair(x, v) == nx - 1) found = true;
    return !found;
  });
  return found;
}

namespace {

// Coordinates off the support of v, grouped by equal sigma value. Decides whether some
// integer vector z on them has <z, sigma> = target and |z| = cost exactly.
class OffSupportSolver {
 public:
  OffSupportSolver(std::span<const std::int64_t> sigma, const SparseVec& v, std::int64_t max_cost) {
    std::map<std::int64_t, std::int64_t, std::greater<>> counts;
    for (std::size_t c = 0; c < sigma.size(); ++c) {
      if (v.at(c) == 0) ++counts[sigma[c]];
    }
    for (const auto& [value, count] : counts) {
      classes_.push_back({value, moves(std::min(count, max_cost), max_cost)});
    }
    suffix_max_.assign(classes_.size() + 1, 0);
    for (std::size_t i = classes_.size(); i-- > 0;) {
      suffix_max_[i] = std::max(suffix_max_[i + 1], classes_[i].value);
    }
  }

  bool reachable(std::int64_t target, std::int64_t cost) { return solve(0, target, cost); }

 private:
  struct Move {
    std::int64_t sum;
    std::int64_t cost;
  };
  struct Class {
    std::int64_t value;
    std::vector<Move> options;
  };

  // All (sum, cost) pairs of multisets of at most `slots` nonzero integers with cost <= max_cost.
  static std::vector<Move> moves(std::int64_t slots, std::int64_t max_cost) {
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    std::function<void(std::int64_t, std::int64_t, std::int64_t, std::int64_t)> rec =
        [&](std::int64_t left, std::int64_t min_abs, std::int64_t sum, std::int64_t cost) {
          seen.insert({sum, cost});
          if (left == 0) return;
          for (std::int64_t a = min_abs; a * a + cost <= max_cost; ++a) {
            rec(left - 1, a, sum + a, cost + a * a);
            rec(left - 1, a, sum - a, cost + a * a);
          }
        };
    rec(slots, 1, 0, 0);
    std::vector<Move> out;
    for (const auto& [s, c] : seen) {
      if (c > 0) out.push_back({s, c});
    }
    return out;
  }

  bool solve(std::size_t i, std::int64_t target, std::int64_t cost) {
    if (cost == 0) return target == 0;
    if (i == classes_.size() || cost < 0) return false;
    if (std::abs(target) > suffix_max_[i] * cost) return false;
    auto key = std::tuple{i, target, cost};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = solve(i + 1, target, cost);
    for (const auto& m : classes_[i].options) {
      if (ok) break;
      if (m.cost <= cost) ok = solve(i + 1, target - m.sum * classes_[i].value, cost - m.cost);
    }
    memo_[key] = ok;
    return ok;
  }

  std::vector<Class> classes_;
  std::vector<std::int64_t> suffix_max_;
  std::map<std::tuple<std::size_t, std::int64_t, std::int64_t>, bool> memo_;
};

// Enumerates y restricted to supp(v), tracking slack = sum(y_c v_c - y_c^2) and the
// partial pairing with sigma; calls accept(y_in, slack, sigma_pairing, norm) at leaves.
template <typename Accept>
bool search_on_support(std::span<const std::int64_t> sigma, const SparseVec& v, std::int64_t min_slack,
                       Accept&& accept) {
  const auto& e = v.entries();
  std::size_t k = e.size();
  std::vector<std::int64_t> gain_suffix(k + 1, 0);
  for (std::size_t i = k; i-- > 0;) gain_suffix[i] = gain_suffix[i + 1] + e[i].second * e[i].second / 4;
  std::vector<std::int64_t> y(k, 0);
  std::function<bool(std::size_t, std::int64_t, std::int64_t, std::int64_t)> rec =
      [&](std::size_t i, std::int64_t slack, std::int64_t pairing, std::int64_t norm) -> bool {
    if (i == k) return accept(y, slack, pairing, norm);
    std::int64_t vc = e[i].second;
    std::int64_t reach = std::abs(vc) + gain_suffix[i + 1] + std::abs(slack) + std::abs(min_slack) + 2;
    for (std::int64_t val = -reach; val <= reach; ++val) {
      std::int64_t s = slack + val * vc - val * val;
      if (s + gain_suffix[i + 1] < min_slack) continue;
      y[i] = val;
      if (rec(i + 1, s, pairing + val * sigma[e[i].first], norm + val * val)) return true;
    }
    y[i] = 0;
    return false;
  };
  return rec(0, 0, 0, 0);
}

}  // namespace

bool irreducible_in_complement(std::span<const std::int64_t> sigma, const SparseVec& v, OracleOptions opts) {
  std::int64_t nv = v.norm();
  check_nonzero_and_cap(nv, opts);
  if (v.dot(sigma) != 0) throw DomainError("vector is not orthogonal to sigma");
  OffSupportSolver off(sigma, v, nv);
  std::vector<std::int64_t> ventries;
  for (const auto& [c, x] : v.entries()) ventries.push_back(x);
  bool reducible = search_on_support(sigma, v, 0, [&](const std::vector<std::int64_t>& y, std::int64_t slack,
                                                      std::int64_t pairing, std::int64_t) {
    bool zero = std::all_of(y.begin(), y.end(), [](std::int64_t c) { return c == 0; });
    if (zero || y == ventries) return false;
    for (std::int64_t cost = 0; cost <= slack; ++cost) {
      if (off.reachable(-pairing, cost)) return true;
    }
    return false;
  });
  return !reducible;
}

bool breakable_in_complement(std::span<const std::int64_t> sigma, const SparseVec& v, OracleOptions opts) {
  std::int64_t nv = v.norm();
  check_nonzero_and_cap(nv, opts);
  if (v.dot(sigma) != 0) throw DomainError("vector is not orthogonal to sigma");
  OffSupportSolver off(sigma, v, nv + 2);
  return search_on_support(sigma, v, -1, [&](const std::vector<std::int64_t>&, std::int64_t slack,
                                             std::int64_t pairing, std::int64_t norm_in) {
    std::int64_t cost = slack + 1;
    std::int64_t total = norm_in + cost;
    if (total < 3 || total > nv - 1) return false;
    return off.reachable(-pairing, cost);
  });
}

bool linear_iso(std::int64_t p, std::int64_t q, std::int64_t p2, std::int64_t q2) {
  if (q <= 0 || q >= p || std::gcd(p, q) != 1) throw DomainError("invalid lens pair");
  if (q2 <= 0 || q2 >= p2 || std::gcd(p2, q2) != 1) throw DomainError("invalid lens pair");
  if (p != p2) return false;
  return q == q2 || mul_mod(q, q2, p) == 1;
}

}  // namespace lensembed
