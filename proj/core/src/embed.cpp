#include "lensembed/embed.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "enumerator.hpp"
#include "lensembed/arith.hpp"
#include "lensembed/contfrac.hpp"

namespace lensembed {

BudgetExceeded::BudgetExceeded(std::uint64_t nodes)
    : ResourceError("search node budget exhausted after " + std::to_string(nodes) + " nodes"), nodes_(nodes) {}

HomologyClass homology_class_k(const std::vector<SparseVec>& basis, const Changemaker& sigma, std::int64_t p,
                               std::int64_t q) {
  auto terms = hj_terms(p, q);
  if (terms.size() != basis.size()) throw DomainError("basis length does not match the expansion of p/q");
  auto num = numerators(terms);
  const auto& s = sigma.entries();
  std::optional<std::int64_t> raw;
  for (std::size_t c = 0; c < s.size(); ++c) {
    if (s[c] != 1) continue;
    std::int64_t k = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) k = mod(k + mul_mod(num[i + 1], basis[i].at(c), p), p);
    if (!raw) {
      raw = k;
    } else if (*raw != k) {
      throw std::logic_error("unit coordinates of sigma give different homology classes");
    }
  }
  if (!raw) throw DomainError("sigma has no unit coordinate");
  HomologyClass h;
  h.raw = *raw;
  std::int64_t minus_sq = mod(-mul_mod(h.raw, h.raw, p), p);
  std::int64_t q_mod = mod(q, p);
  if (minus_sq == q_mod) {
    h.k = h.raw;
  } else if (minus_sq == mod(inverse_mod(q, p), p)) {
    h.k = inverse_mod(h.raw, p);
  } else {
    throw std::logic_error("-k^2 matches neither q nor its inverse mod p");
  }
  h.orbit = canonical_k_orbit(p, h.k);
  return h;
}

bool embedding_valid(const Embedding& e) {
  auto terms = hj_terms(e.p, e.q);
  if (terms.size() != e.basis.size() || e.sigma.size() != e.frame_size) return false;
  if (e.sigma.norm() != e.p) return false;
  auto gram = tridiagonal_gram(terms);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (e.basis[i].dot(e.sigma.entries()) != 0) return false;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (e.basis[i].dot(e.basis[j]) != gram[i][j]) return false;
    }
  }
  if (2 * e.genus != e.p - e.sigma.one_norm()) return false;
  auto h = homology_class_k(e.basis, e.sigma, e.p, e.q);
  return h == e.k && mod(-mul_mod(e.k.k, e.k.k, e.p), e.p) == e.q;
}

namespace {

using detail::Candidate;
using detail::Columns;
using detail::NodeCounter;
using detail::Row;

// Partitions of `total` into at most `parts` squares with nonincreasing positive roots.
void square_partitions(std::int64_t total, std::size_t parts, std::int64_t max_root, std::vector<std::int64_t>& cur,
                       std::vector<std::vector<std::int64_t>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  if (parts == 0) return;
  for (std::int64_t r = std::min(max_root, isqrt(total)); r >= 1; --r) {
    if (static_cast<std::int64_t>(parts) * r * r < total) break;
    cur.push_back(r);
    square_partitions(total - r * r, parts - 1, r, cur, out);
    cur.pop_back();
  }
}

class EmbeddingSearch {
 public:
  EmbeddingSearch(std::int64_t p, std::int64_t q, SearchOptions opts)
      : p_(p), q_(q), terms_(hj_terms(p, q)), n_(terms_.size()), frame_(n_ + 1), opts_(opts) {
    counter_.budget = opts.node_budget;
  }

  std::vector<Embedding> run() {
    place(0, {}, {});
    return std::move(found_);
  }

  std::uint64_t nodes() const { return counter_.nodes; }

 private:
  using Kernel = std::vector<IntVec>;

  // Integer kernel of the placed rows inside Z^{used_after}. Fails when the new row pairs
  // with the previous kernel in a nonunit gcd (need_unit) or a coordinate is forced to zero.
  bool update_kernel(const Kernel& prev, std::size_t used_before, std::size_t used_after,
                     const std::vector<std::pair<std::size_t, std::int64_t>>& x, bool need_unit, Kernel& out) const {
    Kernel m;
    m.reserve(prev.size() + used_after - used_before);
    for (const auto& b : prev) {
      IntVec v(used_after, 0);
      std::copy(b.begin(), b.end(), v.begin());
      m.push_back(std::move(v));
    }
    for (std::size_t c = used_before; c < used_after; ++c) {
      IntVec v(used_after, 0);
      v[c] = 1;
      m.push_back(std::move(v));
    }
    std::vector<std::int64_t> pi(m.size(), 0);
    for (std::size_t b = 0; b < m.size(); ++b) {
      std::int64_t s = 0;
      for (const auto& [c, val] : x) s = checked_add(s, checked_mul(m[b][c], val));
      pi[b] = s;
    }
    while (true) {
      std::size_t piv = detail::kNone;
      std::size_t nonzero = 0;
      for (std::size_t b = 0; b < m.size(); ++b) {
        if (pi[b] == 0) continue;
        ++nonzero;
        if (piv == detail::kNone || std::abs(pi[b]) < std::abs(pi[piv])) piv = b;
      }
      if (nonzero <= 1) {
        std::int64_t g = piv == detail::kNone ? 0 : std::abs(pi[piv]);
        if (need_unit && g != 1) return false;
        out.clear();
        for (std::size_t b = 0; b < m.size(); ++b) {
          if (b != piv) out.push_back(std::move(m[b]));
        }
        break;
      }
      for (std::size_t b = 0; b < m.size(); ++b) {
        if (b == piv || pi[b] == 0) continue;
        std::int64_t t = pi[b] / pi[piv];
        if (t == 0) continue;
        for (std::size_t c = 0; c < used_after; ++c) {
          if (m[piv][c] != 0) m[b][c] = checked_add(m[b][c], -checked_mul(t, m[piv][c]));
        }
        pi[b] -= t * pi[piv];
      }
    }
    for (std::size_t c = 0; c < used_after; ++c) {
      bool any = std::any_of(out.begin(), out.end(), [c](const IntVec& b) { return b[c] != 0; });
      if (!any) return false;
    }
    return true;
  }

  void place(std::size_t i, const Kernel& kernel, const std::vector<std::size_t>& classes) {
    if (stop_) return;
    counter_.tick();
    std::size_t used = classes.size();
    std::vector<std::int64_t> targets(rows_.size(), 0);
    if (i > 0) targets[i - 1] = -1;
    auto chain = detail::chain_from_classes(classes);
    detail::VectorEnumerator en(used, rows_, columns_, targets, chain, counter_);
    auto candidates = en.run(terms_[i], false);
    for (const auto& cand : candidates) {
      std::int64_t rest = terms_[i] - cand.norm;
      std::vector<std::vector<std::int64_t>> fresh;
      std::vector<std::int64_t> cur;
      square_partitions(rest, frame_ - used, rest, cur, fresh);
      for (const auto& f : fresh) {
        if (stop_) return;
        auto x = cand.entries;
        for (std::size_t t = 0; t < f.size(); ++t) x.emplace_back(used + t, f[t]);
        std::size_t used_after = used + f.size();
        bool last = i + 1 == n_;
        if (last && used_after != frame_) continue;
        Kernel next;
        if (!update_kernel(kernel, used, used_after, x, !last, next)) continue;
        if (last) {
          if (next.size() == 1) finish(x, next[0]);
          continue;
        }
        std::vector<std::size_t> widened = classes;
        for (std::size_t t = used; t < used_after; ++t) widened.push_back(detail::kNone - 1);
        auto refined = detail::refine_classes(widened, x);
        rows_.emplace_back(x);
        detail::add_row_to_columns(columns_, rows_.back(), rows_.size() - 1);
        place(i + 1, next, refined);
        detail::remove_row_from_columns(columns_, rows_.back());
        rows_.pop_back();
      }
    }
  }

  void finish(const std::vector<std::pair<std::size_t, std::int64_t>>& last_row, IntVec sigma) {
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> xs;
    for (const auto& r : rows_) xs.push_back(r.entries);
    xs.push_back(last_row);
    std::vector<std::int64_t> sign(frame_, 1);
    for (std::size_t c = 0; c < frame_; ++c) {
      if (sigma[c] < 0) {
        sign[c] = -1;
        sigma[c] = -sigma[c];
      }
    }
    std::vector<std::size_t> order(frame_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sigma[a] < sigma[b]; });
    std::vector<std::size_t> where(frame_);
    std::vector<std::int64_t> sorted(frame_);
    for (std::size_t pos = 0; pos < frame_; ++pos) {
      where[order[pos]] = pos;
      sorted[pos] = sigma[order[pos]];
    }
    if (!is_changemaker(sorted)) return;
    Changemaker cm(sorted);
    if (cm.norm() != p_) return;
    Embedding e;
    e.p = p_;
    e.q = q_;
    e.frame_size = frame_;
    for (const auto& x : xs) {
      std::vector<SparseVec::Entry> ent;
      for (const auto& [c, v] : x) ent.emplace_back(where[c], sign[c] * v);
      e.basis.emplace_back(std::move(ent));
    }
    e.sigma = cm;
    e.k = homology_class_k(e.basis, e.sigma, p_, q_);
    e.genus = (p_ - cm.one_norm()) / 2;
    auto key = std::pair{cm.entries(), e.k.orbit.representative};
    if (!seen_.insert(key).second) return;
    found_.push_back(std::move(e));
    if (opts_.mode == SearchMode::first) stop_ = true;
  }

  std::int64_t p_, q_;
  std::vector<std::int64_t> terms_;
  std::size_t n_, frame_;
  SearchOptions opts_;
  NodeCounter counter_;
  std::vector<Row> rows_;
  Columns columns_;
  bool stop_ = false;
  std::set<std::pair<std::vector<std::int64_t>, std::int64_t>> seen_;
  std::vector<Embedding> found_;
};

}  // namespace

namespace {

Embedding reversed_embedding(const Embedding& e, std::int64_t q) {
  Embedding r = e;
  r.q = q;
  std::reverse(r.basis.begin(), r.basis.end());
  r.k = homology_class_k(r.basis, r.sigma, r.p, q);
  return r;
}

}  // namespace

// The cost of the search depends heavily on which end of the string is placed first, and the
// reversed string describes the same lattice. Both orientations run with growing budgets.
std::vector<Embedding> find_embeddings(std::int64_t p, std::int64_t q, SearchOptions opts, SearchStats* stats) {
  if (p < 2 || q < 1 || q >= p) throw DomainError("find_embeddings: need 1 <= q < p");
  std::int64_t qr = reverse_orbit(p, q);
  std::vector<std::int64_t> directions{q};
  if (qr != q) directions.push_back(qr);
  std::uint64_t spent = 0;
  std::uint64_t step = 20'000;
  while (true) {
    for (std::int64_t dir : directions) {
      std::uint64_t left = opts.node_budget > spent ? opts.node_budget - spent : 0;
      SearchOptions attempt = opts;
      attempt.node_budget = std::min(step, left);
      EmbeddingSearch search(p, dir, attempt);
      std::vector<Embedding> out;
      try {
        out = search.run();
      } catch (const BudgetExceeded&) {
        spent += search.nodes();
        if (spent >= opts.node_budget) {
          if (stats) stats->nodes = spent;
          throw BudgetExceeded(spent);
        }
        continue;
      }
      spent += search.nodes();
      if (stats) stats->nodes = spent;
      if (dir != q) {
        for (auto& e : out) e = reversed_embedding(e, q);
      }
      std::sort(out.begin(), out.end(), [](const Embedding& a, const Embedding& b) {
        return std::pair{a.sigma, a.k.orbit} < std::pair{b.sigma, b.k.orbit};
      });
      return out;
    }
    step *= 4;
  }
}

}  // namespace lensembed
