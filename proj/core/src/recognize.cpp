#include <algorithm>
#include <numeric>
#include <optional>

#include "enumerator.hpp"
#include "lensembed/arith.hpp"
#include "lensembed/contfrac.hpp"
#include "lensembed/embed.hpp"

namespace lensembed {

std::string to_string(LinearVerdict::Kind kind) {
  switch (kind) {
    case LinearVerdict::Kind::linear:
      return "Linear";
    case LinearVerdict::Kind::sum_of_two:
      return "SumOfTwo";
    case LinearVerdict::Kind::not_linear:
      return "NotLinear";
  }
  return "?";
}

namespace {

// Ranks of the A_r summands of the root system of a linear lattice: maximal runs of 2s.
std::vector<std::int64_t> linear_roots(const std::vector<std::int64_t>& terms) {
  std::vector<std::int64_t> out;
  std::int64_t run = 0;
  for (std::size_t i = 0; i <= terms.size(); ++i) {
    if (i < terms.size() && terms[i] == 2) {
      ++run;
    } else if (run > 0) {
      out.push_back(run);
      run = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

const std::vector<LinearCandidate>& LinearCatalog::candidates(std::int64_t p, std::size_t length) {
  static const std::vector<LinearCandidate> kEmpty;
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = by_p_.find(p);
  if (it == by_p_.end()) {
    std::map<std::size_t, std::vector<LinearCandidate>> groups;
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1 || reverse_orbit(p, q) < q) continue;
      LinearCandidate c;
      c.q = q;
      c.norms = hj_terms(p, q);
      c.roots = linear_roots(c.norms);
      groups[c.norms.size()].push_back(std::move(c));
    }
    it = by_p_.emplace(p, std::move(groups)).first;
  }
  auto g = it->second.find(length);
  return g == it->second.end() ? kEmpty : g->second;
}

namespace {

using detail::Columns;
using detail::NodeCounter;
using detail::Row;
using Entries = std::vector<std::pair<std::size_t, std::int64_t>>;

// Search for a vertex basis with prescribed norms inside the lattice cut out by `constraints`
// (all with target 0). Search coordinate c is frame coordinate frame_of[c].
class BasisSearch {
 public:
  BasisSearch(std::vector<std::int64_t> terms, const std::vector<Entries>& constraints,
              std::vector<std::size_t> classes, NodeCounter& counter)
      : terms_(std::move(terms)), classes_(std::move(classes)), counter_(counter) {
    for (const auto& e : constraints) {
      rows_.emplace_back(e);
      detail::add_row_to_columns(columns_, rows_.back(), rows_.size() - 1);
    }
    fixed_ = rows_.size();
  }

  std::optional<std::vector<Entries>> run() {
    if (place(0, classes_)) return found_;
    return std::nullopt;
  }

 private:
  // Each maximal run of r 2s among positions i+1.. is a path e_a - e_b, e_b - e_c, ... on r+1
  // coordinates of a single class, and distinct runs use disjoint coordinates.
  bool runs_fit(std::size_t i, const std::vector<std::size_t>& classes) const {
    std::vector<std::int64_t> demand;
    std::int64_t run = 0;
    for (std::size_t j = i + 1; j <= terms_.size(); ++j) {
      if (j < terms_.size() && terms_[j] == 2) {
        ++run;
      } else if (run > 0) {
        demand.push_back(run + 1);
        run = 0;
      }
    }
    if (demand.empty()) return true;
    std::map<std::size_t, std::int64_t> sizes;
    for (auto c : classes) ++sizes[c];
    std::vector<std::int64_t> cap;
    for (const auto& [id, s] : sizes)
      if (s >= 2) cap.push_back(s);
    std::sort(demand.rbegin(), demand.rend());
    std::sort(cap.rbegin(), cap.rend());
    cap.push_back(0);
    std::int64_t room = 0;
    for (std::size_t m = 0; m < cap.size(); ++m) {
      std::int64_t need = 0;
      for (auto d : demand)
        if (d > cap[m]) need += d;
      if (need > room) return false;
      room += cap[m];
    }
    return true;
  }

  bool place(std::size_t i, const std::vector<std::size_t>& classes) {
    counter_.tick();
    if (i < terms_.size() && !runs_fit(i, classes)) return false;
    if (i == terms_.size()) {
      for (std::size_t j = fixed_; j < rows_.size(); ++j) found_.push_back(rows_[j].entries);
      return true;
    }
    std::vector<std::int64_t> targets(rows_.size(), 0);
    if (i > 0) targets.back() = -1;
    auto chain = detail::chain_from_classes(classes);
    detail::VectorEnumerator en(classes.size(), rows_, columns_, targets, chain, counter_);
    auto cands = en.run(terms_[i], true);
    for (const auto& cand : cands) {
      auto refined = detail::refine_classes(classes, cand.entries);
      rows_.emplace_back(cand.entries);
      detail::add_row_to_columns(columns_, rows_.back(), rows_.size() - 1);
      bool ok = place(i + 1, refined);
      detail::remove_row_from_columns(columns_, rows_.back());
      rows_.pop_back();
      if (ok) return true;
    }
    return false;
  }

  std::vector<std::int64_t> terms_;
  std::vector<std::size_t> classes_;
  NodeCounter& counter_;
  std::vector<Row> rows_;
  Columns columns_;
  std::size_t fixed_ = 0;
  std::vector<Entries> found_;
};

struct Component {
  std::vector<std::size_t> members;  // indices into the standard basis
  std::int64_t disc = 0;
};

std::vector<Component> components(const StandardBasis& sb, std::int64_t sigma_norm) {
  std::size_t n = sb.vectors.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (sb.gram[i][j] != 0) parent[find(i)] = find(j);
  std::map<std::size_t, Component> by_root;
  for (std::size_t i = 0; i < n; ++i) by_root[find(i)].members.push_back(i);
  std::vector<Component> out;
  for (auto& [r, c] : by_root) out.push_back(std::move(c));
  // The discriminants multiply to |sigma|; only the smaller parts need a determinant.
  if (out.size() == 1) {
    out[0].disc = sigma_norm;
    return out;
  }
  std::size_t largest = 0;
  for (std::size_t t = 1; t < out.size(); ++t)
    if (out[t].members.size() > out[largest].members.size()) largest = t;
  std::int64_t rest = 1;
  for (std::size_t t = 0; t < out.size(); ++t) {
    if (t == largest) continue;
    const auto& m = out[t].members;
    IntMatrix g(m.size(), IntVec(m.size()));
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m.size(); ++b) g[a][b] = sb.gram[m[a]][m[b]];
    out[t].disc = static_cast<std::int64_t>(determinant(g));
    rest *= out[t].disc;
  }
  out[largest].disc = sigma_norm / rest;
  std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) { return a.members < b.members; });
  return out;
}

struct Realized {
  std::int64_t q = 0;
  std::vector<SparseVec> basis;  // frame coordinates
};

// Tries to identify span(component) as a linear lattice, racing each candidate string
// in both orientations with growing budgets.
std::optional<Realized> realize_component(const Changemaker& sigma, const StandardBasis& sb,
                                          const std::vector<std::size_t>& others, std::int64_t disc,
                                          std::size_t rank, LinearCatalog& catalog, NodeCounter& counter) {
  std::size_t frame = sigma.size();
  auto frame_of = [&](std::size_t c) { return frame - 1 - c; };
  std::vector<Entries> constraints;
  Entries srow;
  for (std::size_t c = 0; c < frame; ++c) srow.emplace_back(c, sigma[frame_of(c)]);
  constraints.push_back(srow);
  for (std::size_t j : others) {
    Entries row;
    for (const auto& [f, v] : sb.vectors[j].vec.entries()) row.emplace_back(frame - 1 - f, v);
    std::sort(row.begin(), row.end());
    constraints.push_back(std::move(row));
  }
  std::vector<std::vector<std::int64_t>> column_keys(frame);
  for (const auto& row : constraints) {
    std::vector<std::int64_t> dense(frame, 0);
    for (const auto& [c, v] : row) dense[c] = v;
    for (std::size_t c = 0; c < frame; ++c) column_keys[c].push_back(dense[c]);
  }
  std::map<std::vector<std::int64_t>, std::size_t> ids;
  std::vector<std::size_t> classes(frame);
  std::map<std::size_t, std::int64_t> class_size;
  for (std::size_t c = 0; c < frame; ++c) {
    auto [it, fresh] = ids.emplace(column_keys[c], ids.size());
    classes[c] = it->second;
    ++class_size[it->second];
  }
  std::vector<std::int64_t> roots;
  for (const auto& [id, s] : class_size)
    if (s >= 2) roots.push_back(s - 1);
  std::sort(roots.begin(), roots.end());

  std::vector<const LinearCandidate*> pool;
  for (const auto& cand : catalog.candidates(disc, rank))
    if (cand.roots == roots) pool.push_back(&cand);
  if (pool.empty()) return std::nullopt;

  // Both orientations of a candidate describe the same lattice, so whichever finishes first
  // settles the candidate.
  struct Attempt {
    std::int64_t q;
    std::vector<std::int64_t> terms;
    std::size_t candidate;
  };
  std::vector<Attempt> attempts;
  std::vector<bool> settled(pool.size(), false);
  for (std::size_t t = 0; t < pool.size(); ++t) {
    attempts.push_back({pool[t]->q, pool[t]->norms, t});
    std::int64_t qr = reverse_orbit(disc, pool[t]->q);
    if (qr != pool[t]->q) attempts.push_back({qr, hj_terms(disc, qr), t});
  }
  std::uint64_t step = 2'000;
  while (true) {
    for (auto& a : attempts) {
      if (settled[a.candidate]) continue;
      NodeCounter local;
      std::uint64_t left = counter.budget > counter.nodes ? counter.budget - counter.nodes : 0;
      local.budget = std::min(step, left);
      BasisSearch search(a.terms, constraints, classes, local);
      std::optional<std::vector<Entries>> found;
      try {
        found = search.run();
      } catch (const BudgetExceeded&) {
        counter.nodes += local.nodes;
        if (counter.nodes >= counter.budget) throw BudgetExceeded(counter.nodes);
        continue;
      }
      counter.nodes += local.nodes;
      settled[a.candidate] = true;
      if (!found) continue;
      Realized r;
      r.q = a.q;
      for (const auto& row : *found) {
        std::vector<SparseVec::Entry> ent;
        for (const auto& [c, v] : row) ent.emplace_back(frame_of(c), v);
        std::sort(ent.begin(), ent.end());
        r.basis.emplace_back(std::move(ent));
      }
      return r;
    }
    if (std::all_of(settled.begin(), settled.end(), [](bool b) { return b; })) return std::nullopt;
    step *= 4;
  }
}

}  // namespace

LinearVerdict recognize_linear(const Changemaker& sigma, bool allow_sum, SearchOptions opts, LinearCatalog* catalog,
                               SearchStats* stats) {
  LinearCatalog local_catalog;
  LinearCatalog& cat = catalog ? *catalog : local_catalog;
  LinearVerdict v;
  v.p = sigma.norm();
  NodeCounter counter;
  counter.budget = opts.node_budget;
  auto record = [&] {
    if (stats) stats->nodes = counter.nodes;
  };
  if (sigma.size() < 2) {
    record();
    return v;
  }
  StandardBasis sb = standard_basis(sigma);
  auto comps = components(sb, v.p);
  try {
    if (comps.size() == 1) {
      auto r = realize_component(sigma, sb, {}, v.p, sb.vectors.size(), cat, counter);
      if (r) {
        v.kind = LinearVerdict::Kind::linear;
        v.q = r->q;
        v.q_orbit = q_orbit(v.p, r->q);
        v.basis = std::move(r->basis);
        v.k = homology_class_k(v.basis, sigma, v.p, v.q);
        v.genus = (v.p - sigma.one_norm()) / 2;
      }
    } else if (comps.size() == 2 && allow_sum) {
      std::vector<std::pair<std::int64_t, std::int64_t>> summands;
      for (std::size_t t = 0; t < 2; ++t) {
        const auto& other = comps[1 - t].members;
        auto r = realize_component(sigma, sb, other, comps[t].disc, comps[t].members.size(), cat, counter);
        if (!r) break;
        summands.emplace_back(comps[t].disc, q_orbit(comps[t].disc, r->q));
      }
      if (summands.size() == 2) {
        std::sort(summands.begin(), summands.end());
        v.kind = LinearVerdict::Kind::sum_of_two;
        v.summands = std::move(summands);
      }
    }
  } catch (...) {
    record();
    throw;
  }
  record();
  return v;
}

}  // namespace lensembed
