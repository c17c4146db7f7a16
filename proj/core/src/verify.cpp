#include "lensembed/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "lensembed/berge.hpp"
#include "lensembed/contfrac.hpp"
#include "lensembed/records.hpp"

namespace lensembed {

namespace fs = std::filesystem;

std::string to_string(RealizationStatus s) {
  switch (s) {
    case RealizationStatus::match:
      return "MATCH";
    case RealizationStatus::mismatch:
      return "MISMATCH";
    case RealizationStatus::unresolved:
      return "UNRESOLVED";
  }
  return "UNRESOLVED";
}

std::optional<RealizationStatus> parse_realization_status(const std::string& text) {
  for (auto s : {RealizationStatus::match, RealizationStatus::mismatch, RealizationStatus::unresolved}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

namespace {

using BergeIndex = std::map<std::pair<std::int64_t, std::int64_t>, std::map<std::int64_t, std::string>>;

BergeIndex index_berge(std::int64_t max_p) {
  BergeIndex index;
  for (const auto& e : berge_entries(max_p)) index[{e.p, q_orbit(e.p, e.q)}][e.k_orbit.representative] = e.type_tags();
  return index;
}

std::vector<std::int64_t> q_orbits(std::int64_t p) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 1; q < p; ++q) {
    if (std::gcd(p, q) == 1 && q_orbit(p, q) == q) out.push_back(q);
  }
  return out;
}

RealizationRecord realize(std::int64_t p, std::int64_t q, const BergeIndex& berge, std::uint64_t budget) {
  RealizationRecord r;
  r.p = p;
  r.q_orbit = q;
  auto it = berge.find({p, q});
  if (it != berge.end()) {
    for (const auto& [orbit, tags] : it->second) {
      r.berge_orbits.push_back(orbit);
      r.berge_types.push_back(tags);
    }
  }
  SearchOptions opts;
  opts.node_budget = budget;
  SearchStats stats;
  try {
    std::set<RealizedClass> classes;
    for (const auto& e : find_embeddings(p, q, opts, &stats))
      classes.insert({e.sigma.entries(), e.k.orbit.representative, e.genus});
    r.embeddings.assign(classes.begin(), classes.end());
    std::set<std::int64_t> orbits;
    for (const auto& c : r.embeddings) orbits.insert(c.k_orbit);
    r.embedding_orbits.assign(orbits.begin(), orbits.end());
    r.status = r.embedding_orbits == r.berge_orbits ? RealizationStatus::match : RealizationStatus::mismatch;
  } catch (const BudgetExceeded&) {
    r.status = RealizationStatus::unresolved;
  }
  r.nodes = stats.nodes;
  return r;
}

fs::path cache_file(const fs::path& dir, std::int64_t p) {
  std::ostringstream name;
  name << "p" << std::setw(7) << std::setfill('0') << p << ".jsonl";
  return dir / name.str();
}

std::optional<std::vector<RealizationRecord>> read_cache(const fs::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::vector<RealizationRecord> out;
  std::string line;
  try {
    while (std::getline(in, line)) {
      if (!line.empty()) out.push_back(Json::parse(line).get<RealizationRecord>());
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return out;
}

void write_cache(const fs::path& file, const std::vector<RealizationRecord>& records) {
  fs::path tmp = file;
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (const auto& r : records) out << Json(r).dump() << '\n';
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  fs::rename(tmp, file);
}

template <typename Task>
void run_pool(unsigned jobs, std::size_t count, Task task) {
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<RealizationRecord> verify_realization(std::int64_t p_min, std::int64_t p_max, const VerifyOptions& opts,
                                                  RealizationSummary* summary) {
  if (p_min < 2 || p_min > p_max) throw DomainError("verify: need 2 <= p_min <= p_max");
  if (opts.cache_dir) fs::create_directories(*opts.cache_dir);
  BergeIndex berge = index_berge(p_max);
  std::size_t count = static_cast<std::size_t>(p_max - p_min + 1);
  std::vector<std::vector<RealizationRecord>> by_p(count);
  std::vector<bool> finished(count, false), from_cache(count, false);
  std::size_t emitted = 0;
  std::mutex emit_mutex;

  run_pool(opts.jobs, count, [&](std::size_t i) {
    std::int64_t p = p_min + static_cast<std::int64_t>(i);
    std::vector<RealizationRecord> records;
    bool cached = false;
    if (opts.cache_dir && !opts.force) {
      if (auto hit = read_cache(cache_file(*opts.cache_dir, p))) {
        records = std::move(*hit);
        cached = true;
      }
    }
    if (!cached) {
      for (auto q : q_orbits(p)) records.push_back(realize(p, q, berge, opts.node_budget));
      bool unresolved = std::any_of(records.begin(), records.end(),
                                    [](const auto& r) { return r.status == RealizationStatus::unresolved; });
      if (opts.cache_dir && !unresolved) write_cache(cache_file(*opts.cache_dir, p), records);
    }
    std::lock_guard lock(emit_mutex);
    by_p[i] = std::move(records);
    finished[i] = true;
    from_cache[i] = cached;
    while (emitted < count && finished[emitted]) {
      if (opts.on_p) opts.on_p(p_min + static_cast<std::int64_t>(emitted), by_p[emitted]);
      ++emitted;
    }
  });

  std::vector<RealizationRecord> out;
  RealizationSummary s;
  for (std::size_t i = 0; i < count; ++i) {
    if (from_cache[i]) ++s.cached_p;
    for (auto& r : by_p[i]) {
      ++s.records;
      if (r.status == RealizationStatus::match) ++s.matches;
      if (r.status == RealizationStatus::mismatch) ++s.mismatches;
      if (r.status == RealizationStatus::unresolved) ++s.unresolved;
      if (!r.embeddings.empty()) ++s.realizable;
      out.push_back(std::move(r));
    }
  }
  if (summary) *summary = s;
  return out;
}

CrossCheckReport cross_check_directions(std::int64_t p_max, const VerifyOptions& opts) {
  if (p_max < 1) throw DomainError("crosscheck: p_max must be positive");
  using Key = std::tuple<std::vector<std::int64_t>, std::int64_t, std::int64_t, std::int64_t, std::int64_t>;
  CrossCheckReport report;
  report.p_max = p_max;
  SearchOptions search;
  search.node_budget = opts.node_budget;

  std::vector<std::pair<std::int64_t, std::int64_t>> tasks;
  for (std::int64_t p = 2; p <= p_max; ++p)
    for (auto q : q_orbits(p)) tasks.emplace_back(p, q);
  std::vector<std::set<Key>> found_a(tasks.size());
  std::vector<char> budget_a(tasks.size(), 0);
  run_pool(opts.jobs, tasks.size(), [&](std::size_t i) {
    auto [p, q] = tasks[i];
    try {
      for (const auto& e : find_embeddings(p, q, search))
        found_a[i].insert({e.sigma.entries(), p, q, e.k.orbit.representative, e.genus});
    } catch (const BudgetExceeded&) {
      budget_a[i] = 1;
    }
  });
  std::set<Key> a;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    a.insert(found_a[i].begin(), found_a[i].end());
    if (budget_a[i]) {
      ++report.unresolved;
      report.discrepancies.push_back("embedding search budget exhausted at (" + std::to_string(tasks[i].first) + "," +
                                     std::to_string(tasks[i].second) + ")");
    }
  }
  report.embeddings = a.size();

  std::vector<Changemaker> sigmas;
  for (std::int64_t p = 1; p <= p_max; ++p) {
    auto batch = enumerate_changemakers(p, EnumerationOptions{std::max<std::int64_t>(p_max, 400)});
    sigmas.insert(sigmas.end(), batch.begin(), batch.end());
  }
  report.changemakers = sigmas.size();
  std::vector<LinearVerdict> verdicts(sigmas.size());
  std::vector<char> budget_b(sigmas.size(), 0);
  LinearCatalog catalog;
  run_pool(opts.jobs, sigmas.size(), [&](std::size_t i) {
    try {
      verdicts[i] = recognize_linear(sigmas[i], true, search, &catalog);
    } catch (const BudgetExceeded&) {
      budget_b[i] = 1;
    }
  });
  std::set<Key> b;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const auto& v = verdicts[i];
    std::int64_t p = sigmas[i].norm();
    if (budget_b[i]) {
      ++report.unresolved;
      report.discrepancies.push_back("recognition budget exhausted at " + sigmas[i].to_string());
      continue;
    }
    switch (v.kind) {
      case LinearVerdict::Kind::linear:
        ++report.linear;
        b.insert({sigmas[i].entries(), p, v.q_orbit, v.k.orbit.representative, v.genus});
        break;
      case LinearVerdict::Kind::sum_of_two: {
        ++report.sum_of_two;
        auto [s1, s2] = std::pair{v.summands.at(0), v.summands.at(1)};
        if (s1.first * s2.first != p)
          report.discrepancies.push_back("sum of two with wrong discriminant at " + sigmas[i].to_string());
        break;
      }
      case LinearVerdict::Kind::not_linear:
        ++report.not_linear;
        break;
    }
  }
  auto describe = [](const char* side, const Key& k) {
    return std::string(side) + " only: sigma=" + Changemaker(std::get<0>(k)).to_string() +
           " p=" + std::to_string(std::get<1>(k)) + " q=" + std::to_string(std::get<2>(k)) +
           " k=" + std::to_string(std::get<3>(k)) + " g=" + std::to_string(std::get<4>(k));
  };
  for (const auto& k : a)
    if (!b.count(k)) report.discrepancies.push_back(describe("search", k));
  for (const auto& k : b)
    if (!a.count(k)) report.discrepancies.push_back(describe("recognition", k));
  return report;
}

bool genus_bound_holds(std::int64_t p, std::int64_t genus, bool* equality) {
  // 2g - 1 <= p - 2 sqrt((4p+1)/5)  <=>  p - 2g + 1 >= 0 and 5 (p - 2g + 1)^2 >= 4 (4p + 1)
  __int128 lhs_base = p - 2 * genus + 1;
  __int128 lhs = 5 * lhs_base * lhs_base;
  __int128 rhs = 4 * (4 * static_cast<__int128>(p) + 1);
  if (equality) *equality = lhs_base >= 0 && lhs == rhs;
  return lhs_base >= 0 && lhs >= rhs;
}

bool i_minus_bound_holds(std::int64_t p, std::int64_t genus, bool* equality) {
  // 2g - 1 <= p + 1 - sqrt(4p + 5)  <=>  p + 2 - 2g >= 0 and (p + 2 - 2g)^2 >= 4p + 5
  __int128 base = p + 2 - 2 * genus;
  __int128 rhs = 4 * static_cast<__int128>(p) + 5;
  if (equality) *equality = base >= 0 && base * base == rhs;
  return base >= 0 && base * base >= rhs;
}

GenusReport verify_genus_bound(const std::vector<RealizationRecord>& realizations, std::int64_t p_max) {
  GenusReport report;
  report.p_max = p_max;
  std::set<std::pair<std::int64_t, std::int64_t>> i_minus;
  for (const auto& e : berge_entries(p_max, {BergeType::I_minus})) i_minus.insert({e.p, e.k_orbit.representative});

  std::map<std::pair<std::int64_t, std::vector<std::int64_t>>, GenusRecord> records;
  for (const auto& r : realizations) {
    if (r.p > p_max) continue;
    for (const auto& c : r.embeddings) {
      auto& g = records[{r.p, c.sigma}];
      g.p = r.p;
      g.sigma = c.sigma;
      g.genus = c.genus;
      g.type_i_minus = g.type_i_minus || i_minus.count({r.p, c.k_orbit}) > 0;
    }
  }

  auto sigma_text = [](const std::vector<std::int64_t>& s) { return Changemaker(s).to_string(); };
  std::set<std::pair<std::int64_t, std::vector<std::int64_t>>> equal_cases, i_minus_equal_cases;
  for (auto& [key, g] : records) {
    g.bound = static_cast<double>(g.p) - 2.0 * std::sqrt((4.0 * static_cast<double>(g.p) + 1.0) / 5.0);
    g.exception = g.p == 5 && g.sigma == std::vector<std::int64_t>{1, 2};
    g.holds = genus_bound_holds(g.p, g.genus, &g.equality);
    std::int64_t one_norm = std::accumulate(g.sigma.begin(), g.sigma.end(), std::int64_t{0});
    if (2 * g.genus != g.p - one_norm)
      report.problems.push_back("genus identity fails at p=" + std::to_string(g.p) + " sigma=" + sigma_text(g.sigma));
    if (!g.holds && !g.exception)
      report.problems.push_back("bound violated at p=" + std::to_string(g.p) + " sigma=" + sigma_text(g.sigma));
    if (g.exception && g.holds) report.problems.push_back("the trefoil exception unexpectedly satisfies the bound");
    if (g.equality) equal_cases.insert(key);
    if (g.type_i_minus) {
      g.i_minus_holds = i_minus_bound_holds(g.p, g.genus, &g.i_minus_equality);
      if (!g.i_minus_holds)
        report.problems.push_back("type I- bound violated at p=" + std::to_string(g.p) + " sigma=" + sigma_text(g.sigma));
      if (g.i_minus_equality) i_minus_equal_cases.insert(key);
    }
    report.records.push_back(g);
  }
  if (records.find({5, {1, 2}}) == records.end() && p_max >= 5)
    report.problems.push_back("the trefoil exception (5,(1,2)) was not realized");

  auto compare = [&](const std::string& label, const std::set<std::pair<std::int64_t, std::vector<std::int64_t>>>& got,
                     const std::set<std::pair<std::int64_t, std::vector<std::int64_t>>>& want) {
    for (const auto& k : got)
      if (!want.count(k))
        report.problems.push_back(label + " equality outside the family at p=" + std::to_string(k.first) +
                                  " sigma=" + sigma_text(k.second));
    for (const auto& k : want)
      if (!got.count(k))
        report.problems.push_back(label + " equality missing at p=" + std::to_string(k.first) +
                                  " sigma=" + sigma_text(k.second));
  };
  std::set<std::pair<std::int64_t, std::vector<std::int64_t>>> want, want_i;
  for (std::int64_t n = 1; 5 * n * n + 5 * n + 1 <= p_max; ++n) {
    std::vector<std::int64_t> s(static_cast<std::size_t>(n), 1);
    s.push_back(n);
    s.push_back(2 * n + 1);
    want.insert({5 * n * n + 5 * n + 1, s});
  }
  for (std::int64_t n = 1; n * n + 3 * n + 1 <= p_max; ++n) {
    std::vector<std::int64_t> s(static_cast<std::size_t>(n), 1);
    s.push_back(n + 1);
    want_i.insert({n * n + 3 * n + 1, s});
  }
  compare("genus bound", equal_cases, want);
  compare("type I- bound", i_minus_equal_cases, want_i);
  return report;
}

}  // namespace lensembed
