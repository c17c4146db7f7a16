#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lensembed/embed.hpp"

namespace lensembed {

enum class RealizationStatus { match, mismatch, unresolved };
std::string to_string(RealizationStatus s);
std::optional<RealizationStatus> parse_realization_status(const std::string& text);

struct RealizedClass {
  std::vector<std::int64_t> sigma;
  std::int64_t k_orbit = 0;
  std::int64_t genus = 0;

  friend bool operator==(const RealizedClass&, const RealizedClass&) = default;
  friend auto operator<=>(const RealizedClass&, const RealizedClass&) = default;
};

struct RealizationRecord {
  std::int64_t p = 0;
  std::int64_t q_orbit = 0;  // min(q, q')
  std::vector<RealizedClass> embeddings;     // sorted
  std::vector<std::int64_t> embedding_orbits;  // distinct k-orbits, sorted
  std::vector<std::int64_t> berge_orbits;      // distinct k-orbits, sorted
  std::vector<std::string> berge_types;        // one tag list per berge orbit
  RealizationStatus status = RealizationStatus::match;
  std::uint64_t nodes = 0;

  friend bool operator==(const RealizationRecord&, const RealizationRecord&) = default;
};

struct VerifyOptions {
  unsigned jobs = 1;
  std::optional<std::filesystem::path> cache_dir;
  bool force = false;
  std::uint64_t node_budget = 100'000'000;
  // Called once per finished p, in increasing order of p.
  std::function<void(std::int64_t p, const std::vector<RealizationRecord>&)> on_p;
};

struct RealizationSummary {
  std::size_t records = 0;
  std::size_t matches = 0;
  std::size_t mismatches = 0;
  std::size_t unresolved = 0;
  std::size_t realizable = 0;
  std::size_t cached_p = 0;
};

// Every q-orbit of every p in [p_min, p_max], sorted by (p, q_orbit). Each p is cached
// as one JSON-lines file written atomically; files holding an unresolved record are not kept.
std::vector<RealizationRecord> verify_realization(std::int64_t p_min, std::int64_t p_max, const VerifyOptions& opts = {},
                                                  RealizationSummary* summary = nullptr);

struct CrossCheckReport {
  std::int64_t p_max = 0;
  std::size_t changemakers = 0;
  std::size_t linear = 0;
  std::size_t sum_of_two = 0;
  std::size_t not_linear = 0;
  std::size_t embeddings = 0;
  std::size_t unresolved = 0;
  std::vector<std::string> discrepancies;

  bool ok() const { return discrepancies.empty() && unresolved == 0; }
};

// Compares (sigma, p, q-orbit, k-orbit, genus) from both engines over every changemaker
// of norm at most p_max.
CrossCheckReport cross_check_directions(std::int64_t p_max, const VerifyOptions& opts = {});

struct GenusRecord {
  std::int64_t p = 0;
  std::vector<std::int64_t> sigma;
  std::int64_t genus = 0;
  double bound = 0;       // p - 2 sqrt((4p+1)/5), display only
  bool holds = true;      // exact integer comparison
  bool equality = false;
  bool exception = false;  // (5, (1,2))
  bool type_i_minus = false;
  bool i_minus_holds = true;
  bool i_minus_equality = false;
};

// Exact forms of the two bounds.
bool genus_bound_holds(std::int64_t p, std::int64_t genus, bool* equality = nullptr);
bool i_minus_bound_holds(std::int64_t p, std::int64_t genus, bool* equality = nullptr);

struct GenusReport {
  std::int64_t p_max = 0;
  std::vector<GenusRecord> records;
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};

// One record per realizable (p, sigma); problems list every violation outside the
// exception, every equality outside p = 5n^2+5n+1 with sigma = (1^n, n, 2n+1), every
// missing member of that family, and the same for the type I- refinement.
GenusReport verify_genus_bound(const std::vector<RealizationRecord>& realizations, std::int64_t p_max);

}  // namespace lensembed
