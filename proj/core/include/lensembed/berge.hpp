#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lensembed/korbit.hpp"

namespace lensembed {

enum class BergeType {
  I_plus,
  I_minus,
  II_plus,
  II_minus,
  IIIa_plus,
  IIIa_minus,
  IIIb_plus,
  IIIb_minus,
  IVa_plus,
  IVa_minus,
  IVb_plus,
  IVb_minus,
  Va_plus,
  Va_minus,
  Vb_plus,
  Vb_minus,
  VII,
  VIII,
  IX,
  X,
};

std::string to_string(BergeType t);
std::optional<BergeType> parse_berge_type(const std::string& tag);
const std::vector<BergeType>& all_berge_types();

// Raw table parameters; i and d are zero when the type has none.
struct BergeSource {
  BergeType type = BergeType::I_plus;
  std::int64_t i = 0;
  std::int64_t k = 0;
  std::int64_t d = 0;

  friend bool operator==(const BergeSource&, const BergeSource&) = default;
  friend auto operator<=>(const BergeSource&, const BergeSource&) = default;
};

struct BergeEntry {
  std::int64_t p = 0;
  std::int64_t k = 0;  // residue of the first source's k
  std::int64_t q = 0;  // -k^2 mod p
  KOrbit k_orbit;
  std::vector<BergeSource> sources;

  std::vector<BergeType> types() const;
  std::string type_tags() const;  // distinct tags joined by '|'
};

// All entries with 2 <= p <= max_p, deduplicated by (p, k_orbit) and sorted by it.
std::vector<BergeEntry> berge_entries(std::int64_t max_p, const std::set<BergeType>& filter = {});

// Direct test of one table row for a given integer k (not reduced mod p).
bool satisfies_type(BergeType type, std::int64_t p, std::int64_t k);

}  // namespace lensembed
