#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lensembed/changemaker.hpp"
#include "lensembed/korbit.hpp"
#include "lensembed/lattice.hpp"

namespace lensembed {

class BudgetExceeded : public ResourceError {
 public:
  explicit BudgetExceeded(std::uint64_t nodes);
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::uint64_t nodes_;
};

enum class SearchMode { first, all };

struct SearchOptions {
  SearchMode mode = SearchMode::all;
  std::uint64_t node_budget = 100'000'000;
};

struct HomologyClass {
  std::int64_t raw = 0;  // <e_gamma, sum p_{i-1} x_i> mod p
  std::int64_t k = 0;    // normalized so that -k^2 = q mod p
  KOrbit orbit;

  friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

// x_1..x_n must realize the tridiagonal Gram of `norms` (the expansion of p/q) inside
// the complement of sigma, all in the same frame. Throws std::logic_error when the unit
// coordinates disagree or -k^2 matches neither q nor its reversal.
HomologyClass homology_class_k(const std::vector<SparseVec>& basis, const Changemaker& sigma, std::int64_t p,
                               std::int64_t q);

struct Embedding {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::size_t frame_size = 0;
  std::vector<SparseVec> basis;
  Changemaker sigma;
  HomologyClass k;
  std::int64_t genus = 0;
};

struct SearchStats {
  std::uint64_t nodes = 0;
};

std::vector<Embedding> find_embeddings(std::int64_t p, std::int64_t q, SearchOptions opts = {},
                                       SearchStats* stats = nullptr);

// Rechecks Gram, orthogonality, changemaker shape, norm, genus, and k.
bool embedding_valid(const Embedding& e);

struct LinearCandidate {
  std::int64_t q = 0;
  std::vector<std::int64_t> norms;
  std::vector<std::int64_t> roots;  // sorted A_r ranks of the norm-2 root system
};

// Orbit representatives q <= q' for each p, grouped by string length; memoized and thread-safe.
class LinearCatalog {
 public:
  const std::vector<LinearCandidate>& candidates(std::int64_t p, std::size_t length);

 private:
  std::mutex mutex_;
  std::map<std::int64_t, std::map<std::size_t, std::vector<LinearCandidate>>> by_p_;
};

struct LinearVerdict {
  enum class Kind { linear, sum_of_two, not_linear };
  Kind kind = Kind::not_linear;
  std::int64_t p = 0;
  std::int64_t q_orbit = 0;
  std::int64_t q = 0;  // the string actually realized by the basis
  HomologyClass k;
  std::int64_t genus = 0;
  std::vector<SparseVec> basis;
  std::vector<std::pair<std::int64_t, std::int64_t>> summands;
};

std::string to_string(LinearVerdict::Kind kind);

LinearVerdict recognize_linear(const Changemaker& sigma, bool allow_sum, SearchOptions opts = {},
                               LinearCatalog* catalog = nullptr, SearchStats* stats = nullptr);

}  // namespace lensembed
