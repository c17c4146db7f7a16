#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lensembed/lattice.hpp"

namespace lensembed {

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_changemaker(std::span<const std::int64_t> v);

class Changemaker {
 public:
  Changemaker() = default;
  explicit Changemaker(std::vector<std::int64_t> entries);

  const std::vector<std::int64_t>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }
  std::int64_t norm() const;
  std::int64_t one_norm() const;
  std::string to_string() const;

  friend bool operator==(const Changemaker&, const Changemaker&) = default;
  friend auto operator<=>(const Changemaker&, const Changemaker&) = default;

 private:
  std::vector<std::int64_t> entries_;
};

Changemaker parse_changemaker(const std::string& text);

struct EnumerationOptions {
  std::int64_t cap = 400;
};

std::vector<Changemaker> enumerate_changemakers(std::int64_t p, EnumerationOptions opts = {});

enum class BasisClass { tight, gappy, just_right };
std::string to_string(BasisClass c);

struct StandardVector {
  SparseVec vec;
  BasisClass cls = BasisClass::just_right;
  std::vector<std::size_t> subset;         // A, empty for tight vectors
  std::vector<std::size_t> gappy_indices;  // k in A with k+1 outside A and k+1 != j
};

struct StandardBasis {
  Changemaker sigma;
  std::vector<StandardVector> vectors;  // v_1..v_n stored at 0..n-1
  IntMatrix gram;
};

StandardBasis standard_basis(const Changemaker& sigma);

struct IntersectionGraphReport {
  std::vector<std::vector<bool>> pairing_graph;
  std::vector<std::vector<bool>> intersection_graph;
  std::vector<bool> breakable;
  std::vector<std::array<std::size_t, 4>> claws;          // (center; three pairwise non-adjacent leaves)
  std::vector<std::array<std::size_t, 3>> heavy_triples;  // norm >= 3, mutually non-separating
  bool from_intervals = false;
};

// Intervals describe each standard vector as [T] in a vertex basis (1-based endpoints and sign).
struct IntervalForm {
  std::size_t first = 0;
  std::size_t last = 0;
  int sign = 1;
};

// Without intervals, adjacency follows the pairing graph and breakability is decided by
// the complement oracle.
IntersectionGraphReport intersection_graph_report(const StandardBasis& sb);
// With intervals and the vertex norms, adjacency is the abutting relation of the intervals.
IntersectionGraphReport intersection_graph_report(const StandardBasis& sb, const std::vector<IntervalForm>& intervals,
                                                  std::span<const std::int64_t> vertex_norms);

struct WeightExpansion {
  std::vector<std::int64_t> multiplicities;
  std::vector<std::int64_t> anchors;  // a_{-1}, a_0, ..., a_{j+1}
  std::vector<std::int64_t> entries;

  std::int64_t norm() const;
  std::int64_t one_norm() const;
  std::int64_t width() const;   // a_j
  std::int64_t height() const;  // a_{j+1}
};

WeightExpansion weight_expansion(std::span<const std::int64_t> multiplicities);
std::optional<WeightExpansion> as_weight_expansion(std::span<const std::int64_t> sigma);
bool is_weight_expansion(std::span<const std::int64_t> sigma);

struct Square {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t side = 0;
};
std::vector<Square> weight_tiling(const WeightExpansion& w);
std::string tiling_svg(const WeightExpansion& w, double unit = 12.0);

}  // namespace lensembed
