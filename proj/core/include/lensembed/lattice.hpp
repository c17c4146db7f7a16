#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lensembed/contfrac.hpp"

namespace lensembed {

using IntVec = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVec>;

BigInt determinant(const IntMatrix& m);

class GramLattice {
 public:
  GramLattice() = default;
  // Validates symmetry and positive definiteness.
  explicit GramLattice(IntMatrix gram);

  std::size_t rank() const { return gram_.size(); }
  const IntMatrix& gram() const { return gram_; }
  std::int64_t pair(std::span<const std::int64_t> u, std::span<const std::int64_t> v) const;
  std::int64_t norm(std::span<const std::int64_t> v) const { return pair(v, v); }
  BigInt discriminant() const { return determinant(gram_); }

 private:
  IntMatrix gram_;
};

// Integer vector in an orthonormal frame e_0, e_1, ..., stored as sorted (index, value) pairs.
class SparseVec {
 public:
  using Entry = std::pair<std::size_t, std::int64_t>;

  SparseVec() = default;
  explicit SparseVec(std::vector<Entry> entries);
  static SparseVec from_dense(std::span<const std::int64_t> dense);

  const std::vector<Entry>& entries() const { return entries_; }
  std::int64_t at(std::size_t i) const;
  std::int64_t norm() const;
  std::int64_t dot(const SparseVec& other) const;
  std::int64_t dot(std::span<const std::int64_t> dense) const;
  std::vector<std::size_t> support() const;
  std::vector<std::size_t> support_plus() const;
  std::vector<std::size_t> support_minus() const;
  IntVec to_dense(std::size_t size) const;
  SparseVec operator-() const;
  SparseVec operator+(const SparseVec& other) const;

  friend bool operator==(const SparseVec&, const SparseVec&) = default;
  friend auto operator<=>(const SparseVec&, const SparseVec&) = default;

 private:
  std::vector<Entry> entries_;
};

struct LinearLatticeDesc {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::vector<std::int64_t> norms;
  GramLattice lattice;
};

LinearLatticeDesc linear_lattice(std::int64_t p, std::int64_t q);
IntMatrix tridiagonal_gram(std::span<const std::int64_t> norms);

// Loopless multigraph; multiplicity[u][v] counts edges between u and v.
struct RootedGraph {
  std::size_t vertices = 0;
  std::vector<std::vector<std::int64_t>> multiplicity;
  std::size_t root = 0;

  static RootedGraph empty(std::size_t vertices, std::size_t root = 0);
  void add_edge(std::size_t u, std::size_t v, std::int64_t count = 1);
  bool connected() const;
  bool induces_connected(const std::vector<bool>& subset) const;
};

GramLattice graph_lattice(const RootedGraph& g);
// Path x_1 - ... - x_n plus a root joined to x_i by a_i minus its path degree edges.
RootedGraph linear_graph(std::span<const std::int64_t> norms);

IntVec interval_class(const LinearLatticeDesc& desc, std::size_t i, std::size_t j);

class OracleBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  std::int64_t norm_cap = 12;
};

// Calls visit(v, |v|) for every nonzero lattice vector with |v| <= max_norm
// (vertex-basis coordinates); enumeration stops early when visit returns false.
void for_each_short_vector(const GramLattice& lat, std::int64_t max_norm,
                           const std::function<bool(const IntVec&, std::int64_t)>& visit);

bool irreducible(const GramLattice& lat, std::span<const std::int64_t> v, OracleOptions opts = {});
bool breakable(const GramLattice& lat, std::span<const std::int64_t> v, OracleOptions opts = {});

// Oracles inside the complement (sigma)^perp of Z^{n+1}, using frame sparsity.
bool irreducible_in_complement(std::span<const std::int64_t> sigma, const SparseVec& v,
                               OracleOptions opts = {});
bool breakable_in_complement(std::span<const std::int64_t> sigma, const SparseVec& v,
                             OracleOptions opts = {});

bool linear_iso(std::int64_t p, std::int64_t q, std::int64_t p2, std::int64_t q2);

}  // namespace lensembed
