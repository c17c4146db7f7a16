#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "lensembed/embed.hpp"

namespace lensembed::detail {

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct NodeCounter {
  std::uint64_t nodes = 0;
  std::uint64_t budget = 0;
  void tick() {
    if (++nodes > budget) throw BudgetExceeded(nodes);
  }
};

// A linear constraint <w, row> = target over search coordinates, with suffix data for
// bounding the remaining contribution.
struct Row {
  std::vector<std::pair<std::size_t, std::int64_t>> entries;
  std::vector<std::int64_t> suffix_sq;
  std::vector<std::int64_t> suffix_max;

  explicit Row(std::vector<std::pair<std::size_t, std::int64_t>> e);
};

struct ColumnEntry {
  std::size_t row;
  std::int64_t value;
  std::size_t position;  // index of this entry inside the row
};

using Columns = std::vector<std::vector<ColumnEntry>>;

void add_row_to_columns(Columns& columns, const Row& row, std::size_t row_index);
void remove_row_from_columns(Columns& columns, const Row& row);

// prev_same[c] names the closest earlier coordinate interchangeable with c; values are
// forced nonincreasing along such chains.
std::vector<std::size_t> chain_from_classes(const std::vector<std::size_t>& class_ids);
std::vector<std::size_t> refine_classes(const std::vector<std::size_t>& class_ids,
                                        const std::vector<std::pair<std::size_t, std::int64_t>>& row);

struct Candidate {
  std::vector<std::pair<std::size_t, std::int64_t>> entries;
  std::int64_t norm = 0;
};

// Enumerates integer vectors w on coordinates [0, coords) meeting every row target with
// |w| <= max_norm (or == max_norm when exact).
class VectorEnumerator {
 public:
  VectorEnumerator(std::size_t coords, const std::vector<Row>& rows, const Columns& columns,
                   const std::vector<std::int64_t>& targets, const std::vector<std::size_t>& prev_same,
                   NodeCounter& counter);

  std::vector<Candidate> run(std::int64_t max_norm, bool exact);

 private:
  bool feasible(std::size_t row, std::int64_t budget) const;
  void set_residual(std::size_t row, std::int64_t value);
  void descend(std::size_t c, std::int64_t budget);
  void emit(std::int64_t budget);

  std::size_t coords_;
  const std::vector<Row>& rows_;
  const Columns& columns_;
  const std::vector<std::size_t>& prev_same_;
  NodeCounter& counter_;
  std::vector<std::int64_t> residual_;
  std::vector<std::size_t> position_;
  std::vector<std::size_t> dirty_;
  std::vector<std::size_t> dirty_index_;
  std::vector<std::int64_t> w_;
  std::int64_t max_norm_ = 0;
  bool exact_ = false;
  std::vector<Candidate> out_;
};

}  // namespace lensembed::detail
