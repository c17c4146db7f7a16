#include "enumerator.hpp"

#include <algorithm>
#include <map>

#include "lensembed/arith.hpp"

namespace lensembed::detail {

Row::Row(std::vector<std::pair<std::size_t, std::int64_t>> e) : entries(std::move(e)) {
  std::size_t k = entries.size();
  suffix_sq.assign(k + 1, 0);
  suffix_max.assign(k + 1, 0);
  for (std::size_t t = k; t-- > 0;) {
    std::int64_t x = entries[t].second;
    suffix_sq[t] = suffix_sq[t + 1] + x * x;
    suffix_max[t] = std::max(suffix_max[t + 1], x < 0 ? -x : x);
  }
}

void add_row_to_columns(Columns& columns, const Row& row, std::size_t row_index) {
  for (std::size_t t = 0; t < row.entries.size(); ++t) {
    const auto& [c, x] = row.entries[t];
    if (c >= columns.size()) columns.resize(c + 1);
    columns[c].push_back({row_index, x, t});
  }
}

void remove_row_from_columns(Columns& columns, const Row& row) {
  for (const auto& [c, x] : row.entries) columns[c].pop_back();
}

std::vector<std::size_t> chain_from_classes(const std::vector<std::size_t>& class_ids) {
  std::vector<std::size_t> prev(class_ids.size(), kNone);
  std::map<std::size_t, std::size_t> last;
  for (std::size_t c = 0; c < class_ids.size(); ++c) {
    auto it = last.find(class_ids[c]);
    if (it != last.end()) prev[c] = it->second;
    last[class_ids[c]] = c;
  }
  return prev;
}

std::vector<std::size_t> refine_classes(const std::vector<std::size_t>& class_ids,
                                        const std::vector<std::pair<std::size_t, std::int64_t>>& row) {
  std::vector<std::int64_t> value(class_ids.size(), 0);
  for (const auto& [c, x] : row) {
    if (c < value.size()) value[c] = x;
  }
  std::map<std::pair<std::size_t, std::int64_t>, std::size_t> ids;
  std::vector<std::size_t> out(class_ids.size());
  for (std::size_t c = 0; c < class_ids.size(); ++c) {
    auto key = std::pair{class_ids[c], value[c]};
    auto [it, inserted] = ids.emplace(key, ids.size());
    out[c] = it->second;
  }
  return out;
}

VectorEnumerator::VectorEnumerator(std::size_t coords, const std::vector<Row>& rows, const Columns& columns,
                                   const std::vector<std::int64_t>& targets,
                                   const std::vector<std::size_t>& prev_same, NodeCounter& counter)
    : coords_(coords),
      rows_(rows),
      columns_(columns),
      prev_same_(prev_same),
      counter_(counter),
      residual_(rows.size(), 0),
      position_(rows.size(), 0),
      dirty_index_(rows.size(), kNone),
      w_(coords, 0) {
  for (std::size_t j = 0; j < rows.size(); ++j) set_residual(j, targets[j]);
}

void VectorEnumerator::set_residual(std::size_t row, std::int64_t value) {
  bool was = residual_[row] != 0;
  bool now = value != 0;
  residual_[row] = value;
  if (was == now) return;
  if (now) {
    dirty_index_[row] = dirty_.size();
    dirty_.push_back(row);
  } else {
    std::size_t at = dirty_index_[row];
    std::size_t last = dirty_.back();
    dirty_[at] = last;
    dirty_index_[last] = at;
    dirty_.pop_back();
    dirty_index_[row] = kNone;
  }
}

bool VectorEnumerator::feasible(std::size_t row, std::int64_t budget) const {
  std::int64_t r = residual_[row];
  if (r == 0) return true;
  const Row& rw = rows_[row];
  std::size_t s = position_[row];
  __int128 ar = r < 0 ? -r : r;
  if (ar > static_cast<__int128>(budget) * rw.suffix_max[s]) return false;
  return ar * ar <= static_cast<__int128>(budget) * rw.suffix_sq[s];
}

std::vector<Candidate> VectorEnumerator::run(std::int64_t max_norm, bool exact) {
  max_norm_ = max_norm;
  exact_ = exact;
  out_.clear();
  bool ok = true;
  for (auto j : dirty_) ok = ok && feasible(j, max_norm);
  if (ok) descend(0, max_norm);
  return std::move(out_);
}

void VectorEnumerator::emit(std::int64_t budget) {
  if (exact_ && budget != 0) return;
  Candidate cand;
  cand.norm = max_norm_ - budget;
  for (std::size_t c = 0; c < coords_; ++c) {
    if (w_[c] != 0) cand.entries.emplace_back(c, w_[c]);
  }
  out_.push_back(std::move(cand));
}

void VectorEnumerator::descend(std::size_t c, std::int64_t budget) {
  counter_.tick();
  if (c == coords_) {
    if (dirty_.empty()) emit(budget);
    return;
  }
  if (budget == 0) {
    if (!dirty_.empty()) return;
    for (std::size_t r = c; r < coords_; ++r) {
      std::size_t prev = prev_same_[r];
      if (prev != kNone && prev < c && w_[prev] < 0) return;
    }
    emit(budget);
    return;
  }
  std::int64_t hi = isqrt(budget);
  std::int64_t lo = -hi;
  if (prev_same_[c] != kNone) hi = std::min(hi, w_[prev_same_[c]]);
  static const std::vector<ColumnEntry> kEmpty;
  const std::vector<ColumnEntry>& column = c < columns_.size() ? columns_[c] : kEmpty;
  for (std::int64_t step = 0; step <= 2 * isqrt(budget); ++step) {
    std::int64_t v = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);
    if (v < lo || v > hi) continue;
    std::int64_t next = budget - v * v;
    for (const auto& e : column) {
      if (v != 0) set_residual(e.row, residual_[e.row] - v * e.value);
      position_[e.row] = e.position + 1;
    }
    bool ok = true;
    for (const auto& e : column) {
      if (!feasible(e.row, next)) {
        ok = false;
        break;
      }
    }
    if (ok && v != 0) {
      for (auto j : dirty_) {
        if (!feasible(j, next)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      w_[c] = v;
      descend(c + 1, next);
      w_[c] = 0;
    }
    for (const auto& e : column) {
      if (v != 0) set_residual(e.row, residual_[e.row] + v * e.value);
      position_[e.row] = e.position;
    }
  }
}

}  // namespace lensembed::detail
