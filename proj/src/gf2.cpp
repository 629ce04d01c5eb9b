#include "tfimqec/gf2.hpp"

#include <stdexcept>

namespace tfimqec {

void Gf2Span::reduce(BitRow& row, BitRow& combination) const {
  // Each pivot row is already reduced against its predecessors, so one pass
  // in insertion order clears every pivot column.
  for (const Pivot& p : pivots_) {
    if (row.get(p.column)) {
      row ^= p.row;
      combination ^= p.combination;
    }
  }
}

bool Gf2Span::add(const BitRow& row, std::size_t index) {
  if (row.size() != width_ || index >= max_rows_) {
    throw std::invalid_argument("GF(2) row does not fit the span workspace");
  }
  BitRow reduced = row;
  BitRow combination(max_rows_);
  combination.set(index);
  reduce(reduced, combination);
  const std::optional<std::size_t> column = reduced.first_set();
  if (!column) {
    return false;
  }
  pivots_.push_back({*column, std::move(reduced), std::move(combination)});
  return true;
}

std::optional<BitRow> Gf2Span::solve(const BitRow& row) const {
  if (row.size() != width_) {
    throw std::invalid_argument("GF(2) row does not fit the span workspace");
  }
  BitRow reduced = row;
  BitRow combination(max_rows_);
  reduce(reduced, combination);
  if (reduced.any()) {
    return std::nullopt;
  }
  return combination;
}

}  // namespace tfimqec
