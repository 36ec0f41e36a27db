// Small instance helpers shared by the unit tests.
#pragma once

#include <cstdint>
#include <vector>

#include "dadg/algebra.hpp"
#include "dadg/builders.hpp"

namespace fixtures {

/// Arrows (i,j) of pair_groupoid(n) with |i-j| <= r.
inline dadg::ArrowSet band(const dadg::Groupoid& g, std::uint32_t n, std::uint32_t r) {
  auto s = g.empty_arrows();
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if ((i > j ? i - j : j - i) <= r) s.insert(dadg::pair_arrow(n, i, j));
  return s;
}

/// All pairs (i,j) with i,j in the given block.
inline dadg::ArrowSet block_pairs(const dadg::Groupoid& g, std::uint32_t n, const std::vector<std::uint32_t>& block) {
  auto s = g.empty_arrows();
  for (auto i : block)
    for (auto j : block) s.insert(dadg::pair_arrow(n, i, j));
  return s;
}

inline dadg::UnitSet range_units(const dadg::Groupoid& g, std::uint32_t lo, std::uint32_t hi) {
  auto s = g.empty_units();
  for (std::uint32_t i = lo; i <= hi; ++i) s.insert(i);
  return s;
}

}  // namespace fixtures
