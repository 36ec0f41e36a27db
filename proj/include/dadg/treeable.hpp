#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dadg/coarse.hpp"
#include "dadg/groupoid.hpp"

namespace dadg {

/// Result of checking that a graphing Q generates G with unique reduced
/// words. word[a] lists the letters of a, range side first.
struct TreeableCheck {
  bool ok = false;
  std::string reason;
  std::vector<std::uint32_t> length;
  std::vector<std::vector<ArrowId>> word;
};

/// Walks reduced Q-words from every unit. Fails if Q is not symmetric, meets
/// the units, reaches an arrow twice, returns to a unit, or misses an arrow.
TreeableCheck verify_treeable(const Groupoid& g, const ArrowSet& q);

struct AnnulusRow {
  std::uint32_t class_id = 0;
  std::uint32_t annulus = 0;
  std::uint32_t size = 0;
  std::uint32_t diameter = 0;
};

struct TreeableCover {
  Decomposition decomposition;  // points are arrow ids; family = annulus parity
  std::vector<AnnulusRow> rows;
  std::uint32_t n = 0;
  std::uint32_t max_diameter = 0;
  /// Smallest word distance between distinct classes of one family, split
  /// by whether the two classes share an annulus; UINT32_MAX when no pair.
  std::uint32_t min_separation_same_annulus = ~std::uint32_t{0};
  std::uint32_t min_separation_other_annulus = ~std::uint32_t{0};
  AsdimCheck certificate;  // ef_asdim_check with E = gauge(B_N), F = gauge(B_4N)
};

/// Annulus cover of a treeable groupoid at scale N. Annulus k holds the
/// arrows with kN <= length < (k+1)N; inside a range fibre two arrows of
/// annulus k share a class when their words agree on the first N(k-1)
/// letters (annuli 0 and 1 form one class per fibre). Even annuli make
/// family 0 and odd annuli family 1. Throws std::invalid_argument if the
/// graphing is not treeable or N is 0.
TreeableCover treeable_cover(const Groupoid& g, const ArrowSet& q, std::uint32_t n);

}  // namespace dadg
