#pragma once

#include <vector>

#include "dadg/groupoid.hpp"

namespace dadg {

/// Indexed family U_0..U_k of unit sets together with the set it must cover.
struct Cover {
  UnitSet base;
  std::vector<UnitSet> classes;

  std::size_t size() const { return classes.size(); }
};

/// A cover of G^0 by the given classes.
Cover make_cover(const Groupoid& g, std::vector<UnitSet> classes);

/// Minimum over base points of the number of classes containing the point;
/// 0 when some base point is uncovered. An empty base has fold number equal
/// to the number of classes.
std::size_t fold_number(const Cover& c);

/// True iff every subfamily of k+2-n classes covers the base (k+1 classes).
/// Throws std::invalid_argument when n > k+1.
bool check_nfold_subfamilies(const Cover& c, std::size_t n);

/// Greedy pruning to an inclusion-minimal n-fold subcover. Points are scanned
/// in increasing id; for each point the highest-index classes are dropped
/// first. Points outside the base are removed from every class.
Cover shrink_nfold(const Cover& c, std::size_t n);

}  // namespace dadg
