#include "dadg/cover.hpp"

#include <stdexcept>

namespace dadg {

namespace {

void require_same_universe(const Cover& c) {
  for (const auto& u : c.classes) c.base.check_compatible(u);
}

std::size_t multiplicity(const Cover& c, UnitId x) {
  std::size_t count = 0;
  for (const auto& u : c.classes) count += u.contains(x) ? 1 : 0;
  return count;
}

}  // namespace

Cover make_cover(const Groupoid& g, std::vector<UnitSet> classes) {
  for (const auto& u : classes) g.require_owner(u);
  return Cover{g.all_units(), std::move(classes)};
}

std::size_t fold_number(const Cover& c) {
  require_same_universe(c);
  std::size_t fold = c.classes.size();
  c.base.for_each([&](UnitId x) { fold = std::min(fold, multiplicity(c, x)); });
  return fold;
}

bool check_nfold_subfamilies(const Cover& c, std::size_t n) {
  require_same_universe(c);
  const std::size_t classes = c.classes.size();
  if (n > classes) throw std::invalid_argument("check_nfold_subfamilies: n exceeds the number of classes");
  const std::size_t pick = classes + 1 - n;  // k+2-n with k+1 classes
  if (pick > classes) return true;           // n == 0: no such subfamily
  if (classes >= 8 * sizeof(unsigned long long))
    throw std::invalid_argument("check_nfold_subfamilies: too many classes");

  for (unsigned long long mask = 0; mask < (1ull << classes); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != pick) continue;
    UnitSet covered = c.base;
    covered.clear();
    for (std::size_t i = 0; i < classes; ++i)
      if (mask >> i & 1) covered |= c.classes[i];
    if (!c.base.is_subset_of(covered)) return false;
  }
  return true;
}

Cover shrink_nfold(const Cover& c, std::size_t n) {
  if (fold_number(c) < n) throw std::invalid_argument("shrink_nfold: cover is not n-fold");
  Cover out = c;
  for (auto& u : out.classes) u &= c.base;
  c.base.for_each([&](UnitId x) {
    std::size_t count = multiplicity(out, x);
    for (std::size_t i = out.classes.size(); i-- > 0 && count > n;) {
      if (out.classes[i].contains(x)) {
        out.classes[i].erase(x);
        --count;
      }
    }
  });
  return out;
}

}  // namespace dadg
