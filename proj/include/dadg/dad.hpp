#pragma once

#include <optional>
#include <vector>

#include "dadg/cover.hpp"
#include "dadg/groupoid.hpp"

namespace dadg {

/// A cover of the units together with the subgroupoids its classes generate
/// from K and the bound L they are checked against.
struct DadWitness {
  Cover cover;
  ArrowSet k;
  ArrowSet l;
  std::vector<ArrowSet> generated_per_class;
  bool certified = false;

  /// Number of classes minus one.
  int d() const { return static_cast<int>(cover.classes.size()) - 1; }
  /// Union of the generated subgroupoids.
  ArrowSet generated_union() const;
};

/// Computes generated(K, U_i) per class and certifies when the cover covers
/// its base and every generated set lies in L. Throws std::invalid_argument
/// if the base of the cover misses part of s(K) u r(K).
DadWitness kl_dad_check(const Groupoid& g, const ArrowSet& k, const ArrowSet& l, const Cover& c);

enum class SearchMode { exact, greedy };

/// Looks for a certified (K,L) witness with the fewest classes, trying
/// d = 0..d_max in turn.
///
/// Exact mode is a depth-first search over colourings of the units in
/// increasing id order with incremental closures, pruned as soon as a class
/// escapes L; the first hit is the lexicographically least colouring. Greedy
/// mode gives each unit the first colour that keeps its class inside L and
/// never backtracks.
std::optional<DadWitness> kl_dad_search(const Groupoid& g, const ArrowSet& k, const ArrowSet& l, int d_max,
                                        SearchMode mode);

/// Statistics of the last exact search on this thread (node count).
std::size_t last_search_nodes();

/// Finds the first bound in the schedule L_j = K^j (j = 1, 2, ...) at which a
/// witness with at most d_max+1 classes exists. Always succeeds once K^j has
/// stabilised. Returns the witness and the exponent used.
struct ScheduledWitness {
  DadWitness witness;
  unsigned exponent = 0;
};
ScheduledWitness search_power_schedule(const Groupoid& g, const ArrowSet& k, int d_max, SearchMode mode);

/// Pads the cover with empty classes until it has d+1 classes.
DadWitness pad_to(const Groupoid& g, DadWitness w, int d);

}  // namespace dadg
