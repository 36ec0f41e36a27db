#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "dadg/cover.hpp"
#include "dadg/dad.hpp"

namespace dadg {

/// A d-dimensional control function K -> D(K) on one groupoid, with the
/// level-d covers that witness it.
///
/// D is given by a rule; the covers are found by searching for a (K, D(K))
/// witness with at most d+1 classes, and a failed search means the rule is
/// not a control function at that K. Results are memoised per K and level.
/// Copies share the memo table. The groupoid must outlive the object.
class ControlFunction {
 public:
  using Rule = std::function<ArrowSet(const ArrowSet&)>;

  ControlFunction(const Groupoid& g, int d, Rule rule, SearchMode mode = SearchMode::exact);

  /// D(K) = union of the subgroupoids generated by the witness found on the
  /// power schedule K, K^2, ... (units included). This is the tightest bound
  /// the search exposes; it need not contain K itself.
  static ControlFunction discovered(const Groupoid& g, int d, SearchMode mode = SearchMode::exact);

  const Groupoid& groupoid() const { return *g_; }
  int dimension() const { return d_; }
  SearchMode mode() const { return mode_; }

  /// D(K).
  ArrowSet base(const ArrowSet& k) const;
  /// Level-d cover (d+1 classes, 1-fold) with generated(K, U_i) in D(K).
  Cover base_cover(const ArrowSet& k) const;

 private:
  friend ArrowSet control_apply(const ControlFunction&, const ArrowSet&, int);
  friend Cover cover_at(const ControlFunction&, const ArrowSet&, int);

  struct Memo {
    std::mutex mutex;
    std::map<ArrowSet, ArrowSet> base;
    std::map<ArrowSet, Cover> base_cover;
    std::map<std::pair<int, ArrowSet>, ArrowSet> level;
    std::map<std::pair<int, ArrowSet>, Cover> level_cover;
  };

  const Groupoid* g_;
  int d_;
  Rule rule_;
  SearchMode mode_;
  std::shared_ptr<Memo> memo_;
};

/// D^{(d)} = D, D^{(k+1)}(K) = K D^{(k)}(K^3) K. Throws when k < d.
ArrowSet control_apply(const ControlFunction& dfun, const ArrowSet& k, int level);

struct OstrandLift {
  Cover cover;                   // k+2 classes, (k+2-d)-fold
  Cover source;                  // level-k cover for K^3 that was lifted
  Cover shrunk;                  // after greedy n-fold pruning
  std::vector<UnitSet> saturated;      // K V_i
  std::vector<std::uint32_t> residual_label;  // unit -> subset S (bitmask) for residual points, else 0
};

/// One lifting step: from the level-k cover for K^3 to a level-(k+1) cover
/// for K. Classes 0..k are K U_i; class k+1 is the union over subsets S of
/// size k+1-d of (intersection of V_j, j in S) minus (union of K V_i, i not in
/// S). Both the input and the output are verified; throws
/// std::invalid_argument if the level-k cover fails and std::logic_error if
/// the lifted one does.
OstrandLift ostrand_lift(const ControlFunction& dfun, const ArrowSet& k, int level);

/// Level-k cover for K: the base cover at k == d, else the lift of the
/// level-(k-1) cover for K^3.
Cover cover_at(const ControlFunction& dfun, const ArrowSet& k, int level);

}  // namespace dadg
