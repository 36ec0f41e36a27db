#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "dadg/groupoid.hpp"

namespace dadg {

/// Symmetric reflexive relation on points 0..n-1, one bit row per point.
class Gauge {
 public:
  Gauge() = default;
  explicit Gauge(std::size_t n);

  static Gauge diagonal(std::size_t n) { return Gauge(n); }

  std::size_t n_points() const { return rows_.size(); }
  bool related(std::uint32_t p, std::uint32_t q) const { return rows_[p].test(q); }
  const boost::dynamic_bitset<>& row(std::uint32_t p) const { return rows_[p]; }
  /// Adds (p,q) and (q,p).
  void relate(std::uint32_t p, std::uint32_t q);

  bool is_subset_of(const Gauge& o) const;
  /// Number of unordered pairs p < q that are related.
  std::size_t off_diagonal_pairs() const;
  /// Relation induced on the listed points, re-indexed in list order.
  Gauge restrict_to(const std::vector<std::uint32_t>& points) const;

  friend bool operator==(const Gauge&, const Gauge&) = default;

 private:
  std::vector<boost::dynamic_bitset<>> rows_;
};

/// Finite point set with named gauges. `labels` records what each point is
/// (an arrow id for groupoid spaces, a position for abstract ones).
struct CoarseSpace {
  std::vector<std::uint32_t> labels;
  std::map<std::string, Gauge> gauges;

  std::size_t size() const { return labels.size(); }
};

/// {(g,h) : r(g) = r(h), g^-1 h in K} plus the diagonal, on all arrows of G.
/// K must be symmetric with units.
Gauge gauge_from(const Groupoid& g, const ArrowSet& k);

/// The range fibre G^x with the named gauge sets restricted to it. Point p
/// is the p-th arrow of range_fiber(x).
CoarseSpace fiber(const Groupoid& g, UnitId x, const std::map<std::string, ArrowSet>& gauge_sets);

/// Points 0..n-1 on a line, related when |i-j| <= r.
Gauge line_gauge(std::uint32_t n, std::uint32_t r);
/// Points of a w x h grid (id = row*w + col), related when the l1 distance is <= r.
Gauge grid_gauge(std::uint32_t w, std::uint32_t h, std::uint32_t r);
/// Points 0..n-1 on a cycle, related when the cyclic distance is <= r.
Gauge cycle_gauge(std::uint32_t n, std::uint32_t r);

/// families[i][j] is the j-th member of family i, a sorted list of points.
struct Decomposition {
  std::vector<std::vector<std::vector<std::uint32_t>>> families;

  int d() const { return static_cast<int>(families.size()) - 1; }
};

struct AsdimCheck {
  bool ok = false;
  std::string reason;
};

/// The members of all families cover every point, each member is
/// F-bounded (all pairs related), and within each family points of distinct
/// members are never E-related.
AsdimCheck ef_asdim_check(const Gauge& e, const Gauge& f, const Decomposition& dec);

enum class AsdimMode { exact, greedy, automatic };

/// Point count up to which automatic mode runs the exact search.
inline constexpr std::size_t kExactAsdimLimit = 24;

/// Looks for an (E,F) decomposition with the fewest families, d = 0..d_max.
///
/// Points are coloured by family; the members of a family are the
/// E-connected components of its colour class, which must be F-bounded.
/// Exact mode backtracks over colourings in increasing point order and
/// returns the least one up to renaming of colours; greedy gives each point
/// the first feasible colour. Members are listed by smallest point.
std::optional<Decomposition> ef_asdim_search(const Gauge& e, const Gauge& f, int d_max,
                                             AsdimMode mode = AsdimMode::automatic);

}  // namespace dadg
