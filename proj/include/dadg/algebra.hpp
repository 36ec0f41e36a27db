#pragma once

#include <vector>

#include "dadg/groupoid.hpp"

namespace dadg {

/// {a*b : a in A, b in B, src(a) == rng(b)}.
ArrowSet compose_sets(const Groupoid& g, const ArrowSet& a, const ArrowSet& b);

/// K with its inverses, the endpoints of its arrows, and all of G^0.
ArrowSet symmetrize(const Groupoid& g, const ArrowSet& k);

/// True when K == K u K^-1 u s(K) u r(K) and G^0 is contained in K.
bool is_oc_normal(const Groupoid& g, const ArrowSet& k);

/// K^0 = G^0, K^{n+1} = K * K^n.
ArrowSet power(const Groupoid& g, const ArrowSet& k, unsigned n);

/// Subgroupoid generated by K restricted to arrows with both ends in U.
ArrowSet generated(const Groupoid& g, const ArrowSet& k, const UnitSet& u);

/// Subgroupoid generated by an arbitrary seed.
ArrowSet generated(const Groupoid& g, const ArrowSet& seed);

/// Incremental closure engine shared by generated() and the witness search.
///
/// `closure` must already be closed under the generators in `gens`. Adds the
/// new generators `fresh` (and their inverses) to `gens` and grows `closure`
/// to the subgroupoid generated by the enlarged set. When `bound` is non-null
/// the growth stops as soon as an element outside it is produced; the return
/// value is false in that case and `closure` is left partially grown.
bool extend_closure(const Groupoid& g, ArrowSet& gens, ArrowSet& closure,
                    const std::vector<ArrowId>& fresh, const ArrowSet* bound);

struct Restriction {
  Groupoid groupoid;
  std::vector<ArrowId> parent_arrow;  // sub arrow id -> parent arrow id
  std::vector<UnitId> parent_unit;    // sub unit id -> parent unit id
  std::vector<ArrowId> child_arrow;   // parent arrow id -> sub id or kNone
  std::vector<UnitId> child_unit;     // parent unit id -> sub id or kNone

  static constexpr std::uint32_t kNone = ~std::uint32_t{0};

  /// Parent set intersected with the restriction, re-indexed.
  ArrowSet to_child(const ArrowSet& parent) const;
  UnitSet to_child(const UnitSet& parent) const;
  ArrowSet to_parent(const ArrowSet& child, const Groupoid& parent) const;
  UnitSet to_parent(const UnitSet& child, const Groupoid& parent) const;
};

/// G|_A. Units and arrows keep their relative order.
Restriction restrict(const Groupoid& g, const UnitSet& a);

/// Orbit partition of the units, each block sorted, blocks ordered by minimum.
std::vector<std::vector<UnitId>> orbits(const Groupoid& g);

/// Orbits of the subgroupoid H (an arrow set closed under composition and
/// inversion) on the units it touches.
std::vector<std::vector<UnitId>> orbits(const Groupoid& g, const ArrowSet& h);

bool is_principal(const Groupoid& g);

/// One unit per orbit (the minimum id). Throws for non-principal groupoids.
UnitSet fundamental_domain(const Groupoid& g);

}  // namespace dadg
