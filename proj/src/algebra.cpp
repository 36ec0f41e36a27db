#include "dadg/algebra.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "dadg/union_find.hpp"

namespace dadg {

ArrowSet compose_sets(const Groupoid& g, const ArrowSet& a, const ArrowSet& b) {
  g.require_owner(a);
  g.require_owner(b);
  ArrowSet out = g.empty_arrows();
  a.for_each([&](ArrowId x) {
    for (ArrowId y : g.range_fiber(g.src(x)))
      if (b.contains(y)) out.insert(g.compose(x, y));
  });
  return out;
}

ArrowSet symmetrize(const Groupoid& g, const ArrowSet& k) {
  g.require_owner(k);
  ArrowSet out = k | g.unit_arrows();
  k.for_each([&](ArrowId a) { out.insert(g.inv(a)); });
  return out;
}

bool is_oc_normal(const Groupoid& g, const ArrowSet& k) { return symmetrize(g, k) == k; }

ArrowSet power(const Groupoid& g, const ArrowSet& k, unsigned n) {
  g.require_owner(k);
  ArrowSet p = g.unit_arrows();
  for (unsigned i = 0; i < n; ++i) {
    ArrowSet next = compose_sets(g, k, p);
    if (next == p) break;
    p = std::move(next);
  }
  return p;
}

bool extend_closure(const Groupoid& g, ArrowSet& gens, ArrowSet& closure,
                    const std::vector<ArrowId>& fresh, const ArrowSet* bound) {
  std::vector<ArrowId> queue;
  auto admit = [&](ArrowId x) {
    if (closure.contains(x)) return true;
    closure.insert(x);
    queue.push_back(x);
    return bound == nullptr || bound->contains(x);
  };
  for (ArrowId a : fresh) {
    gens.insert(a);
    gens.insert(g.inv(a));
  }
  for (ArrowId a : fresh) {
    if (!admit(a) || !admit(g.inv(a))) return false;
  }
  while (!queue.empty()) {
    const ArrowId x = queue.back();
    queue.pop_back();
    // s * x with src(s) == rng(x)
    for (ArrowId s : g.source_fiber(g.rng(x)))
      if (gens.contains(s) && !admit(g.compose(s, x))) return false;
    // x * s with rng(s) == src(x)
    for (ArrowId s : g.range_fiber(g.src(x)))
      if (gens.contains(s) && !admit(g.compose(x, s))) return false;
  }
  return true;
}

ArrowSet generated(const Groupoid& g, const ArrowSet& seed) {
  g.require_owner(seed);
  ArrowSet gens = g.empty_arrows();
  ArrowSet closure = g.empty_arrows();
  extend_closure(g, gens, closure, seed.ids(), nullptr);
  return closure;
}

ArrowSet generated(const Groupoid& g, const ArrowSet& k, const UnitSet& u) {
  return generated(g, k & g.arrows_over(u));
}

ArrowSet Restriction::to_child(const ArrowSet& parent) const {
  ArrowSet out = groupoid.empty_arrows();
  parent.for_each([&](ArrowId a) {
    if (a < child_arrow.size() && child_arrow[a] != kNone) out.insert(child_arrow[a]);
  });
  return out;
}

UnitSet Restriction::to_child(const UnitSet& parent) const {
  UnitSet out = groupoid.empty_units();
  parent.for_each([&](UnitId u) {
    if (u < child_unit.size() && child_unit[u] != kNone) out.insert(child_unit[u]);
  });
  return out;
}

ArrowSet Restriction::to_parent(const ArrowSet& child, const Groupoid& parent) const {
  groupoid.require_owner(child);
  ArrowSet out = parent.empty_arrows();
  child.for_each([&](ArrowId a) { out.insert(parent_arrow[a]); });
  return out;
}

UnitSet Restriction::to_parent(const UnitSet& child, const Groupoid& parent) const {
  groupoid.require_owner(child);
  UnitSet out = parent.empty_units();
  child.for_each([&](UnitId u) { out.insert(parent_unit[u]); });
  return out;
}

Restriction restrict(const Groupoid& g, const UnitSet& a) {
  g.require_owner(a);
  Restriction r;
  r.child_unit.assign(g.n_units(), Restriction::kNone);
  r.child_arrow.assign(g.n_arrows(), Restriction::kNone);
  a.for_each([&](UnitId u) {
    r.child_unit[u] = static_cast<UnitId>(r.parent_unit.size());
    r.parent_unit.push_back(u);
  });
  const ArrowSet over = g.arrows_over(a);
  over.for_each([&](ArrowId x) {
    r.child_arrow[x] = static_cast<ArrowId>(r.parent_arrow.size());
    r.parent_arrow.push_back(x);
  });

  GroupoidTables t;
  t.n_units = static_cast<std::uint32_t>(r.parent_unit.size());
  for (ArrowId x : r.parent_arrow) {
    t.src.push_back(r.child_unit[g.src(x)]);
    t.rng.push_back(r.child_unit[g.rng(x)]);
    t.inv.push_back(r.child_arrow[g.inv(x)]);
  }
  for (ArrowId x : r.parent_arrow) {
    if (g.is_unit(x)) continue;
    for (ArrowId y : g.range_fiber(g.src(x))) {
      if (g.is_unit(y) || r.child_arrow[y] == Restriction::kNone) continue;
      t.comp.push_back({r.child_arrow[x], r.child_arrow[y], r.child_arrow[g.compose(x, y)]});
    }
  }
  r.groupoid = Groupoid::from_tables(t);
  return r;
}

namespace {

std::vector<std::vector<UnitId>> blocks_of(UnionFind& uf, const std::vector<UnitId>& members) {
  std::map<std::uint32_t, std::vector<UnitId>> by_root;
  for (UnitId u : members) by_root[uf.find(u)].push_back(u);
  std::vector<std::vector<UnitId>> out;
  for (auto& [root, block] : by_root) out.push_back(std::move(block));
  std::sort(out.begin(), out.end());  // members are ascending, so this orders by minimum
  return out;
}

}  // namespace

std::vector<std::vector<UnitId>> orbits(const Groupoid& g) {
  UnionFind uf(g.n_units());
  for (ArrowId a = 0; a < g.n_arrows(); ++a) uf.unite(g.src(a), g.rng(a));
  std::vector<UnitId> all(g.n_units());
  for (UnitId u = 0; u < g.n_units(); ++u) all[u] = u;
  return blocks_of(uf, all);
}

std::vector<std::vector<UnitId>> orbits(const Groupoid& g, const ArrowSet& h) {
  g.require_owner(h);
  UnionFind uf(g.n_units());
  UnitSet touched = g.empty_units();
  h.for_each([&](ArrowId a) {
    uf.unite(g.src(a), g.rng(a));
    touched.insert(g.src(a));
    touched.insert(g.rng(a));
  });
  return blocks_of(uf, touched.ids());
}

bool is_principal(const Groupoid& g) {
  for (ArrowId a = g.n_units(); a < g.n_arrows(); ++a)
    if (g.src(a) == g.rng(a)) return false;
  return true;
}

UnitSet fundamental_domain(const Groupoid& g) {
  if (!is_principal(g)) throw std::invalid_argument("fundamental_domain: groupoid is not principal");
  UnitSet y = g.empty_units();
  for (const auto& block : orbits(g)) y.insert(block.front());
  return y;
}

}  // namespace dadg
