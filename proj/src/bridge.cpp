#include "dadg/bridge.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dadg/parallel.hpp"
#include "dadg/union_find.hpp"

namespace dadg {

DadToAsdim dad_to_asdim(const Groupoid& g, const DadWitness& w) {
  if (!w.certified || !kl_dad_check(g, w.k, w.l, w.cover).certified)
    throw std::invalid_argument("dad_to_asdim: witness is not certified");
  DadToAsdim out;
  out.e_set = w.k;
  out.f_set = symmetrize(g, w.generated_union());

  for (std::size_t i = 0; i < w.cover.classes.size(); ++i) {
    const UnitSet& u = w.cover.classes[i];
    const ArrowSet& hi = w.generated_per_class[i];
    UnionFind uf(g.n_arrows());
    for (UnitId x = 0; x < g.n_units(); ++x) {
      const auto& fib = g.range_fiber(x);
      for (std::size_t a = 0; a < fib.size(); ++a) {
        if (!u.contains(g.src(fib[a]))) continue;
        for (std::size_t b = a + 1; b < fib.size(); ++b)
          if (u.contains(g.src(fib[b])) && hi.contains(g.compose(g.inv(fib[a]), fib[b]))) uf.unite(fib[a], fib[b]);
      }
    }
    std::map<std::uint32_t, std::vector<std::uint32_t>> members;
    for (ArrowId a = 0; a < g.n_arrows(); ++a)
      if (u.contains(g.src(a))) members[uf.find(a)].push_back(a);
    std::vector<std::vector<std::uint32_t>> family;
    for (auto& [root, m] : members) {
      for (ArrowId a : m)
        for (ArrowId b : m)
          if (!hi.contains(g.compose(g.inv(a), b)))
            throw std::logic_error("dad_to_asdim: relation for class " + std::to_string(i) +
                                   " is not transitive at arrows " + std::to_string(a) + ", " + std::to_string(b));
      family.push_back(std::move(m));
    }
    std::sort(family.begin(), family.end());
    out.decomposition.families.push_back(std::move(family));
  }
  out.certificate = ef_asdim_check(gauge_from(g, out.e_set), gauge_from(g, out.f_set), out.decomposition);
  return out;
}

namespace {

std::vector<ArrowId> fibre_of(const Groupoid& g, const ArrowSet& h, UnitId x) {
  std::vector<ArrowId> out;
  for (ArrowId a : g.range_fiber(x))
    if (h.contains(a)) out.push_back(a);
  return out;
}

}  // namespace

AsdimToDad asdim_to_dad(const Groupoid& g, const UnitSet& y, const ArrowSet& k, const ArrowSet& l, int d,
                        const std::vector<FibreDecomposition>& fibres) {
  if (d < 0) throw std::invalid_argument("asdim_to_dad: d must be non-negative");
  if (!is_principal(g)) throw std::invalid_argument("asdim_to_dad: groupoid is not principal");
  g.require_owner(y);
  g.require_owner(k);
  g.require_owner(l);
  if (!is_oc_normal(g, k)) throw std::invalid_argument("asdim_to_dad: K must be symmetric with units");

  const ArrowSet h = generated(g, k, y);
  constexpr auto kNoLabel = ~std::uint32_t{0};
  std::vector<std::uint32_t> label(g.n_arrows(), kNoLabel), block(g.n_arrows(), kNoLabel);
  std::map<UnitId, const FibreDecomposition*> by_unit;
  for (const auto& f : fibres) {
    if (!y.contains(f.unit)) throw std::invalid_argument("asdim_to_dad: decomposition for a unit outside Y");
    if (!by_unit.emplace(f.unit, &f).second)
      throw std::invalid_argument("asdim_to_dad: two decompositions for unit " + std::to_string(f.unit));
  }
  std::uint32_t next_block = 0;
  y.for_each([&](UnitId x) {
    auto it = by_unit.find(x);
    if (it == by_unit.end()) throw std::invalid_argument("asdim_to_dad: no decomposition for unit " + std::to_string(x));
    const auto& blocks = it->second->blocks;
    if (blocks.size() > static_cast<std::size_t>(d) + 1)
      throw std::invalid_argument("asdim_to_dad: fibre " + std::to_string(x) + " uses more than d+1 families");
    for (std::uint32_t i = 0; i < blocks.size(); ++i) {
      for (const auto& dij : blocks[i]) {
        for (ArrowId a : dij) {
          if (a >= g.n_arrows() || !h.contains(a) || g.rng(a) != x)
            throw std::invalid_argument("asdim_to_dad: fibre " + std::to_string(x) + " block names arrow " +
                                        std::to_string(a) + " outside H^x");
          if (label[a] != kNoLabel)
            throw std::invalid_argument("asdim_to_dad: arrow " + std::to_string(a) + " lies in two blocks");
          label[a] = i;
          block[a] = next_block;
        }
        for (ArrowId a : dij)
          for (ArrowId b : dij)
            if (!l.contains(g.compose(g.inv(a), b)))
              throw std::invalid_argument("asdim_to_dad: fibre " + std::to_string(x) + " block has D^-1 D outside L at " +
                                          std::to_string(a) + ", " + std::to_string(b));
        ++next_block;
      }
    }
    for (ArrowId a : fibre_of(g, h, x)) {
      if (label[a] == kNoLabel)
        throw std::invalid_argument("asdim_to_dad: fibre " + std::to_string(x) + " misses arrow " + std::to_string(a));
      for (ArrowId b : fibre_of(g, h, x))
        if (label[b] == label[a] && block[b] != block[a] && k.contains(g.compose(g.inv(a), b)))
          throw std::invalid_argument("asdim_to_dad: fibre " + std::to_string(x) + " blocks are not K-disjoint at " +
                                      std::to_string(a) + ", " + std::to_string(b));
    }
  });

  AsdimToDad out{restrict(g, y), h, g.empty_units(), {}, {}, {}};
  for (const auto& orbit : orbits(g, h))
    if (y.contains(orbit.front())) out.fundamental_domain.insert(orbit.front());
  out.classes.assign(static_cast<std::size_t>(d) + 1, g.empty_units());
  h.for_each([&](ArrowId a) {
    if (out.fundamental_domain.contains(g.rng(a)) && y.contains(g.src(a))) out.classes[label[a]].insert(g.src(a));
  });

  const auto& r = out.restriction;
  std::vector<UnitSet> child;
  for (const auto& u : out.classes) child.push_back(r.to_child(u));
  out.witness = kl_dad_check(r.groupoid, r.to_child(k), r.to_child(l), make_cover(r.groupoid, std::move(child)));
  if (out.witness.certified) return out;

  // Locate the first generator g = (h')^-1 h that breaks the argument.
  auto lift = [&](UnitId s, std::uint32_t i) -> ArrowId {
    for (ArrowId a : g.source_fiber(s))
      if (h.contains(a) && label[a] == i && out.fundamental_domain.contains(g.rng(a))) return a;
    return kNoLabel;
  };
  for (std::uint32_t i = 0; i < out.classes.size() && out.message.empty(); ++i) {
    k.for_each([&](ArrowId a) {
      if (!out.message.empty() || !out.classes[i].contains(g.src(a)) || !out.classes[i].contains(g.rng(a))) return;
      const ArrowId hk = lift(g.src(a), i), hk2 = lift(g.rng(a), i);
      if (hk == kNoLabel || hk2 == kNoLabel || g.compose(g.inv(hk2), hk) != a || block[hk] != block[hk2])
        out.message = "class " + std::to_string(i) + ": step g=(h')^-1 h fails for arrow " + std::to_string(a) +
                      " (h=" + std::to_string(hk) + ", h'=" + std::to_string(hk2) + ")";
    });
  }
  if (out.message.empty()) out.message = "generated set escapes L";
  return out;
}

std::optional<std::vector<FibreDecomposition>> fibre_decompositions_by_search(const Groupoid& g, const UnitSet& y,
                                                                            const ArrowSet& k, const ArrowSet& l,
                                                                            int d_max, AsdimMode mode) {
  const ArrowSet h = generated(g, k, y);
  const auto units = y.ids();
  std::vector<std::optional<FibreDecomposition>> found(units.size());
  parallel_for(units.size(), [&](std::size_t idx) {
    const UnitId x = units[idx];
    const auto pts = fibre_of(g, h, x);
    Gauge e(pts.size()), f(pts.size());
    for (std::uint32_t i = 0; i < pts.size(); ++i)
      for (std::uint32_t j = i + 1; j < pts.size(); ++j) {
        const ArrowId q = g.compose(g.inv(pts[i]), pts[j]);
        if (k.contains(q)) e.relate(i, j);
        if (l.contains(q)) f.relate(i, j);
      }
    auto dec = ef_asdim_search(e, f, d_max, mode);
    if (!dec) return;
    FibreDecomposition fd{x, {}};
    for (const auto& fam : dec->families) {
      std::vector<std::vector<ArrowId>> blocks;
      for (const auto& m : fam) {
        std::vector<ArrowId> b;
        for (auto p : m) b.push_back(pts[p]);
        blocks.push_back(std::move(b));
      }
      fd.blocks.push_back(std::move(blocks));
    }
    found[idx] = std::move(fd);
  });
  std::vector<FibreDecomposition> out;
  for (auto& f : found) {
    if (!f) return std::nullopt;
    out.push_back(std::move(*f));
  }
  return out;
}

std::vector<FibreDecomposition> fibre_decompositions_from_ambient(const Groupoid& g, const UnitSet& y,
                                                                  const ArrowSet& k, const Decomposition& ambient) {
  const ArrowSet h = generated(g, k, y);
  std::vector<FibreDecomposition> out;
  y.for_each([&](UnitId x) {
    FibreDecomposition fd{x, {}};
    for (const auto& fam : ambient.families) {
      std::vector<std::vector<ArrowId>> blocks;
      for (const auto& m : fam) {
        std::vector<ArrowId> b;
        for (auto a : m)
          if (a < g.n_arrows() && g.rng(a) == x && h.contains(a)) b.push_back(a);
        if (!b.empty()) blocks.push_back(std::move(b));
      }
      fd.blocks.push_back(std::move(blocks));
    }
    out.push_back(std::move(fd));
  });
  return out;
}

}  // namespace dadg
