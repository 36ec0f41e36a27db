#include "dadg/treeable.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "dadg/algebra.hpp"

namespace dadg {

TreeableCheck verify_treeable(const Groupoid& g, const ArrowSet& q) {
  g.require_owner(q);
  TreeableCheck out;
  constexpr auto kUnseen = ~std::uint32_t{0};
  out.length.assign(g.n_arrows(), kUnseen);
  out.word.assign(g.n_arrows(), {});
  bool bad = false;
  q.for_each([&](ArrowId a) {
    if (bad) return;
    if (g.is_unit(a)) {
      out.reason = "graphing contains the unit " + std::to_string(a);
      bad = true;
    } else if (!q.contains(g.inv(a))) {
      out.reason = "graphing is not symmetric at arrow " + std::to_string(a);
      bad = true;
    }
  });
  if (bad) return out;

  for (UnitId x = 0; x < g.n_units(); ++x) {
    // state: arrow reached and the last letter used (kUnseen at the start)
    std::deque<std::pair<ArrowId, ArrowId>> queue{{x, kUnseen}};
    out.length[x] = 0;
    while (!queue.empty()) {
      auto [a, last] = queue.front();
      queue.pop_front();
      for (ArrowId l : g.range_fiber(g.src(a))) {
        if (!q.contains(l) || (last != kUnseen && l == g.inv(last))) continue;
        const ArrowId b = g.compose(a, l);
        if (out.length[b] != kUnseen) {
          out.reason = g.is_unit(b) ? "a nontrivial reduced word returns to unit " + std::to_string(b)
                                    : "arrow " + std::to_string(b) + " has two reduced words";
          return out;
        }
        out.length[b] = out.length[a] + 1;
        out.word[b] = out.word[a];
        out.word[b].push_back(l);
        queue.emplace_back(b, l);
      }
    }
  }
  for (ArrowId a = 0; a < g.n_arrows(); ++a)
    if (out.length[a] == kUnseen) {
      out.reason = "graphing does not generate arrow " + std::to_string(a);
      return out;
    }
  out.ok = true;
  return out;
}

TreeableCover treeable_cover(const Groupoid& g, const ArrowSet& q, std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("treeable_cover: N must be positive");
  const auto tc = verify_treeable(g, q);
  if (!tc.ok) throw std::invalid_argument("treeable_cover: graphing is not treeable: " + tc.reason);

  TreeableCover out;
  out.n = n;
  out.decomposition.families.resize(2);
  auto dist = [&](ArrowId a, ArrowId b) { return tc.length[g.compose(g.inv(a), b)]; };

  for (UnitId x = 0; x < g.n_units(); ++x) {
    std::map<std::pair<std::uint32_t, std::vector<ArrowId>>, std::size_t> index;
    std::vector<std::vector<ArrowId>> classes;
    std::vector<std::uint32_t> annulus;
    for (ArrowId a : g.range_fiber(x)) {
      const std::uint32_t k = tc.length[a] / n;
      const std::size_t keep = k == 0 ? 0 : static_cast<std::size_t>(n) * (k - 1);
      std::vector<ArrowId> prefix(tc.word[a].begin(), tc.word[a].begin() + static_cast<std::ptrdiff_t>(keep));
      auto [it, fresh] = index.try_emplace({k, std::move(prefix)}, classes.size());
      if (fresh) {
        classes.emplace_back();
        annulus.push_back(k);
      }
      classes[it->second].push_back(a);
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
      std::uint32_t diam = 0;
      for (ArrowId a : classes[i])
        for (ArrowId b : classes[i]) diam = std::max(diam, dist(a, b));
      out.rows.push_back({static_cast<std::uint32_t>(out.rows.size()), annulus[i],
                          static_cast<std::uint32_t>(classes[i].size()), diam});
      out.max_diameter = std::max(out.max_diameter, diam);
      for (std::size_t j = i + 1; j < classes.size(); ++j) {
        if (annulus[i] % 2 != annulus[j] % 2) continue;
        auto& sep = annulus[i] == annulus[j] ? out.min_separation_same_annulus : out.min_separation_other_annulus;
        for (ArrowId a : classes[i])
          for (ArrowId b : classes[j]) sep = std::min(sep, dist(a, b));
      }
      out.decomposition.families[annulus[i] % 2].push_back(classes[i]);
    }
  }
  for (auto& fam : out.decomposition.families) std::sort(fam.begin(), fam.end());

  const ArrowSet ball = power(g, symmetrize(g, q), n);
  const ArrowSet big = power(g, ball, 4);
  out.certificate = ef_asdim_check(gauge_from(g, ball), gauge_from(g, big), out.decomposition);
  return out;
}

}  // namespace dadg
