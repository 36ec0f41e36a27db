#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "dadg/builders.hpp"

namespace oracle {

using dadg::Groupoid;

Ids to_ids(const dadg::ArrowSet& s) {
  auto v = s.ids();
  return {v.begin(), v.end()};
}

Ids to_ids(const dadg::UnitSet& s) {
  auto v = s.ids();
  return {v.begin(), v.end()};
}

Ids compose(const Groupoid& g, const Ids& a, const Ids& b) {
  Ids out;
  for (auto x : a)
    for (auto y : b)
      if (g.src(x) == g.rng(y)) out.insert(g.compose(x, y));
  return out;
}

Ids power(const Groupoid& g, const Ids& k, unsigned n) {
  Ids out;
  for (std::uint32_t u = 0; u < g.n_units(); ++u) out.insert(u);
  for (unsigned i = 0; i < n; ++i) out = compose(g, k, out);
  return out;
}

Ids generated(const Groupoid& g, const Ids& k, const Ids& u) {
  Ids letters;
  for (auto a : k)
    if (u.count(g.src(a)) && u.count(g.rng(a))) {
      letters.insert(a);
      letters.insert(g.inv(a));
    }
  Ids words = letters;
  for (;;) {
    Ids next = words;
    for (auto w : words)
      for (auto l : letters)
        if (g.src(w) == g.rng(l)) next.insert(g.compose(w, l));
    if (next.size() == words.size()) return words;
    words = std::move(next);
  }
}

std::size_t fold(const std::vector<Ids>& classes, const Ids& base) {
  std::size_t best = classes.size();
  for (auto x : base) {
    std::size_t c = 0;
    for (const auto& u : classes) c += u.count(x);
    best = std::min(best, c);
  }
  return best;
}

bool subfamilies_cover(const std::vector<Ids>& classes, const Ids& base, std::size_t n) {
  const std::size_t k1 = classes.size();
  const std::size_t size = k1 + 1 - n;
  // walk all index subsets of the given size
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    if (pick.size() == size) {
      for (auto x : base) {
        bool hit = false;
        for (auto i : pick) hit = hit || classes[i].count(x);
        if (!hit) return false;
      }
      return true;
    }
    for (std::size_t i = start; i < k1; ++i) {
      pick.push_back(i);
      const bool ok = rec(i + 1);
      pick.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  if (size > k1) return true;
  return rec(0);
}

SearchResult exact_dad(const Groupoid& g, const Ids& k, const Ids& l, int d_max) {
  Ids endpoints;
  for (auto a : k) {
    endpoints.insert(g.src(a));
    endpoints.insert(g.rng(a));
  }
  const std::vector<std::uint32_t> w(endpoints.begin(), endpoints.end());
  const std::size_t n = w.size();
  std::vector<bool> inside(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < inside.size(); ++mask) {
    Ids u;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) u.insert(w[i]);
    const Ids h = generated(g, k, u);
    inside[mask] = std::includes(l.begin(), l.end(), h.begin(), h.end());
  }

  SearchResult out;
  for (int d = 0; d <= d_max && out.d < 0; ++d) {
    const std::size_t colours = static_cast<std::size_t>(d) + 1;
    const std::size_t options = (std::size_t{1} << colours) - 1;
    std::vector<std::size_t> choice(n, 0);
    for (;;) {
      std::vector<std::size_t> class_mask(colours, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < colours; ++c)
          if ((choice[i] + 1) >> c & 1) class_mask[c] |= std::size_t{1} << i;
      bool ok = true;
      for (auto m : class_mask) ok = ok && inside[m];
      if (ok) {
        out.d = d;
        break;
      }
      std::size_t i = 0;
      while (i < n && ++choice[i] == options) choice[i++] = 0;
      if (i == n) break;
    }
  }
  if (out.d < 0) return out;

  // least restricted-growth colouring, most significant position first
  const std::size_t colours = static_cast<std::size_t>(out.d) + 1;
  std::vector<std::uint32_t> col(n, 0);
  std::function<bool(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t used) -> bool {
    if (i == n) {
      std::vector<std::size_t> class_mask(colours, 0);
      for (std::size_t j = 0; j < n; ++j) class_mask[col[j]] |= std::size_t{1} << j;
      for (auto m : class_mask)
        if (!inside[m]) return false;
      return true;
    }
    for (std::uint32_t c = 0; c < std::min<std::uint32_t>(static_cast<std::uint32_t>(colours), used + 1); ++c) {
      col[i] = c;
      if (rec(i + 1, std::max(used, c + 1))) return true;
    }
    return false;
  };
  if (rec(0, 0)) out.colouring = col;
  return out;
}

int exact_asdim(const dadg::Gauge& e, const dadg::Gauge& f, int d_max) {
  const std::uint32_t n = static_cast<std::uint32_t>(e.n_points());
  for (int d = 0; d <= d_max; ++d) {
    const std::uint32_t colours = static_cast<std::uint32_t>(d) + 1;
    std::vector<std::uint32_t> col(n, 0);
    for (;;) {
      std::vector<std::uint32_t> parent(n);
      for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
      std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
      };
      for (std::uint32_t p = 0; p < n; ++p)
        for (std::uint32_t q = p + 1; q < n; ++q)
          if (col[p] == col[q] && e.related(p, q)) parent[find(p)] = find(q);
      bool ok = true;
      for (std::uint32_t p = 0; p < n && ok; ++p)
        for (std::uint32_t q = p + 1; q < n && ok; ++q)
          if (find(p) == find(q) && !f.related(p, q)) ok = false;
      if (ok) return d;
      std::uint32_t i = 0;
      while (i < n && ++col[i] == colours) col[i++] = 0;
      if (i == n) break;
    }
  }
  return -1;
}

std::vector<std::vector<std::uint32_t>> graph_distances(
    std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::vector<std::uint32_t>> dist(n, std::vector<std::uint32_t>(n, ~std::uint32_t{0}));
  for (std::uint32_t s = 0; s < n; ++s) {
    std::deque<std::uint32_t> q{s};
    dist[s][s] = 0;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      for (auto w : adj[v])
        if (dist[s][w] == ~std::uint32_t{0}) {
          dist[s][w] = dist[s][v] + 1;
          q.push_back(w);
        }
    }
  }
  return dist;
}

Ids random_subset(std::mt19937_64& rng, std::uint32_t n, double p) {
  std::bernoulli_distribution keep(p);
  Ids out;
  for (std::uint32_t i = 0; i < n; ++i)
    if (keep(rng)) out.insert(i);
  return out;
}

std::vector<std::pair<std::string, Groupoid>> random_instances(std::mt19937_64& rng, std::size_t count,
                                                               std::uint32_t max_arrows) {
  std::vector<std::pair<std::string, Groupoid>> out;
  auto pick = [&](std::uint32_t lo, std::uint32_t hi) { return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng); };
  while (out.size() < count) {
    const auto kind = pick(0, 8);
    std::string name;
    Groupoid g;
    switch (kind) {
      case 0: {
        const auto n = pick(1, 14), b = pick(1, 6);
        const auto seed = rng();
        name = "random_principal(" + std::to_string(n) + "," + std::to_string(b) + ")";
        g = dadg::random_principal(n, b, seed);
        break;
      }
      case 1: {
        const auto n = pick(1, 14);
        name = "rotation(" + std::to_string(n) + ")";
        g = dadg::action_groupoid(dadg::cyclic_rotation(n));
        break;
      }
      case 2: {
        const auto o = pick(1, 4), p = pick(1, 10);
        name = "trivial_action(" + std::to_string(o) + "," + std::to_string(p) + ")";
        g = dadg::action_groupoid(dadg::trivial_action(o, p));
        break;
      }
      case 3: {
        const auto n = pick(1, 14);
        name = "shift(" + std::to_string(n) + ")";
        g = dadg::partial_action_groupoid(dadg::PartialActionSpec::integer_shift(n));
        break;
      }
      case 4: {
        const auto a = pick(1, 7), b = pick(1, 7);
        name = "disjoint(" + std::to_string(a) + "," + std::to_string(b) + ")";
        g = dadg::disjoint_union(dadg::pair_groupoid(a), dadg::pair_groupoid(b)).groupoid;
        break;
      }
      case 5: {
        const auto n = pick(1, 4), c = pick(1, 3);
        name = "blowup(" + std::to_string(n) + "," + std::to_string(c) + ")";
        g = dadg::blowup(dadg::pair_groupoid(n), dadg::uniform_cover_map(n, c)).groupoid;
        break;
      }
      case 6: {
        const auto a = pick(1, 4), b = pick(1, 4);
        name = "pair_x_rotation(" + std::to_string(a) + "," + std::to_string(b) + ")";
        g = dadg::product(dadg::pair_groupoid(a), dadg::action_groupoid(dadg::cyclic_rotation(b))).groupoid;
        break;
      }
      case 7: {
        const auto d = pick(0, 2);
        name = "binary(" + std::to_string(d) + ")";
        g = dadg::binary_tree_window(d).groupoid;
        break;
      }
      default: {
        const auto o = pick(1, 12);
        name = "group(" + std::to_string(o) + ")";
        g = dadg::action_groupoid(dadg::trivial_action(o, 1));
        break;
      }
    }
    if (g.n_arrows() <= max_arrows) out.emplace_back(std::move(name), std::move(g));
  }
  return out;
}

}  // namespace oracle
