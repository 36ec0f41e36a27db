#include "dadg/builders.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace dadg {

ArrowId pair_arrow(std::uint32_t n, std::uint32_t i, std::uint32_t j) {
  if (i == j) return i;
  return n + i * (n - 1) + (j < i ? j : j - 1);
}

Groupoid pair_groupoid(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("pair_groupoid: n must be at least 1");
  GroupoidTables t;
  t.n_units = n;
  const std::uint32_t m = n * n;
  t.src.resize(m);
  t.rng.resize(m);
  t.inv.resize(m);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      const ArrowId a = pair_arrow(n, i, j);
      t.rng[a] = i;
      t.src[a] = j;
      t.inv[a] = pair_arrow(n, j, i);
    }
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::uint32_t k = 0; k < n; ++k) {
        if (k == j) continue;
        t.comp.push_back({pair_arrow(n, i, j), pair_arrow(n, j, k), pair_arrow(n, i, k)});
      }
    }
  return Groupoid::from_tables(t);
}

ActionSpec cyclic_rotation(std::uint32_t n) {
  ActionSpec a;
  a.n_points = n;
  a.table.assign(n, std::vector<std::uint32_t>(n));
  a.action.assign(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t g = 0; g < n; ++g)
    for (std::uint32_t h = 0; h < n; ++h) {
      a.table[g][h] = (g + h) % n;
      a.action[g][h] = (h + g) % n;
    }
  return a;
}

ActionSpec trivial_action(std::uint32_t group_order, std::uint32_t n_points) {
  ActionSpec a = cyclic_rotation(group_order);
  a.n_points = n_points;
  a.action.assign(group_order, std::vector<std::uint32_t>(n_points));
  for (auto& row : a.action)
    for (std::uint32_t x = 0; x < n_points; ++x) row[x] = x;
  return a;
}

PartialActionSpec PartialActionSpec::integer_shift(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("integer_shift: empty window");
  PartialActionSpec s;
  s.n_points = n;
  const int r = static_cast<int>(n) - 1;
  const std::uint32_t count = 2 * static_cast<std::uint32_t>(r) + 1;
  auto index = [](int k) -> std::uint32_t {
    if (k == 0) return 0;
    return k > 0 ? static_cast<std::uint32_t>(2 * k - 1) : static_cast<std::uint32_t>(-2 * k);
  };
  std::vector<int> value(count);
  for (int k = -r; k <= r; ++k) value[index(k)] = k;
  s.names.resize(count);
  s.inverse.resize(count);
  s.product.assign(count, std::vector<std::uint32_t>(count, kNoElement));
  s.theta.assign(count, std::vector<std::uint32_t>(n, kNoPoint));
  for (std::uint32_t e = 0; e < count; ++e) {
    const int k = value[e];
    s.names[e] = std::to_string(k);
    s.inverse[e] = index(-k);
    for (std::uint32_t f = 0; f < count; ++f) {
      const int sum = k + value[f];
      if (sum >= -r && sum <= r) s.product[e][f] = index(sum);
    }
    for (int x = 0; x <= r; ++x) {
      const int y = x + k;
      if (y >= 0 && y <= r) s.theta[e][static_cast<std::size_t>(x)] = static_cast<std::uint32_t>(y);
    }
  }
  return s;
}

PartialActionSpec PartialActionSpec::from_action(const ActionSpec& a) {
  PartialActionSpec s;
  const auto order = static_cast<std::uint32_t>(a.table.size());
  s.n_points = a.n_points;
  s.product = a.table;
  s.theta = a.action;
  s.names.resize(order);
  s.inverse.assign(order, kNoElement);
  for (std::uint32_t g = 0; g < order; ++g) {
    s.names[g] = std::to_string(g);
    for (std::uint32_t h = 0; h < order; ++h)
      if (h < a.table[g].size() && a.table[g][h] == 0) s.inverse[g] = h;
  }
  return s;
}

std::vector<std::string> check_partial_action(const PartialActionSpec& s) {
  std::vector<std::string> errs;
  const auto count = static_cast<std::uint32_t>(s.theta.size());
  const auto kNo = PartialActionSpec::kNoPoint;
  if (count == 0) return {"no group elements"};
  if (s.inverse.size() != count || s.product.size() != count) return {"table sizes differ"};
  for (std::uint32_t g = 0; g < count; ++g) {
    if (s.theta[g].size() != s.n_points || s.product[g].size() != count)
      return {"row size mismatch at element " + std::to_string(g)};
    if (s.inverse[g] >= count) return {"missing inverse for element " + std::to_string(g)};
    for (auto p : s.product[g])
      if (p != PartialActionSpec::kNoElement && p >= count) return {"product out of range"};
    for (auto y : s.theta[g])
      if (y != kNo && y >= s.n_points) return {"theta image out of range"};
  }
  for (std::uint32_t x = 0; x < s.n_points; ++x)
    if (s.theta[0][x] != x) errs.push_back("theta_1 is not the identity at point " + std::to_string(x));
  for (std::uint32_t g = 0; g < count; ++g) {
    if (s.product[0][g] != g || s.product[g][0] != g)
      errs.push_back("element 0 is not a two-sided identity for " + std::to_string(g));
    const auto gi = s.inverse[g];
    for (std::uint32_t y = 0; y < s.n_points; ++y) {
      const auto z = s.theta[g][y];
      if (z == kNo) continue;
      if (s.theta[gi][z] != y)
        errs.push_back("theta_" + s.names[gi] + " does not invert theta_" + s.names[g] + " at point " +
                       std::to_string(y));
    }
    for (std::uint32_t z = 0; z < s.n_points; ++z) {
      const auto y = s.theta[gi][z];
      if (y != kNo && s.theta[g][y] != z)
        errs.push_back("image of theta_" + s.names[g] + " differs from domain of its inverse at " +
                       std::to_string(z));
    }
  }
  // theta_{gh} extends theta_g o theta_h.
  for (std::uint32_t g = 0; g < count; ++g)
    for (std::uint32_t h = 0; h < count; ++h)
      for (std::uint32_t y = 0; y < s.n_points; ++y) {
        const auto z = s.theta[h][y];
        if (z == kNo) continue;
        const auto w = s.theta[g][z];
        if (w == kNo) continue;
        const auto gh = s.product[g][h];
        if (gh == PartialActionSpec::kNoElement) {
          errs.push_back("product " + s.names[g] + "*" + s.names[h] + " leaves the window but composes at point " +
                         std::to_string(y));
        } else if (s.theta[gh][y] != w) {
          errs.push_back("theta_" + s.names[gh] + " does not extend theta_" + s.names[g] + " o theta_" +
                         s.names[h] + " at point " + std::to_string(y));
        }
      }
  return errs;
}

Groupoid partial_action_groupoid(const PartialActionSpec& s) {
  auto errs = check_partial_action(s);
  if (!errs.empty()) throw std::invalid_argument("partial action axioms fail: " + errs.front());
  const auto count = static_cast<std::uint32_t>(s.theta.size());
  const auto kNo = PartialActionSpec::kNoPoint;
  std::vector<std::vector<ArrowId>> id(count, std::vector<ArrowId>(s.n_points, kNo));
  GroupoidTables t;
  t.n_units = s.n_points;
  for (std::uint32_t g = 0; g < count; ++g)
    for (std::uint32_t y = 0; y < s.n_points; ++y) {
      if (s.theta[g][y] == kNo) continue;
      id[g][y] = static_cast<ArrowId>(t.src.size());
      t.src.push_back(y);
      t.rng.push_back(s.theta[g][y]);
    }
  t.inv.resize(t.src.size());
  for (std::uint32_t g = 0; g < count; ++g)
    for (std::uint32_t y = 0; y < s.n_points; ++y) {
      if (id[g][y] == kNo) continue;
      t.inv[id[g][y]] = id[s.inverse[g]][s.theta[g][y]];
    }
  // (g, theta_h(y)) * (h, y) = (gh, y)
  for (std::uint32_t g = 1; g < count; ++g)
    for (std::uint32_t h = 1; h < count; ++h)
      for (std::uint32_t y = 0; y < s.n_points; ++y) {
        const auto z = s.theta[h][y];
        if (z == kNo || id[g][z] == kNo) continue;
        t.comp.push_back({id[g][z], id[h][y], id[s.product[g][h]][y]});
      }
  return Groupoid::from_tables(t);
}

Groupoid action_groupoid(const ActionSpec& a) {
  if (a.action.size() != a.table.size())
    throw std::invalid_argument("action_groupoid: one permutation per group element required");
  for (const auto& row : a.action) {
    std::vector<std::uint32_t> sorted = row;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t x = 0; x < sorted.size(); ++x)
      if (sorted[x] != x || sorted.size() != a.n_points)
        throw std::invalid_argument("action_groupoid: group element does not act by a permutation");
  }
  return partial_action_groupoid(PartialActionSpec::from_action(a));
}

ArrowSet Product::set_product(const ArrowSet& a, const ArrowSet& b) const {
  if (a.universe() != left_arrows || b.universe() != right_arrows)
    throw std::invalid_argument("set_product: factor set sizes do not match");
  ArrowSet out = groupoid.empty_arrows();
  a.for_each([&](ArrowId x) { b.for_each([&](ArrowId y) { out.insert(arrow_of(x, y)); }); });
  return out;
}

UnitSet Product::unit_product(const UnitSet& u, const UnitSet& v) const {
  if (u.universe() != left_units || v.universe() != right_units)
    throw std::invalid_argument("unit_product: factor set sizes do not match");
  UnitSet out = groupoid.empty_units();
  u.for_each([&](UnitId x) { v.for_each([&](UnitId y) { out.insert(unit_of(x, y)); }); });
  return out;
}

Product product(const Groupoid& g, const Groupoid& h) {
  Product p;
  p.left_units = g.n_units();
  p.right_units = h.n_units();
  p.left_arrows = g.n_arrows();
  p.right_arrows = h.n_arrows();
  const std::uint32_t n = p.left_units * p.right_units;
  const std::uint32_t m = p.left_arrows * p.right_arrows;
  p.index.assign(m, 0);
  p.factors.resize(m);
  for (UnitId x = 0; x < p.left_units; ++x)
    for (UnitId y = 0; y < p.right_units; ++y) {
      const auto u = p.unit_of(x, y);
      p.index[x * p.right_arrows + y] = u;
      p.factors[u] = {x, y};
    }
  ArrowId next = n;
  for (ArrowId a = 0; a < p.left_arrows; ++a)
    for (ArrowId b = 0; b < p.right_arrows; ++b) {
      if (g.is_unit(a) && h.is_unit(b)) continue;
      p.index[a * p.right_arrows + b] = next;
      p.factors[next] = {a, b};
      ++next;
    }
  GroupoidTables t;
  t.n_units = n;
  t.src.resize(m);
  t.rng.resize(m);
  t.inv.resize(m);
  for (ArrowId q = 0; q < m; ++q) {
    const auto [a, b] = p.factors[q];
    t.src[q] = p.unit_of(g.src(a), h.src(b));
    t.rng[q] = p.unit_of(g.rng(a), h.rng(b));
    t.inv[q] = p.arrow_of(g.inv(a), h.inv(b));
  }
  for (ArrowId q = n; q < m; ++q) {
    const auto [a, b] = p.factors[q];
    for (ArrowId a2 : g.range_fiber(g.src(a)))
      for (ArrowId b2 : h.range_fiber(h.src(b))) {
        const ArrowId q2 = p.arrow_of(a2, b2);
        if (q2 < n) continue;
        t.comp.push_back({q, q2, p.arrow_of(g.compose(a, a2), h.compose(b, b2))});
      }
  }
  p.groupoid = Groupoid::from_tables(t);
  return p;
}

DisjointUnion disjoint_union(const Groupoid& g, const Groupoid& h) {
  DisjointUnion d;
  const std::uint32_t ng = g.n_units(), nh = h.n_units();
  d.left_arrow.resize(g.n_arrows());
  d.right_arrow.resize(h.n_arrows());
  for (UnitId u = 0; u < ng; ++u) d.left_arrow[u] = u;
  for (UnitId u = 0; u < nh; ++u) d.right_arrow[u] = ng + u;
  ArrowId next = ng + nh;
  for (ArrowId a = ng; a < g.n_arrows(); ++a) d.left_arrow[a] = next++;
  for (ArrowId a = nh; a < h.n_arrows(); ++a) d.right_arrow[a] = next++;
  GroupoidTables t;
  t.n_units = ng + nh;
  t.src.resize(next);
  t.rng.resize(next);
  t.inv.resize(next);
  auto fill = [&](const Groupoid& x, const std::vector<ArrowId>& map, UnitId shift) {
    for (ArrowId a = 0; a < x.n_arrows(); ++a) {
      t.src[map[a]] = x.src(a) + shift;
      t.rng[map[a]] = x.rng(a) + shift;
      t.inv[map[a]] = map[x.inv(a)];
    }
    for (ArrowId a = x.n_units(); a < x.n_arrows(); ++a)
      for (ArrowId b : x.range_fiber(x.src(a)))
        if (!x.is_unit(b)) t.comp.push_back({map[a], map[b], map[x.compose(a, b)]});
  };
  fill(g, d.left_arrow, 0);
  fill(h, d.right_arrow, ng);
  d.groupoid = Groupoid::from_tables(t);
  return d;
}

std::vector<UnitId> uniform_cover_map(std::uint32_t n_units, std::uint32_t copies) {
  if (copies == 0) throw std::invalid_argument("uniform_cover_map: copies must be positive");
  std::vector<UnitId> psi(n_units * copies);
  for (std::uint32_t x = 0; x < psi.size(); ++x) psi[x] = x / copies;
  return psi;
}

Blowup blowup(const Groupoid& g, const std::vector<UnitId>& psi) {
  std::vector<std::vector<std::uint32_t>> fibre(g.n_units());
  for (std::uint32_t x = 0; x < psi.size(); ++x) {
    if (psi[x] >= g.n_units()) throw std::invalid_argument("blowup: psi maps outside the unit space");
    fibre[psi[x]].push_back(x);
  }
  for (UnitId u = 0; u < g.n_units(); ++u)
    if (fibre[u].empty())
      throw std::invalid_argument("blowup: psi is not surjective (unit " + std::to_string(u) + " missed)");

  Blowup b;
  b.psi = psi;
  const auto nx = static_cast<std::uint32_t>(psi.size());
  std::map<std::array<std::uint32_t, 3>, ArrowId> id;
  for (std::uint32_t x = 0; x < nx; ++x) {
    id[{x, psi[x], x}] = x;
    b.triples.push_back({x, psi[x], x});
  }
  for (ArrowId a = 0; a < g.n_arrows(); ++a)
    for (auto x : fibre[g.rng(a)])
      for (auto y : fibre[g.src(a)]) {
        if (g.is_unit(a) && x == y) continue;
        id[{x, a, y}] = static_cast<ArrowId>(b.triples.size());
        b.triples.push_back({x, a, y});
      }
  GroupoidTables t;
  t.n_units = nx;
  for (const auto& [x, a, y] : b.triples) {
    t.rng.push_back(x);
    t.src.push_back(y);
    t.inv.push_back(id.at({y, g.inv(a), x}));
    b.projection.push_back(a);
  }
  for (ArrowId p = nx; p < b.triples.size(); ++p) {
    const auto [x, a, y] = b.triples[p];
    for (ArrowId c : g.range_fiber(g.src(a)))
      for (auto z : fibre[g.src(c)]) {
        const ArrowId q = id.at({y, c, z});
        if (q < nx) continue;
        t.comp.push_back({p, q, id.at({x, g.compose(a, c), z})});
      }
  }
  b.groupoid = Groupoid::from_tables(t);
  return b;
}

Groupoid equivalence_groupoid(const std::vector<std::uint32_t>& block_of) {
  const auto n = static_cast<std::uint32_t>(block_of.size());
  GroupoidTables t;
  t.n_units = n;
  std::map<std::pair<UnitId, UnitId>, ArrowId> id;
  for (UnitId i = 0; i < n; ++i) {
    id[{i, i}] = i;
    t.src.push_back(i);
    t.rng.push_back(i);
  }
  for (UnitId i = 0; i < n; ++i)
    for (UnitId j = 0; j < n; ++j)
      if (i != j && block_of[i] == block_of[j]) {
        id[{i, j}] = static_cast<ArrowId>(t.src.size());
        t.rng.push_back(i);
        t.src.push_back(j);
      }
  t.inv.resize(t.src.size());
  for (const auto& [ij, a] : id) t.inv[a] = id.at({ij.second, ij.first});
  for (const auto& [ij, a] : id) {
    if (ij.first == ij.second) continue;
    for (UnitId k = 0; k < n; ++k)
      if (k != ij.second && block_of[k] == block_of[ij.second])
        t.comp.push_back({a, id.at({ij.second, k}), id.at({ij.first, k})});
  }
  return Groupoid::from_tables(t);
}

Groupoid random_principal(std::uint32_t n_units, std::uint32_t max_block, std::uint64_t seed) {
  if (max_block == 0) throw std::invalid_argument("random_principal: max_block must be positive");
  std::mt19937_64 rng(seed);
  std::vector<UnitId> perm(n_units);
  for (UnitId i = 0; i < n_units; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::uint32_t> block_of(n_units);
  std::uniform_int_distribution<std::uint32_t> size(1, max_block);
  std::uint32_t block = 0;
  for (std::uint32_t pos = 0; pos < n_units; ++block) {
    const std::uint32_t len = std::min(size(rng), n_units - pos);
    for (std::uint32_t i = 0; i < len; ++i) block_of[perm[pos + i]] = block;
    pos += len;
  }
  return equivalence_groupoid(block_of);
}

TreeWindow graph_window(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  TreeWindow w{pair_groupoid(n), {}, std::move(edges)};
  w.graphing = w.groupoid.empty_arrows();
  for (auto [i, j] : w.edges) {
    if (i == j || i >= n || j >= n) throw std::invalid_argument("graph_window: bad edge");
    w.graphing.insert(pair_arrow(n, i, j));
    w.graphing.insert(pair_arrow(n, j, i));
  }
  return w;
}

TreeWindow path_window(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return graph_window(n, std::move(edges));
}

TreeWindow binary_tree_window(std::uint32_t depth) {
  const std::uint32_t n = (1u << (depth + 1)) - 1;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t v = 1; v < n; ++v) edges.emplace_back((v - 1) / 2, v);
  return graph_window(n, std::move(edges));
}

}  // namespace dadg
