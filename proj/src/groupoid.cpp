#include "dadg/groupoid.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace dadg {

namespace {

constexpr ArrowId kUndefined = ~ArrowId{0};
constexpr std::size_t kMaxViolations = 200;

std::uint64_t next_token() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

class Reporter {
 public:
  void add(std::string axiom, std::vector<std::uint32_t> arrows) {
    if (report_.violations.size() < kMaxViolations)
      report_.violations.push_back({std::move(axiom), std::move(arrows)});
  }
  ValidationReport take() { return std::move(report_); }
  bool ok() const { return report_.violations.empty(); }

 private:
  ValidationReport report_;
};

// Composition rows indexed like Groupoid::comp_, filled with kUndefined where
// the tables say nothing.
struct DenseComp {
  std::vector<std::vector<ArrowId>> by_rng;
  std::vector<std::uint32_t> pos;
  std::vector<std::vector<ArrowId>> row;

  ArrowId at(const GroupoidTables&, ArrowId a, ArrowId b) const {
    return row[a][pos[b]];
  }
};

DenseComp index_tables(const GroupoidTables& t) {
  DenseComp dc;
  const auto m = t.src.size();
  dc.by_rng.assign(t.n_units, {});
  dc.pos.assign(m, 0);
  for (ArrowId a = 0; a < m; ++a) {
    dc.pos[a] = static_cast<std::uint32_t>(dc.by_rng[t.rng[a]].size());
    dc.by_rng[t.rng[a]].push_back(a);
  }
  dc.row.resize(m);
  for (ArrowId a = 0; a < m; ++a) dc.row[a].assign(dc.by_rng[t.src[a]].size(), kUndefined);
  return dc;
}

}  // namespace

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << v.axiom << ':';
    for (auto a : v.arrows) os << ' ' << a;
    os << '\n';
  }
  return os.str();
}

ValidationError::ValidationError(ValidationReport r)
    : std::runtime_error("groupoid axioms violated:\n" + r.to_string()), report_(std::move(r)) {}

ValidationReport validate(const GroupoidTables& t) {
  Reporter rep;
  const std::size_t m = t.src.size();
  const std::uint32_t n = t.n_units;
  if (t.rng.size() != m || t.inv.size() != m) {
    rep.add("table sizes differ", {});
    return rep.take();
  }
  if (m < n) {
    rep.add("fewer arrows than units", {});
    return rep.take();
  }
  for (ArrowId a = 0; a < m; ++a) {
    if (t.src[a] >= n || t.rng[a] >= n) rep.add("endpoint out of range", {a});
    if (t.inv[a] >= m) rep.add("inverse out of range", {a});
  }
  if (!rep.ok()) return rep.take();

  for (UnitId u = 0; u < n; ++u) {
    if (t.src[u] != u || t.rng[u] != u) rep.add("identity endpoints", {u});
    if (t.inv[u] != u) rep.add("identity is self-inverse", {u});
  }
  for (ArrowId a = 0; a < m; ++a) {
    if (t.inv[t.inv[a]] != a) rep.add("inv(inv(a))=a", {a});
    if (t.src[t.inv[a]] != t.rng[a] || t.rng[t.inv[a]] != t.src[a])
      rep.add("inverse swaps endpoints", {a});
  }
  if (!rep.ok()) return rep.take();

  auto dc = index_tables(t);
  // Identity compositions are implied.
  for (ArrowId a = 0; a < m; ++a) {
    dc.row[t.rng[a]][dc.pos[a]] = a;       // id_{r(a)} * a
    dc.row[a][dc.pos[t.src[a]]] = a;       // a * id_{s(a)}
  }
  for (const auto& tri : t.comp) {
    const auto [a, b, c] = tri;
    if (a >= m || b >= m || c >= m) {
      rep.add("comp triple out of range", {a, b, c});
      continue;
    }
    if (t.src[a] != t.rng[b]) {
      rep.add("comp defined on non-composable pair", {a, b, c});
      continue;
    }
    auto& slot = dc.row[a][dc.pos[b]];
    const bool implied = a < n || b < n;
    if (implied) {
      if (slot != c) rep.add("identity law", {a, b, c});
      continue;
    }
    if (slot != kUndefined && slot != c) {
      rep.add("comp conflict", {a, b, c});
      continue;
    }
    slot = c;
  }
  if (!rep.ok()) return rep.take();

  for (ArrowId a = 0; a < m; ++a) {
    const auto& fib = dc.by_rng[t.src[a]];
    for (std::size_t j = 0; j < fib.size(); ++j) {
      const ArrowId b = fib[j];
      const ArrowId c = dc.row[a][j];
      if (c == kUndefined) {
        rep.add("comp undefined on composable pair", {a, b});
        continue;
      }
      if (t.src[c] != t.src[b] || t.rng[c] != t.rng[a]) rep.add("comp endpoints", {a, b, c});
    }
  }
  if (!rep.ok()) return rep.take();

  for (ArrowId a = 0; a < m; ++a) {
    if (dc.at(t, a, t.inv[a]) != t.rng[a]) rep.add("a*inv(a)=id_r(a)", {a});
    if (dc.at(t, t.inv[a], a) != t.src[a]) rep.add("inv(a)*a=id_s(a)", {a});
  }

  // Associativity: (a*b)*c == a*(b*c) for every composable triple.
  for (ArrowId a = 0; a < m; ++a) {
    const auto& fb = dc.by_rng[t.src[a]];
    for (std::size_t j = 0; j < fb.size(); ++j) {
      const ArrowId b = fb[j];
      const ArrowId ab = dc.row[a][j];
      const auto& fc = dc.by_rng[t.src[b]];
      for (std::size_t l = 0; l < fc.size(); ++l) {
        const ArrowId c = fc[l];
        const ArrowId bc = dc.row[b][l];
        if (dc.at(t, ab, c) != dc.at(t, a, bc)) rep.add("associativity", {a, b, c});
      }
    }
  }
  return rep.take();
}

Groupoid::Groupoid() : token_(next_token()) {}

Groupoid Groupoid::from_tables(const GroupoidTables& t) {
  auto report = validate(t);
  if (!report.ok()) throw ValidationError(std::move(report));

  Groupoid g;
  g.n_units_ = t.n_units;
  g.src_ = t.src;
  g.rng_ = t.rng;
  g.inv_ = t.inv;
  auto dc = index_tables(t);
  for (ArrowId a = 0; a < t.src.size(); ++a) {
    dc.row[t.rng[a]][dc.pos[a]] = a;
    dc.row[a][dc.pos[t.src[a]]] = a;
  }
  for (const auto& [a, b, c] : t.comp) dc.row[a][dc.pos[b]] = c;
  g.by_rng_ = std::move(dc.by_rng);
  g.pos_in_rng_fiber_ = std::move(dc.pos);
  g.comp_ = std::move(dc.row);
  g.by_src_.assign(g.n_units_, {});
  for (ArrowId a = 0; a < g.src_.size(); ++a) g.by_src_[g.src_[a]].push_back(a);
  return g;
}

ArrowSet Groupoid::all_arrows() const {
  ArrowSet s = empty_arrows();
  s.fill();
  return s;
}

ArrowSet Groupoid::unit_arrows() const {
  ArrowSet s = empty_arrows();
  for (UnitId u = 0; u < n_units_; ++u) s.insert(u);
  return s;
}

UnitSet Groupoid::all_units() const {
  UnitSet s = empty_units();
  s.fill();
  return s;
}

ArrowSet Groupoid::identities(const UnitSet& u) const {
  require_owner(u);
  ArrowSet s = empty_arrows();
  u.for_each([&](UnitId x) { s.insert(x); });
  return s;
}

UnitSet Groupoid::sources(const ArrowSet& k) const {
  require_owner(k);
  UnitSet s = empty_units();
  k.for_each([&](ArrowId a) { s.insert(src_[a]); });
  return s;
}

UnitSet Groupoid::ranges(const ArrowSet& k) const {
  require_owner(k);
  UnitSet s = empty_units();
  k.for_each([&](ArrowId a) { s.insert(rng_[a]); });
  return s;
}

ArrowSet Groupoid::arrows_over(const UnitSet& u) const {
  require_owner(u);
  ArrowSet s = empty_arrows();
  u.for_each([&](UnitId x) {
    for (ArrowId a : by_rng_[x])
      if (u.contains(src_[a])) s.insert(a);
  });
  return s;
}

GroupoidTables Groupoid::tables() const {
  GroupoidTables t;
  t.n_units = n_units_;
  t.src = src_;
  t.rng = rng_;
  t.inv = inv_;
  for (ArrowId a = n_units_; a < n_arrows(); ++a)
    for (ArrowId b : by_rng_[src_[a]])
      if (!is_unit(b)) t.comp.push_back({a, b, compose(a, b)});
  return t;
}

void Groupoid::require_owner(const ArrowSet& s) const {
  if (s.owner() != token_ || s.universe() != n_arrows())
    throw std::invalid_argument("arrow set belongs to a different groupoid");
}

void Groupoid::require_owner(const UnitSet& s) const {
  if (s.owner() != token_ || s.universe() != n_units_)
    throw std::invalid_argument("unit set belongs to a different groupoid");
}

}  // namespace dadg
