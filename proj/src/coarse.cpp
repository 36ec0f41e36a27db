#include "dadg/coarse.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace dadg {

Gauge::Gauge(std::size_t n) : rows_(n, boost::dynamic_bitset<>(n)) {
  for (std::size_t p = 0; p < n; ++p) rows_[p].set(p);
}

void Gauge::relate(std::uint32_t p, std::uint32_t q) {
  if (p >= rows_.size() || q >= rows_.size()) throw std::out_of_range("Gauge::relate: point out of range");
  rows_[p].set(q);
  rows_[q].set(p);
}

bool Gauge::is_subset_of(const Gauge& o) const {
  if (o.rows_.size() != rows_.size()) throw std::invalid_argument("Gauge: size mismatch");
  for (std::size_t p = 0; p < rows_.size(); ++p)
    if (!rows_[p].is_subset_of(o.rows_[p])) return false;
  return true;
}

std::size_t Gauge::off_diagonal_pairs() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.count();
  return (total - rows_.size()) / 2;
}

Gauge Gauge::restrict_to(const std::vector<std::uint32_t>& points) const {
  Gauge out(points.size());
  for (std::uint32_t i = 0; i < points.size(); ++i)
    for (std::uint32_t j = i + 1; j < points.size(); ++j)
      if (related(points[i], points[j])) out.relate(i, j);
  return out;
}

Gauge gauge_from(const Groupoid& g, const ArrowSet& k) {
  g.require_owner(k);
  Gauge out(g.n_arrows());
  for (UnitId x = 0; x < g.n_units(); ++x) {
    const auto& fib = g.range_fiber(x);
    for (std::size_t i = 0; i < fib.size(); ++i)
      for (std::size_t j = i + 1; j < fib.size(); ++j)
        if (k.contains(g.compose(g.inv(fib[i]), fib[j]))) out.relate(fib[i], fib[j]);
  }
  return out;
}

CoarseSpace fiber(const Groupoid& g, UnitId x, const std::map<std::string, ArrowSet>& gauge_sets) {
  if (x >= g.n_units()) throw std::invalid_argument("fiber: not a unit");
  CoarseSpace s;
  const auto& fib = g.range_fiber(x);
  s.labels = fib;
  for (const auto& [name, k] : gauge_sets) {
    g.require_owner(k);
    Gauge e(fib.size());
    for (std::uint32_t i = 0; i < fib.size(); ++i)
      for (std::uint32_t j = i + 1; j < fib.size(); ++j)
        if (k.contains(g.compose(g.inv(fib[i]), fib[j]))) e.relate(i, j);
    s.gauges.emplace(name, std::move(e));
  }
  return s;
}

Gauge line_gauge(std::uint32_t n, std::uint32_t r) {
  Gauge out(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n && j - i <= r; ++j) out.relate(i, j);
  return out;
}

Gauge grid_gauge(std::uint32_t w, std::uint32_t h, std::uint32_t r) {
  Gauge out(static_cast<std::size_t>(w) * h);
  for (std::uint32_t p = 0; p < w * h; ++p)
    for (std::uint32_t q = p + 1; q < w * h; ++q) {
      const auto dist = static_cast<std::uint32_t>(std::abs(static_cast<int>(p / w) - static_cast<int>(q / w)) +
                                                   std::abs(static_cast<int>(p % w) - static_cast<int>(q % w)));
      if (dist <= r) out.relate(p, q);
    }
  return out;
}

Gauge cycle_gauge(std::uint32_t n, std::uint32_t r) {
  Gauge out(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (std::min(j - i, n - (j - i)) <= r) out.relate(i, j);
  return out;
}

AsdimCheck ef_asdim_check(const Gauge& e, const Gauge& f, const Decomposition& dec) {
  const std::size_t n = e.n_points();
  if (f.n_points() != n) return {false, "gauges have different point counts"};
  boost::dynamic_bitset<> covered(n);
  for (std::size_t i = 0; i < dec.families.size(); ++i) {
    std::vector<std::uint32_t> member_of(n, ~std::uint32_t{0});
    const auto& fam = dec.families[i];
    for (std::uint32_t j = 0; j < fam.size(); ++j) {
      boost::dynamic_bitset<> bits(n);
      for (auto p : fam[j]) {
        if (p >= n) return {false, "family " + std::to_string(i) + " names a point out of range"};
        if (member_of[p] != ~std::uint32_t{0})
          return {false, "point " + std::to_string(p) + " lies in two members of family " + std::to_string(i)};
        member_of[p] = j;
        bits.set(p);
      }
      for (auto p : fam[j])
        if (!bits.is_subset_of(f.row(p)))
          return {false, "member " + std::to_string(j) + " of family " + std::to_string(i) + " is not F-bounded"};
      covered |= bits;
    }
    for (std::uint32_t p = 0; p < n; ++p) {
      if (member_of[p] == ~std::uint32_t{0}) continue;
      const auto& row = e.row(p);
      for (auto q = row.find_first(); q != boost::dynamic_bitset<>::npos; q = row.find_next(q))
        if (member_of[q] != ~std::uint32_t{0} && member_of[q] != member_of[p])
          return {false, "family " + std::to_string(i) + " is not E-separated at points " + std::to_string(p) +
                             " and " + std::to_string(q)};
    }
  }
  if (covered.count() != n) return {false, "point " + std::to_string((~covered).find_first()) + " is not covered"};
  return {true, {}};
}

namespace {

class AsdimSearch {
 public:
  AsdimSearch(const Gauge& e, const Gauge& f, int d)
      : e_(e), f_(f), n_(e.n_points()), colours_(static_cast<std::size_t>(d) + 1),
        colour_(n_, kUnset), by_colour_(colours_, boost::dynamic_bitset<>(n_)) {}

  bool exact() { return dfs(0, 0); }

  bool greedy() {
    for (std::uint32_t p = 0; p < n_; ++p) {
      bool placed = false;
      for (std::size_t c = 0; c < colours_ && !placed; ++c) placed = place(p, c);
      if (!placed) return false;
    }
    return true;
  }

  Decomposition result() const {
    Decomposition dec;
    for (std::size_t c = 0; c < colours_; ++c) {
      std::vector<std::vector<std::uint32_t>> members;
      boost::dynamic_bitset<> left = by_colour_[c];
      for (auto p = left.find_first(); p != boost::dynamic_bitset<>::npos; p = left.find_first()) {
        auto comp = component(static_cast<std::uint32_t>(p), c);
        left -= comp;
        std::vector<std::uint32_t> m;
        for (auto q = comp.find_first(); q != boost::dynamic_bitset<>::npos; q = comp.find_next(q))
          m.push_back(static_cast<std::uint32_t>(q));
        members.push_back(std::move(m));
      }
      dec.families.push_back(std::move(members));
    }
    return dec;
  }

 private:
  static constexpr std::size_t kUnset = ~std::size_t{0};

  boost::dynamic_bitset<> component(std::uint32_t p, std::size_t c) const {
    boost::dynamic_bitset<> comp(n_), frontier(n_);
    comp.set(p);
    frontier.set(p);
    while (frontier.any()) {
      boost::dynamic_bitset<> next(n_);
      for (auto q = frontier.find_first(); q != boost::dynamic_bitset<>::npos; q = frontier.find_next(q))
        next |= e_.row(static_cast<std::uint32_t>(q));
      next &= by_colour_[c];
      next -= comp;
      comp |= next;
      frontier = std::move(next);
    }
    return comp;
  }

  bool place(std::uint32_t p, std::size_t c) {
    colour_[p] = c;
    by_colour_[c].set(p);
    auto comp = component(p, c);
    for (auto q = comp.find_first(); q != boost::dynamic_bitset<>::npos; q = comp.find_next(q))
      if (!comp.is_subset_of(f_.row(static_cast<std::uint32_t>(q)))) {
        colour_[p] = kUnset;
        by_colour_[c].reset(p);
        return false;
      }
    return true;
  }

  bool dfs(std::uint32_t p, std::size_t used) {
    if (p == n_) return true;
    const std::size_t limit = std::min(colours_, used + 1);
    for (std::size_t c = 0; c < limit; ++c) {
      if (!place(p, c)) continue;
      if (dfs(p + 1, std::max(used, c + 1))) return true;
      colour_[p] = kUnset;
      by_colour_[c].reset(p);
    }
    return false;
  }

  const Gauge& e_;
  const Gauge& f_;
  std::uint32_t n_;
  std::size_t colours_;
  std::vector<std::size_t> colour_;
  std::vector<boost::dynamic_bitset<>> by_colour_;
};

}  // namespace

std::optional<Decomposition> ef_asdim_search(const Gauge& e, const Gauge& f, int d_max, AsdimMode mode) {
  if (d_max < 0) throw std::invalid_argument("ef_asdim_search: d_max must be non-negative");
  if (e.n_points() != f.n_points()) throw std::invalid_argument("ef_asdim_search: gauge size mismatch");
  const bool exact = mode == AsdimMode::exact || (mode == AsdimMode::automatic && e.n_points() <= kExactAsdimLimit);
  for (int d = 0; d <= d_max; ++d) {
    AsdimSearch s(e, f, d);
    if (!(exact ? s.exact() : s.greedy())) continue;
    auto dec = s.result();
    if (!ef_asdim_check(e, f, dec).ok) throw std::logic_error("ef_asdim_search: produced an invalid decomposition");
    return dec;
  }
  return std::nullopt;
}

}  // namespace dadg
