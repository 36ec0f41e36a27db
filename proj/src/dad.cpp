#include "dadg/dad.hpp"

#include <stdexcept>

#include "dadg/algebra.hpp"

namespace dadg {

namespace {

thread_local std::size_t g_nodes = 0;

struct ClassState {
  UnitSet members;
  ArrowSet gens;
  ArrowSet closure;
};

class ColouringSearch {
 public:
  ColouringSearch(const Groupoid& g, const ArrowSet& k, const ArrowSet& l, int d)
      : g_(g), k_(k), l_(l), colours_(static_cast<std::size_t>(d) + 1) {
    order_ = (g.sources(k) | g.ranges(k)).ids();
    for (std::size_t c = 0; c < colours_; ++c)
      classes_.push_back({g.empty_units(), g.empty_arrows(), g.empty_arrows()});
  }

  bool run_exact() { return dfs(0, 0); }

  bool run_greedy() {
    for (UnitId u : order_) {
      bool placed = false;
      for (std::size_t c = 0; c < colours_ && !placed; ++c) {
        ClassState saved = classes_[c];
        if (try_add(c, u)) {
          placed = true;
        } else {
          classes_[c] = std::move(saved);
        }
      }
      if (!placed) return false;
    }
    return true;
  }

  std::vector<UnitSet> classes() const {
    std::vector<UnitSet> out;
    for (const auto& c : classes_) out.push_back(c.members);
    return out;
  }

 private:
  bool try_add(std::size_t c, UnitId u) {
    ++g_nodes;
    auto& st = classes_[c];
    st.members.insert(u);
    std::vector<ArrowId> fresh;
    for (ArrowId a : g_.range_fiber(u))
      if (k_.contains(a) && st.members.contains(g_.src(a))) fresh.push_back(a);
    for (ArrowId a : g_.source_fiber(u))
      if (k_.contains(a) && st.members.contains(g_.rng(a))) fresh.push_back(a);
    return extend_closure(g_, st.gens, st.closure, fresh, &l_);
  }

  // Colours are tried in increasing order and a unit may open at most one new
  // colour, so the first complete colouring found is the least one up to
  // renaming of colours.
  bool dfs(std::size_t idx, std::size_t used) {
    if (idx == order_.size()) return true;
    const UnitId u = order_[idx];
    const std::size_t limit = std::min(colours_, used + 1);
    for (std::size_t c = 0; c < limit; ++c) {
      ClassState saved = classes_[c];
      if (try_add(c, u) && dfs(idx + 1, std::max(used, c + 1))) return true;
      classes_[c] = std::move(saved);
    }
    return false;
  }

  const Groupoid& g_;
  const ArrowSet& k_;
  const ArrowSet& l_;
  std::size_t colours_;
  std::vector<UnitId> order_;
  std::vector<ClassState> classes_;
};

}  // namespace

ArrowSet DadWitness::generated_union() const {
  ArrowSet u = k;
  u.clear();
  for (const auto& h : generated_per_class) u |= h;
  return u;
}

DadWitness kl_dad_check(const Groupoid& g, const ArrowSet& k, const ArrowSet& l, const Cover& c) {
  g.require_owner(k);
  g.require_owner(l);
  g.require_owner(c.base);
  for (const auto& u : c.classes) g.require_owner(u);
  if (!(g.sources(k) | g.ranges(k)).is_subset_of(c.base))
    throw std::invalid_argument("kl_dad_check: cover base does not contain s(K) u r(K)");
  DadWitness w{c, k, l, {}, false};
  bool inside = true;
  for (const auto& u : c.classes) {
    w.generated_per_class.push_back(generated(g, k, u));
    inside = inside && w.generated_per_class.back().is_subset_of(l);
  }
  w.certified = inside && fold_number(c) >= 1;
  return w;
}

std::optional<DadWitness> kl_dad_search(const Groupoid& g, const ArrowSet& k, const ArrowSet& l, int d_max,
                                        SearchMode mode) {
  if (d_max < 0) throw std::invalid_argument("kl_dad_search: d_max must be non-negative");
  g.require_owner(k);
  g.require_owner(l);
  if (!is_oc_normal(g, k) || !is_oc_normal(g, l))
    throw std::invalid_argument("kl_dad_search: K and L must be symmetric and contain the units");
  g_nodes = 0;
  for (int d = 0; d <= d_max; ++d) {
    ColouringSearch search(g, k, l, d);
    const bool found = mode == SearchMode::exact ? search.run_exact() : search.run_greedy();
    if (!found) continue;
    auto w = kl_dad_check(g, k, l, make_cover(g, search.classes()));
    if (!w.certified) throw std::logic_error("kl_dad_search: search produced an uncertified cover");
    return w;
  }
  return std::nullopt;
}

std::size_t last_search_nodes() { return g_nodes; }

ScheduledWitness search_power_schedule(const Groupoid& g, const ArrowSet& k, int d_max, SearchMode mode) {
  ArrowSet prev = g.unit_arrows();
  ArrowSet bound = k;
  for (unsigned j = 1;; ++j) {
    if (auto w = kl_dad_search(g, k, bound, d_max, mode)) return {std::move(*w), j};
    if (bound == prev) throw std::logic_error("search_power_schedule: no witness at the stable power");
    prev = bound;
    bound = compose_sets(g, k, bound);
  }
}

DadWitness pad_to(const Groupoid& g, DadWitness w, int d) {
  while (w.d() < d) {
    w.cover.classes.push_back(g.empty_units());
    w.generated_per_class.push_back(g.empty_arrows());
  }
  return w;
}

}  // namespace dadg
