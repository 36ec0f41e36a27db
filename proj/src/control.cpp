#include "dadg/control.hpp"

#include <stdexcept>

#include "dadg/algebra.hpp"

namespace dadg {

namespace {

constexpr int kMaxLevel = 12;

template <class Map, class Key>
std::optional<typename Map::mapped_type> lookup(std::mutex& m, const Map& map, const Key& key) {
  std::lock_guard lock(m);
  auto it = map.find(key);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

template <class Map, class Key, class Value>
void store(std::mutex& m, Map& map, const Key& key, const Value& value) {
  std::lock_guard lock(m);
  map.emplace(key, value);
}

// {r(g) : g in K, s(g) in U}
UnitSet saturate(const Groupoid& g, const ArrowSet& k, const UnitSet& u) {
  UnitSet out = g.empty_units();
  u.for_each([&](UnitId x) {
    for (ArrowId a : g.source_fiber(x))
      if (k.contains(a)) out.insert(g.rng(a));
  });
  return out;
}

}  // namespace

ControlFunction::ControlFunction(const Groupoid& g, int d, Rule rule, SearchMode mode)
    : g_(&g), d_(d), rule_(std::move(rule)), mode_(mode), memo_(std::make_shared<Memo>()) {
  if (d < 0) throw std::invalid_argument("ControlFunction: dimension must be non-negative");
}

ControlFunction ControlFunction::discovered(const Groupoid& g, int d, SearchMode mode) {
  auto rule = [&g, d, mode](const ArrowSet& k) {
    auto found = search_power_schedule(g, k, d, mode);
    return symmetrize(g, found.witness.generated_union());
  };
  return ControlFunction(g, d, rule, mode);
}

ArrowSet ControlFunction::base(const ArrowSet& k) const {
  if (auto hit = lookup(memo_->mutex, memo_->base, k)) return *hit;
  g_->require_owner(k);
  ArrowSet value = rule_(k);
  if (!is_oc_normal(*g_, value))
    throw std::invalid_argument("ControlFunction: rule returned a set that is not symmetric with units");
  store(memo_->mutex, memo_->base, k, value);
  return value;
}

Cover ControlFunction::base_cover(const ArrowSet& k) const {
  if (auto hit = lookup(memo_->mutex, memo_->base_cover, k)) return *hit;
  auto w = kl_dad_search(*g_, k, base(k), d_, mode_);
  if (!w) throw std::invalid_argument("ControlFunction: no level-d cover generates inside D(K)");
  Cover c = pad_to(*g_, std::move(*w), d_).cover;
  store(memo_->mutex, memo_->base_cover, k, c);
  return c;
}

ArrowSet control_apply(const ControlFunction& dfun, const ArrowSet& k, int level) {
  if (level < dfun.d_) throw std::invalid_argument("control_apply: level below the dimension");
  if (level == dfun.d_) return dfun.base(k);
  const auto key = std::make_pair(level, k);
  if (auto hit = lookup(dfun.memo_->mutex, dfun.memo_->level, key)) return *hit;
  const Groupoid& g = *dfun.g_;
  ArrowSet inner = control_apply(dfun, power(g, k, 3), level - 1);
  ArrowSet value = compose_sets(g, k, compose_sets(g, inner, k));
  store(dfun.memo_->mutex, dfun.memo_->level, key, value);
  return value;
}

Cover cover_at(const ControlFunction& dfun, const ArrowSet& k, int level) {
  if (level < dfun.d_) throw std::invalid_argument("cover_at: level below the dimension");
  if (level == dfun.d_) return dfun.base_cover(k);
  const auto key = std::make_pair(level, k);
  if (auto hit = lookup(dfun.memo_->mutex, dfun.memo_->level_cover, key)) return *hit;
  Cover c = ostrand_lift(dfun, k, level - 1).cover;
  store(dfun.memo_->mutex, dfun.memo_->level_cover, key, c);
  return c;
}

OstrandLift ostrand_lift(const ControlFunction& dfun, const ArrowSet& k, int level) {
  const Groupoid& g = dfun.groupoid();
  const int d = dfun.dimension();
  if (level < d) throw std::invalid_argument("ostrand_lift: level below the dimension");
  if (level + 1 > kMaxLevel) throw std::invalid_argument("ostrand_lift: level too large for subset enumeration");
  if (!is_oc_normal(g, k)) throw std::invalid_argument("ostrand_lift: K must be symmetric and contain the units");

  const ArrowSet k3 = power(g, k, 3);
  OstrandLift out;
  out.source = cover_at(dfun, k3, level);
  const auto classes = static_cast<std::size_t>(level) + 1;
  const auto fold = static_cast<std::size_t>(level + 1 - d);
  if (out.source.size() != classes || fold_number(out.source) < fold)
    throw std::invalid_argument("ostrand_lift: level cover has the wrong shape or fold number");
  const ArrowSet inner_bound = control_apply(dfun, k3, level);
  for (const auto& u : out.source.classes)
    if (!generated(g, k3, u).is_subset_of(inner_bound))
      throw std::invalid_argument("ostrand_lift: level cover escapes D^(k)(K^3)");

  out.shrunk = shrink_nfold(out.source, fold);
  std::vector<UnitSet> lifted;
  for (std::size_t i = 0; i < classes; ++i) {
    lifted.push_back(saturate(g, k, out.source.classes[i]));
    out.saturated.push_back(saturate(g, k, out.shrunk.classes[i]));
  }

  UnitSet residual = g.empty_units();
  out.residual_label.assign(g.n_units(), 0);
  for (std::uint32_t mask = 0; mask < (1u << classes); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != fold) continue;
    UnitSet piece = g.all_units();
    for (std::size_t i = 0; i < classes; ++i) {
      if (mask >> i & 1)
        piece &= out.shrunk.classes[i];
      else
        piece -= out.saturated[i];
    }
    piece.for_each([&](UnitId x) { out.residual_label[x] = mask; });
    residual |= piece;
  }
  lifted.push_back(std::move(residual));
  out.cover = make_cover(g, std::move(lifted));

  if (fold_number(out.cover) < fold + 1)
    throw std::logic_error("ostrand_lift: lifted cover lost a fold");
  const ArrowSet bound = control_apply(dfun, k, level + 1);
  for (const auto& u : out.cover.classes)
    if (!generated(g, k, u).is_subset_of(bound))
      throw std::logic_error("ostrand_lift: lifted class escapes D^(k+1)(K)");
  return out;
}

}  // namespace dadg
