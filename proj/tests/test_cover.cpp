#include <catch_amalgamated.hpp>

#include "dadg/algebra.hpp"
#include "dadg/builders.hpp"
#include "dadg/control.hpp"
#include "dadg/cover.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dadg;
using fixtures::band;
using fixtures::range_units;

namespace {

std::vector<oracle::Ids> as_ids(const Cover& c) {
  std::vector<oracle::Ids> out;
  for (const auto& u : c.classes) out.push_back(oracle::to_ids(u));
  return out;
}

void check_lift(const ControlFunction& dfun, const ArrowSet& k, int level) {
  const Groupoid& g = dfun.groupoid();
  const int d = dfun.dimension();
  auto lift = ostrand_lift(dfun, k, level);
  const auto classes = static_cast<std::size_t>(level) + 2;
  REQUIRE(lift.cover.size() == classes);
  CHECK(oracle::fold(as_ids(lift.cover), oracle::to_ids(g.all_units())) >= classes - static_cast<std::size_t>(d));
  const auto bound = oracle::to_ids(control_apply(dfun, k, level + 1));
  const auto kk = oracle::to_ids(k);
  for (const auto& u : lift.cover.classes) {
    const auto h = oracle::generated(g, kk, oracle::to_ids(u));
    CHECK(std::includes(bound.begin(), bound.end(), h.begin(), h.end()));
  }
  for (std::size_t i = 0; i + 1 < classes; ++i) CHECK(lift.source.classes[i].is_subset_of(lift.cover.classes[i]));

  // inside one K-component of the residual class every point carries the same subset
  const auto& residual = lift.cover.classes.back();
  k.for_each([&](ArrowId a) {
    if (residual.contains(g.src(a)) && residual.contains(g.rng(a)))
      CHECK(lift.residual_label[g.src(a)] == lift.residual_label[g.rng(a)]);
  });
}

}  // namespace

TEST_CASE("fold numbers") {
  auto g = pair_groupoid(7);
  auto c = make_cover(g, {g.all_units(), g.all_units(), g.all_units()});
  CHECK(fold_number(c) == 3);
  auto two = make_cover(g, {range_units(g, 0, 3), range_units(g, 3, 6)});
  CHECK(fold_number(two) == 1);
  auto gap = make_cover(g, {range_units(g, 0, 2), range_units(g, 4, 6)});
  CHECK(fold_number(gap) == 0);
}

TEST_CASE("n-fold subfamily criterion") {
  auto g = pair_groupoid(3);
  auto c = make_cover(g, {g.units({0, 1}), g.units({1, 2}), g.units({0, 2})});
  CHECK(check_nfold_subfamilies(c, 1));
  CHECK(check_nfold_subfamilies(c, 2));
  CHECK_FALSE(check_nfold_subfamilies(c, 3));
  CHECK_THROWS_AS(check_nfold_subfamilies(c, 4), std::invalid_argument);

  auto notcover = make_cover(g, {g.units({0}), g.units({1})});
  CHECK_FALSE(check_nfold_subfamilies(notcover, 1));

  std::mt19937_64 rng(5);
  auto g6 = pair_groupoid(6);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto k1 = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    std::vector<UnitSet> classes;
    for (std::size_t i = 0; i < k1; ++i) {
      auto s = oracle::random_subset(rng, 6, 0.6);
      classes.push_back(g6.units({s.begin(), s.end()}));
    }
    auto cov = make_cover(g6, classes);
    for (std::size_t n = 0; n <= k1; ++n) {
      const bool sub = check_nfold_subfamilies(cov, n);
      CHECK(sub == (fold_number(cov) >= n));
      CHECK(sub == oracle::subfamilies_cover(as_ids(cov), oracle::to_ids(g6.all_units()), n));
    }
  }
}

TEST_CASE("shrink_nfold") {
  auto g = pair_groupoid(4);
  auto c = make_cover(g, {g.all_units(), g.all_units(), g.all_units()});
  auto s = shrink_nfold(c, 1);
  CHECK(s.classes[0] == g.all_units());
  CHECK(s.classes[1].empty());
  CHECK(s.classes[2].empty());
  CHECK(shrink_nfold(s, 1).classes == s.classes);

  auto g3 = pair_groupoid(3);
  auto tri = make_cover(g3, {g3.units({0, 1}), g3.units({1, 2}), g3.units({0, 2})});
  CHECK(shrink_nfold(tri, 2).classes == tri.classes);

  std::mt19937_64 rng(17);
  auto g6 = pair_groupoid(6);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<UnitSet> classes;
    for (int i = 0; i < 4; ++i) {
      auto x = oracle::random_subset(rng, 6, 0.7);
      classes.push_back(g6.units({x.begin(), x.end()}));
    }
    auto cov = make_cover(g6, classes);
    const auto f = fold_number(cov);
    if (f == 0) continue;
    const auto n = std::uniform_int_distribution<std::size_t>(1, f)(rng);
    auto v = shrink_nfold(cov, n);
    CHECK(fold_number(v) >= n);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(v.classes[i].is_subset_of(cov.classes[i]));
      v.classes[i].for_each([&](UnitId x) {
        auto w = v;
        w.classes[i].erase(x);
        CHECK(fold_number(w) < n);
      });
    }
  }
}

TEST_CASE("control_apply") {
  auto g = pair_groupoid(9);
  auto k = band(g, 9, 1);
  ControlFunction dfun(g, 1, [&](const ArrowSet& x) { return power(g, x, 4); });
  CHECK(control_apply(dfun, k, 1) == power(g, k, 4));
  CHECK(control_apply(dfun, k, 2) == power(g, k, 14));
  CHECK(oracle::to_ids(control_apply(dfun, k, 2)) ==
        oracle::compose(g, oracle::to_ids(k),
                        oracle::compose(g, oracle::power(g, oracle::power(g, oracle::to_ids(k), 3), 4),
                                        oracle::to_ids(k))));
  CHECK_THROWS_AS(control_apply(dfun, k, 0), std::invalid_argument);

  auto units = g.unit_arrows();
  for (int level = 1; level <= 4; ++level) CHECK(control_apply(dfun, units, level) == dfun.base(units));

  // a narrower window where K^14 is not everything
  auto g20 = pair_groupoid(20);
  auto k20 = band(g20, 20, 1);
  ControlFunction d20(g20, 1, [&](const ArrowSet& x) { return power(g20, x, 4); });
  CHECK(control_apply(d20, k20, 2) == band(g20, 20, 14));
}

TEST_CASE("base cover of a control function") {
  auto g = pair_groupoid(9);
  auto k = band(g, 9, 1);
  ControlFunction dfun(g, 1, [&](const ArrowSet& x) { return power(g, x, 4); });
  auto c = dfun.base_cover(k);
  CHECK(c.size() == 2);
  CHECK(fold_number(c) >= 1);
  for (const auto& u : c.classes) CHECK(generated(g, k, u).is_subset_of(power(g, k, 4)));

  ControlFunction too_small(g, 0, [&](const ArrowSet& x) { return x; });
  CHECK_THROWS(too_small.base_cover(k));
  CHECK_THROWS_AS(too_small.base(g.arrows({pair_arrow(9, 0, 1)})), std::invalid_argument);
}

TEST_CASE("Ostrand lift") {
  SECTION("d = k = 0") {
    auto g = pair_groupoid(5);
    auto k = band(g, 5, 1);
    auto dfun = ControlFunction::discovered(g, 0);
    check_lift(dfun, k, 0);
    auto lift = ostrand_lift(dfun, k, 0);
    CHECK(fold_number(lift.cover) >= 2);
  }
  SECTION("P9 with the K^4 control function") {
    auto g = pair_groupoid(9);
    auto k = band(g, 9, 1);
    ControlFunction dfun(g, 1, [&](const ArrowSet& x) { return power(g, x, 4); });
    check_lift(dfun, k, 1);
    check_lift(dfun, k, 2);
  }
  SECTION("discovered control functions on several instances") {
    for (const char* which : {"path", "cycle"}) {
      INFO(which);
      Groupoid g = std::string(which) == "path" ? pair_groupoid(12) : action_groupoid(cyclic_rotation(10));
      ArrowSet k = std::string(which) == "path" ? band(g, 12, 1) : g.empty_arrows();
      if (k.empty()) {
        for (ArrowId a = 0; a < g.n_arrows(); ++a) {
          const auto diff = (g.rng(a) + 10 - g.src(a)) % 10;
          if (diff <= 1 || diff == 9) k.insert(a);
        }
      }
      auto dfun = ControlFunction::discovered(g, 1);
      for (int level = 1; level <= 3; ++level) check_lift(dfun, k, level);
    }
  }
  SECTION("duplicate classes leave room for an empty residual") {
    auto g = pair_groupoid(4);
    auto k = g.unit_arrows();
    ControlFunction dfun(g, 0, [&](const ArrowSet& x) { return x; });
    auto lift = ostrand_lift(dfun, k, 0);
    CHECK(fold_number(lift.cover) >= 2);
  }
  SECTION("rejects levels below d") {
    auto g = pair_groupoid(4);
    auto dfun = ControlFunction::discovered(g, 1);
    CHECK_THROWS_AS(ostrand_lift(dfun, band(g, 4, 1), 0), std::invalid_argument);
  }
}
