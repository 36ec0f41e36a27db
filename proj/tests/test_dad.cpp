#include <catch_amalgamated.hpp>

#include "dadg/algebra.hpp"
#include "dadg/builders.hpp"
#include "dadg/dad.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dadg;
using fixtures::band;

namespace {

struct Case {
  std::string name;
  Groupoid g;
  ArrowSet k, l;
};

std::vector<Case> small_cases(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<Case> out;
  while (out.size() < count) {
    for (auto& [name, g] : oracle::random_instances(rng, 20, 200)) {
      if (g.n_units() > 8 || out.size() == count) continue;
      auto ks = oracle::random_subset(rng, g.n_arrows(), 0.15);
      auto k = symmetrize(g, g.arrows({ks.begin(), ks.end()}));
      auto ls = oracle::random_subset(rng, g.n_arrows(), 0.1);
      const unsigned e = std::uniform_int_distribution<unsigned>(1, 2)(rng);
      auto l = symmetrize(g, power(g, k, e) | g.arrows({ls.begin(), ls.end()}));
      out.push_back({name, std::move(g), k, l});
    }
  }
  return out;
}

std::vector<std::uint32_t> colouring_of(const DadWitness& w, std::uint32_t n_units) {
  std::vector<std::uint32_t> col(n_units, ~0u);
  for (std::uint32_t c = 0; c < w.cover.classes.size(); ++c)
    w.cover.classes[c].for_each([&](UnitId u) { col[u] = c; });
  return col;
}

}  // namespace

TEST_CASE("kl_dad_check") {
  auto g = pair_groupoid(7);
  auto k = band(g, 7, 1);
  auto trivial = kl_dad_check(g, k, g.all_arrows(), make_cover(g, {g.all_units()}));
  CHECK(trivial.certified);
  CHECK(trivial.d() == 0);

  auto l = power(g, k, 2);
  auto w = kl_dad_check(g, k, l, make_cover(g, {g.units({0, 1, 2, 6}), g.units({3, 4, 5})}));
  CHECK(w.certified);
  CHECK(w.generated_per_class[0] == (fixtures::block_pairs(g, 7, {0, 1, 2}) | g.arrows({6})));
  CHECK(w.generated_per_class[1] == fixtures::block_pairs(g, 7, {3, 4, 5}));

  auto one = kl_dad_check(g, k, l, make_cover(g, {g.all_units()}));
  CHECK_FALSE(one.certified);
  CHECK(one.generated_per_class[0] == power(g, k, 6));

  Cover partial{g.units({0, 1}), {g.units({0, 1})}};
  CHECK_THROWS_AS(kl_dad_check(g, k, l, partial), std::invalid_argument);
}

TEST_CASE("kl_dad_search examples") {
  auto g = pair_groupoid(7);
  auto k = band(g, 7, 1);

  auto zero = kl_dad_search(g, k, generated(g, k, g.all_units()), 2, SearchMode::exact);
  REQUIRE(zero);
  CHECK(zero->d() == 0);

  auto l2 = power(g, k, 2);
  auto w = kl_dad_search(g, k, l2, 1, SearchMode::exact);
  REQUIRE(w);
  CHECK(w->d() == 1);
  CHECK(w->certified);
  CHECK_FALSE(kl_dad_search(g, k, l2, 0, SearchMode::exact));

  // L = K: the oracle decides, classes need not be intervals
  const auto expect = oracle::exact_dad(g, oracle::to_ids(k), oracle::to_ids(k), 1);
  auto tight = kl_dad_search(g, k, k, 1, SearchMode::exact);
  CHECK(tight.has_value() == (expect.d >= 0));
  if (tight) CHECK(tight->d() == expect.d);

  CHECK_THROWS_AS(kl_dad_search(g, k, k, -1, SearchMode::exact), std::invalid_argument);
}

TEST_CASE("exact search agrees with brute force on small instances") {
  for (auto& c : small_cases(101, 60)) {
    INFO(c.name);
    const auto expect = oracle::exact_dad(c.g, oracle::to_ids(c.k), oracle::to_ids(c.l), 2);
    auto w = kl_dad_search(c.g, c.k, c.l, 2, SearchMode::exact);
    REQUIRE(w.has_value() == (expect.d >= 0));
    if (!w) continue;
    CHECK(w->d() == expect.d);
    CHECK(colouring_of(*w, c.g.n_units()) == expect.colouring);
    auto again = kl_dad_check(c.g, c.k, c.l, w->cover);
    CHECK(again.certified);
  }
}

TEST_CASE("greedy search is sound") {
  for (auto& c : small_cases(202, 60)) {
    INFO(c.name);
    auto w = kl_dad_search(c.g, c.k, c.l, 3, SearchMode::greedy);
    if (!w) continue;
    CHECK(kl_dad_check(c.g, c.k, c.l, w->cover).certified);
    const auto expect = oracle::exact_dad(c.g, oracle::to_ids(c.k), oracle::to_ids(c.l), 3);
    CHECK(expect.d >= 0);
    CHECK(w->d() >= expect.d);
  }
}

TEST_CASE("search is monotone in K and L") {
  std::mt19937_64 rng(303);
  for (auto& c : small_cases(303, 40)) {
    INFO(c.name);
    auto w = kl_dad_search(c.g, c.k, c.l, 3, SearchMode::exact);
    if (!w) continue;
    auto drop = oracle::random_subset(rng, c.g.n_arrows(), 0.5);
    auto smaller = c.g.empty_arrows();
    c.k.for_each([&](ArrowId a) {
      if (!drop.count(a) && !drop.count(c.g.inv(a))) smaller.insert(a);
    });
    smaller = symmetrize(c.g, smaller);
    auto extra = oracle::random_subset(rng, c.g.n_arrows(), 0.2);
    auto larger = symmetrize(c.g, c.l | c.g.arrows({extra.begin(), extra.end()}));
    auto w2 = kl_dad_search(c.g, smaller, larger, w->d(), SearchMode::exact);
    REQUIRE(w2);
    CHECK(w2->d() <= w->d());
  }
}

TEST_CASE("power schedule and padding") {
  auto g = pair_groupoid(9);
  auto k = band(g, 9, 1);
  auto s = search_power_schedule(g, k, 1, SearchMode::exact);
  CHECK(s.witness.certified);
  CHECK(s.witness.d() <= 1);
  CHECK(s.witness.l == power(g, k, s.exponent));
  if (s.exponent > 1) CHECK_FALSE(kl_dad_search(g, k, power(g, k, s.exponent - 1), 1, SearchMode::exact));

  auto padded = pad_to(g, s.witness, 3);
  CHECK(padded.cover.size() == 4);
  CHECK(padded.certified);
  CHECK(padded.generated_union() == s.witness.generated_union());
}
