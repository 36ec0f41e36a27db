#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dadg/algebra.hpp"
#include "dadg/builders.hpp"
#include "dadg/io.hpp"
#include "dadg/treeable.hpp"
#include "oracles.hpp"

using namespace dadg;

#ifndef DADG_TEST_DATA
#define DADG_TEST_DATA "tests/data"
#endif

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "dadg_test_builders";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("pair groupoid") {
  auto g1 = pair_groupoid(1);
  CHECK(g1.n_units() == 1);
  CHECK(g1.n_arrows() == 1);
  auto g3 = pair_groupoid(3);
  CHECK(g3.n_arrows() == 9);
  CHECK(is_principal(g3));
  for (std::uint32_t n = 1; n <= 50; n += 7) CHECK(validate(pair_groupoid(n).tables()).ok());
  auto g = pair_groupoid(4);
  CHECK(g.compose(pair_arrow(4, 0, 2), pair_arrow(4, 2, 3)) == pair_arrow(4, 0, 3));
}

TEST_CASE("action groupoids") {
  auto triv = action_groupoid(trivial_action(1, 5));
  CHECK(triv.n_arrows() == 5);
  auto z8 = action_groupoid(cyclic_rotation(8));
  CHECK(z8.n_arrows() == 64);
  CHECK(is_principal(z8));
  CHECK_FALSE(is_principal(action_groupoid(trivial_action(2, 3))));

  ActionSpec broken = cyclic_rotation(3);
  broken.action[1] = {0, 0, 1};
  CHECK_THROWS(action_groupoid(broken));
}

TEST_CASE("partial actions") {
  auto global = PartialActionSpec::from_action(cyclic_rotation(5));
  CHECK(check_partial_action(global).empty());
  auto a = partial_action_groupoid(global).tables();
  auto b = action_groupoid(cyclic_rotation(5)).tables();
  CHECK(a.src == b.src);
  CHECK(a.rng == b.rng);
  CHECK(a.inv == b.inv);

  auto shift = PartialActionSpec::integer_shift(10);
  CHECK(check_partial_action(shift).empty());
  auto sg = partial_action_groupoid(shift);
  CHECK(is_principal(sg));
  CHECK(sg.n_arrows() == 100);
  CHECK(orbits(sg).size() == 1);

  // domains of the shift by k are [max(0,k), 9+min(0,k)]
  for (std::uint32_t e = 0; e < shift.names.size(); ++e) {
    std::uint32_t count = 0;
    for (auto y : shift.theta[e]) count += y != PartialActionSpec::kNoPoint;
    const std::string& nm = shift.names[e];
    const int k = std::stoi(nm);
    CHECK(count == static_cast<std::uint32_t>(10 - std::abs(k)));
  }

  auto empty_domains = PartialActionSpec::from_action(cyclic_rotation(3));
  empty_domains.n_points = 3;
  for (std::uint32_t e = 1; e < 3; ++e) empty_domains.theta[e].assign(3, PartialActionSpec::kNoPoint);
  CHECK(check_partial_action(empty_domains).empty());
  auto eg = partial_action_groupoid(empty_domains);
  CHECK(eg.n_arrows() == 3);

  auto bad = PartialActionSpec::from_action(cyclic_rotation(3));
  bad.theta[1] = {1, 1, 0};
  CHECK_FALSE(check_partial_action(bad).empty());
  CHECK_THROWS(partial_action_groupoid(bad));
}

TEST_CASE("blow-up") {
  auto p3 = pair_groupoid(3);
  auto same = blowup(p3, {0, 1, 2});
  CHECK(same.groupoid.n_arrows() == 9);

  auto psi = uniform_cover_map(3, 2);
  auto b = blowup(p3, psi);
  CHECK(b.groupoid.n_units() == 6);
  CHECK(is_principal(b.groupoid));
  CHECK(validate(b.groupoid.tables()).ok());

  // direct count of the fibred product
  auto gz = action_groupoid(cyclic_rotation(3));
  std::vector<UnitId> psi2{0, 0, 1, 2, 2, 2};
  auto bz = blowup(gz, psi2);
  std::size_t expected = 0;
  for (ArrowId a = 0; a < gz.n_arrows(); ++a) {
    std::size_t over_r = 0, over_s = 0;
    for (auto x : psi2) {
      over_r += x == gz.rng(a);
      over_s += x == gz.src(a);
    }
    expected += over_r * over_s;
  }
  CHECK(bz.groupoid.n_arrows() == expected);
  for (ArrowId a = 0; a < bz.groupoid.n_arrows(); ++a) {
    const auto [x, g, y] = bz.triples[a];
    CHECK(bz.projection[a] == g);
    CHECK(psi2[x] == gz.rng(g));
    CHECK(psi2[y] == gz.src(g));
  }

  CHECK_THROWS_AS(blowup(p3, {0, 0, 1}), std::invalid_argument);
}

TEST_CASE("products") {
  auto g = pair_groupoid(3);
  auto triv = action_groupoid(trivial_action(1, 1));
  CHECK(product(g, triv).groupoid.n_arrows() == 9);

  auto p22 = product(pair_groupoid(2), pair_groupoid(2));
  CHECK(p22.groupoid.n_units() == 4);
  CHECK(p22.groupoid.n_arrows() == 16);
  CHECK(is_principal(p22.groupoid));
  CHECK(orbits(p22.groupoid).size() == 1);

  auto u = action_groupoid(trivial_action(1, 3));
  CHECK(product(u, u).groupoid.n_arrows() == 9);

  auto h = action_groupoid(cyclic_rotation(4));
  auto p = product(g, h);
  CHECK(p.groupoid.n_arrows() == g.n_arrows() * h.n_arrows());
  for (UnitId x = 0; x < g.n_units(); ++x)
    for (UnitId y = 0; y < h.n_units(); ++y)
      CHECK(p.groupoid.range_fiber(p.unit_of(x, y)).size() == g.range_fiber(x).size() * h.range_fiber(y).size());
}

TEST_CASE("tree windows") {
  auto p2 = path_window(2);
  CHECK(p2.graphing.size() == 2);
  CHECK(verify_treeable(p2.groupoid, p2.graphing).ok);

  auto bt = binary_tree_window(3);
  auto check = verify_treeable(bt.groupoid, bt.graphing);
  REQUIRE(check.ok);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(bt.edges.begin(), bt.edges.end());
  auto dist = oracle::graph_distances(bt.groupoid.n_units(), edges);
  for (ArrowId a = 0; a < bt.groupoid.n_arrows(); ++a)
    CHECK(check.length[a] == dist[bt.groupoid.rng(a)][bt.groupoid.src(a)]);

  auto chord_edges = bt.edges;
  chord_edges.emplace_back(1, 2);
  auto chord = graph_window(bt.groupoid.n_units(), chord_edges);
  CHECK_FALSE(verify_treeable(chord.groupoid, chord.graphing).ok);
}

TEST_CASE("every builder passes validate") {
  std::mt19937_64 rng(3);
  for (const auto& [name, g] : oracle::random_instances(rng, 80, 200)) {
    INFO(name);
    CHECK(validate(g.tables()).ok());
  }
  CHECK(is_principal(random_principal(30, 5, 9)));
}

TEST_CASE("instance files") {
  const std::string golden = std::string(DADG_TEST_DATA) + "/p7.json";
  auto inst = load_instance(golden);
  CHECK(inst.groupoid.n_arrows() == 49);
  CHECK(inst.graphing.has_value());
  CHECK(canonical_dump(instance_to_json(inst.groupoid, inst.graphing)) == slurp(golden));

  auto path = scratch("p7_roundtrip.json");
  save_instance(path.string(), inst.groupoid, inst.graphing);
  CHECK(slurp(path.string()) == slurp(golden));

  for (const char* spec : {"binary:3", "cycle:6", "shift:5", "disjoint:3:4", "blowup:3:2", "random:12:4:5"}) {
    INFO(spec);
    auto a = make_instance(spec);
    auto p = scratch("rt.json");
    save_instance(p.string(), a.groupoid, a.graphing);
    auto b = load_instance(p.string());
    CHECK(b.groupoid.tables().src == a.groupoid.tables().src);
    CHECK(b.groupoid.tables().inv == a.groupoid.tables().inv);
    CHECK(canonical_dump(instance_to_json(b.groupoid, b.graphing)) == slurp(p.string()));
  }
}

TEST_CASE("corrupted instance files are rejected") {
  auto j = read_json_file(std::string(DADG_TEST_DATA) + "/p7.json");
  auto bad = j;
  auto& triple = bad["comp"][0];
  const auto a = triple[0].get<std::uint32_t>();
  const auto b = triple[1].get<std::uint32_t>();
  triple[2] = triple[2].get<std::uint32_t>() == 7 ? 8 : 7;
  try {
    instance_from_json(bad, "bad");
    FAIL("accepted a corrupted triple");
  } catch (const ValidationError& e) {
    bool named = false;
    for (const auto& v : e.report().violations)
      named = named || (v.arrows.size() >= 2 && v.arrows[0] == a && v.arrows[1] == b);
    CHECK(named);
  }

  auto missing = j;
  missing.erase("inv");
  CHECK_THROWS_AS(instance_from_json(missing, "m"), SchemaError);
  CHECK_THROWS_AS(make_instance("nonsense:3"), SchemaError);
  CHECK_THROWS_AS(read_json_file(scratch("absent.json").string()), SchemaError);
}
