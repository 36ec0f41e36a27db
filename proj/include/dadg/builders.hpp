#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dadg/groupoid.hpp"

namespace dadg {

/// Pair groupoid on n points. Arrow (i,j) has range i and source j; the
/// identity (i,i) is arrow i and the others follow in lexicographic order.
Groupoid pair_groupoid(std::uint32_t n);

/// Arrow id of the pair (i,j) in pair_groupoid(n).
ArrowId pair_arrow(std::uint32_t n, std::uint32_t i, std::uint32_t j);

/// Finite group given by its Cayley table (identity is element 0) acting on
/// points 0..n_points-1. action[g][x] is g.x.
struct ActionSpec {
  std::vector<std::vector<std::uint32_t>> table;
  std::vector<std::vector<std::uint32_t>> action;
  std::uint32_t n_points = 0;
};

ActionSpec cyclic_rotation(std::uint32_t n);
ActionSpec trivial_action(std::uint32_t group_order, std::uint32_t n_points);

/// Partial action on points 0..n_points-1. Elements are indexed; element 0 is
/// the identity. theta[g][x] is the image of x (x in D_{g^-1}) or kNoPoint.
/// product[g][h] is the index of gh, or kNoElement when it leaves the window.
struct PartialActionSpec {
  static constexpr std::uint32_t kNoPoint = ~std::uint32_t{0};
  static constexpr std::uint32_t kNoElement = ~std::uint32_t{0};

  std::uint32_t n_points = 0;
  std::vector<std::string> names;
  std::vector<std::uint32_t> inverse;
  std::vector<std::vector<std::uint32_t>> product;
  std::vector<std::vector<std::uint32_t>> theta;

  /// Partial translation of Z on [0, n-1]: theta_k(x) = x + k whenever both
  /// lie in the window, for k in [-(n-1), n-1].
  static PartialActionSpec integer_shift(std::uint32_t n);
  /// Global action seen as a partial action with full domains.
  static PartialActionSpec from_action(const ActionSpec& a);
};

/// Lists every failure of the partial-action axioms; empty when valid.
std::vector<std::string> check_partial_action(const PartialActionSpec& spec);

/// Transformation groupoid of a partial action. The arrow (g, y) has source y
/// (y in D_{g^-1}) and range theta_g(y); units are (1, y), and arrows are
/// ordered by element, then source point.
Groupoid partial_action_groupoid(const PartialActionSpec& spec);

/// Transformation groupoid of a global action; identical tables to
/// partial_action_groupoid(PartialActionSpec::from_action(a)).
Groupoid action_groupoid(const ActionSpec& a);

struct Product {
  Groupoid groupoid;
  std::uint32_t left_units = 0, right_units = 0;
  std::uint32_t left_arrows = 0, right_arrows = 0;
  std::vector<std::pair<ArrowId, ArrowId>> factors;  // product arrow -> (a, b)
  std::vector<ArrowId> index;                        // a * right_arrows + b -> product arrow

  ArrowId arrow_of(ArrowId a, ArrowId b) const { return index[a * right_arrows + b]; }
  static UnitId unit_of(std::uint32_t right_units, UnitId x, UnitId y) { return x * right_units + y; }
  UnitId unit_of(UnitId x, UnitId y) const { return unit_of(right_units, x, y); }
  ArrowSet set_product(const ArrowSet& a, const ArrowSet& b) const;
  UnitSet unit_product(const UnitSet& u, const UnitSet& v) const;
};

/// G x H. Unit (x,y) has id x*|H^0|+y.
Product product(const Groupoid& g, const Groupoid& h);

/// G disjoint-union H; H's units and arrows are shifted after G's.
struct DisjointUnion {
  Groupoid groupoid;
  std::vector<ArrowId> left_arrow, right_arrow;  // old id -> new id
};
DisjointUnion disjoint_union(const Groupoid& g, const Groupoid& h);

/// Blow-up G^psi for a surjection psi : X -> G^0, with the projection functor.
struct Blowup {
  Groupoid groupoid;
  std::vector<UnitId> psi;
  std::vector<std::array<std::uint32_t, 3>> triples;  // arrow -> (x, g, y)
  std::vector<ArrowId> projection;                    // arrow -> g
};
Blowup blowup(const Groupoid& g, const std::vector<UnitId>& psi);

/// psi for `copies` points over each unit: x -> x / copies.
std::vector<UnitId> uniform_cover_map(std::uint32_t n_units, std::uint32_t copies);

/// Groupoid of the equivalence relation with the given block labels: one
/// arrow (i,j) for every pair in a common block. Identities come first, then
/// the other pairs in lexicographic order.
Groupoid equivalence_groupoid(const std::vector<std::uint32_t>& block_of);

/// Random equivalence relation on n units with blocks of size at most
/// max_block, drawn from a fixed-seed std::mt19937_64.
Groupoid random_principal(std::uint32_t n_units, std::uint32_t max_block, std::uint64_t seed);

/// Pair groupoid on the vertices of a tree, with the edge arrows as graphing.
struct TreeWindow {
  Groupoid groupoid;
  ArrowSet graphing;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};
TreeWindow path_window(std::uint32_t n);
TreeWindow binary_tree_window(std::uint32_t depth);
/// Pair groupoid on n vertices with the given undirected edges as graphing.
TreeWindow graph_window(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

}  // namespace dadg
