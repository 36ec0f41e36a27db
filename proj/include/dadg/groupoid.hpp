#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dadg/idset.hpp"

namespace dadg {

/// Raw structure tables as read from disk or produced by a builder, before
/// any axiom has been checked. Arrow ids 0..n_units-1 are the identities.
///
/// `comp` lists triples (a, b, a*b). Triples that involve an identity may be
/// omitted; they are implied by the identity laws. If present they must agree.
struct GroupoidTables {
  std::uint32_t n_units = 0;
  std::vector<UnitId> src;
  std::vector<UnitId> rng;
  std::vector<ArrowId> inv;
  std::vector<std::array<ArrowId, 3>> comp;
};

struct Violation {
  std::string axiom;
  std::vector<std::uint32_t> arrows;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Checks every groupoid axiom and lists the offending arrow ids.
ValidationReport validate(const GroupoidTables& t);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport r);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// A finite groupoid with discrete topology.
///
/// Immutable once built. Composition is stored per arrow `a` as a row over the
/// range fibre of `src(a)`, so memory is sum over units u of |G_u|*|G^u|.
class Groupoid {
 public:
  Groupoid();

  /// Validates and builds; throws ValidationError on any violated axiom.
  static Groupoid from_tables(const GroupoidTables& t);

  std::uint64_t token() const noexcept { return token_; }
  std::uint32_t n_units() const noexcept { return n_units_; }
  std::uint32_t n_arrows() const noexcept { return static_cast<std::uint32_t>(src_.size()); }

  UnitId src(ArrowId a) const { return src_[a]; }
  UnitId rng(ArrowId a) const { return rng_[a]; }
  ArrowId inv(ArrowId a) const { return inv_[a]; }
  static ArrowId identity(UnitId u) { return u; }
  bool is_unit(ArrowId a) const { return a < n_units_; }

  /// a*b; requires src(a) == rng(b).
  ArrowId compose(ArrowId a, ArrowId b) const { return comp_[a][pos_in_rng_fiber_[b]]; }
  std::optional<ArrowId> try_compose(ArrowId a, ArrowId b) const {
    if (src_[a] != rng_[b]) return std::nullopt;
    return compose(a, b);
  }

  /// Arrows g with rng(g) == u, sorted.
  const std::vector<ArrowId>& range_fiber(UnitId u) const { return by_rng_[u]; }
  /// Arrows g with src(g) == u, sorted.
  const std::vector<ArrowId>& source_fiber(UnitId u) const { return by_src_[u]; }

  ArrowSet empty_arrows() const { return ArrowSet(token_, n_arrows()); }
  ArrowSet all_arrows() const;
  ArrowSet unit_arrows() const;
  ArrowSet arrows(const std::vector<ArrowId>& ids) const {
    return ArrowSet::from_ids(token_, n_arrows(), ids);
  }
  UnitSet empty_units() const { return UnitSet(token_, n_units_); }
  UnitSet all_units() const;
  UnitSet units(const std::vector<UnitId>& ids) const {
    return UnitSet::from_ids(token_, n_units_, ids);
  }

  /// Identity arrows of the given units.
  ArrowSet identities(const UnitSet& u) const;
  UnitSet sources(const ArrowSet& k) const;
  UnitSet ranges(const ArrowSet& k) const;
  /// Arrows with both endpoints in u, i.e. the arrow set of G|_u.
  ArrowSet arrows_over(const UnitSet& u) const;

  GroupoidTables tables() const;

  void require_owner(const ArrowSet& s) const;
  void require_owner(const UnitSet& s) const;

 private:
  std::uint64_t token_ = 0;
  std::uint32_t n_units_ = 0;
  std::vector<UnitId> src_, rng_;
  std::vector<ArrowId> inv_;
  std::vector<std::vector<ArrowId>> by_rng_, by_src_;
  std::vector<std::uint32_t> pos_in_rng_fiber_;
  std::vector<std::vector<ArrowId>> comp_;
};

}  // namespace dadg
