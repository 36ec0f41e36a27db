#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dadg/algebra.hpp"
#include "dadg/coarse.hpp"
#include "dadg/dad.hpp"

namespace dadg {

struct DadToAsdim {
  Decomposition decomposition;  // points are arrow ids of G
  ArrowSet e_set;               // K
  ArrowSet f_set;               // symmetrization of the union of the H_i
  AsdimCheck certificate;
};

/// Family i consists of the classes of g ~_i h (r(g) = r(h), g^-1 h in H_i)
/// on the arrows whose source lies in U_i. Throws std::invalid_argument if
/// the witness is not certified and std::logic_error if ~_i is not
/// transitive.
DadToAsdim dad_to_asdim(const Groupoid& g, const DadWitness& w);

/// Decomposition of one fibre H^x: blocks[i][j] is D_{i,j}^x, a list of
/// arrow ids with range x; T_i^x is the union over j.
struct FibreDecomposition {
  UnitId unit = 0;
  std::vector<std::vector<std::vector<ArrowId>>> blocks;
};

struct AsdimToDad {
  Restriction restriction;      // G|_Y
  ArrowSet h;                   // generated(K, Y) in G
  UnitSet fundamental_domain;   // Y_*, minimum of each H-orbit
  std::vector<UnitSet> classes; // U_i as units of G
  DadWitness witness;           // on restriction.groupoid for (K|_Y, L|_Y)
  std::string message;          // first failing step when not certified
};

/// Builds U_i = {s(h) : h in H n T_i, r(h) in Y_*} from fibrewise data and
/// certifies it on G|_Y. Every x in Y needs a fibre decomposition that
/// partitions H^x, whose blocks within one T_i are K-disjoint and satisfy
/// D^-1 D <= L. Throws std::invalid_argument if G is not principal or a
/// fibre decomposition fails these checks.
AsdimToDad asdim_to_dad(const Groupoid& g, const UnitSet& y, const ArrowSet& k, const ArrowSet& l, int d,
                        const std::vector<FibreDecomposition>& fibres);

/// Fibre decompositions from ef_asdim_search on each H^x with
/// E = {g^-1 h in K} and F = {g^-1 h in L}; none if some fibre fails.
std::optional<std::vector<FibreDecomposition>> fibre_decompositions_by_search(const Groupoid& g, const UnitSet& y,
                                                                            const ArrowSet& k, const ArrowSet& l,
                                                                            int d_max, AsdimMode mode);

/// Fibre decompositions obtained by intersecting a decomposition of all
/// arrows of G with each H^x.
std::vector<FibreDecomposition> fibre_decompositions_from_ambient(const Groupoid& g, const UnitSet& y,
                                                                  const ArrowSet& k, const Decomposition& ambient);

}  // namespace dadg
