#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dadg/builders.hpp"
#include "dadg/dad.hpp"

namespace dadg {

/// Outcome of gluing two generated subgroupoids.
///
/// `generated` is generated(K0, V0 u V1). The case sets split it by where an
/// arrow is first found: H0 K0, then K0 H0, then H0 K0 H1 K0 H0 (with
/// H0 = generated(K0, V0), H1 = generated(K1^3, V1)); `uncovered` is what none
/// of them contains and is empty whenever the hypotheses hold.
struct GlueCertificate {
  ArrowSet generated;
  ArrowSet bound;  // K2^5
  bool holds = false;
  bool within_fourth_power = false;  // generated within K2^4
  std::array<ArrowSet, 3> cases;
  ArrowSet uncovered;
};

/// Re-verifies K0 <= K1 <= K2 (all symmetric with units), generated(K0,V0) <= K1
/// and generated(K1^3,V1) <= K2, then certifies generated(K0, V0 u V1) <= K2^5
/// by direct computation. Throws std::invalid_argument when a hypothesis fails.
GlueCertificate glue_two(const Groupoid& g, const UnitSet& v0, const UnitSet& v1, const ArrowSet& k0,
                         const ArrowSet& k1, const ArrowSet& k2);

struct ChainCertificate {
  ArrowSet generated;
  ArrowSet bound;  // K_{n+1}^5
  bool holds = false;
  /// For two sets the two-set gluing is run as well; both must agree.
  std::optional<bool> two_set_agrees;
};

/// vs = V_0..V_n, ks = K_0..K_{n+1}. Requires an increasing chain of symmetric
/// sets with units and generated(K_i^15, V_i) <= K_{i+1}. Throws
/// std::invalid_argument when the chain hypotheses fail.
ChainCertificate glue_chain(const Groupoid& g, const std::vector<UnitSet>& vs, const std::vector<ArrowSet>& ks);

/// Clopen-partition gluing. parts = X_0..X_{n-1} must partition G^0 and
/// ks = K_0..K_n increase. witness i lives on G itself, has classes inside
/// X_i, and must certify (K_i^15 n G|_{X_i}, K_{i+1}); this is re-checked.
/// Class j of the result is the union of the parts' classes j (shorter
/// witnesses are padded with empty classes). The result is certified for
/// (K_0, K_n^5) or std::logic_error is thrown.
DadWitness union_combine(const Groupoid& g, const std::vector<UnitSet>& parts,
                         const std::vector<DadWitness>& witnesses, const std::vector<ArrowSet>& ks);

/// Product of fold-lifted witnesses. With k = dg + dh, cover_g has k+1
/// classes forming a (k+1-dg)-fold cover with generated(Kg, U_i) <= Lg, and
/// likewise for H. The result lives on p.groupoid with classes U_i x V_i,
/// K = Kg x Kh and L = Lg x Lh. Throws std::invalid_argument on a failed
/// precondition and std::logic_error if the product does not certify.
DadWitness product_combine(const Groupoid& g, const Groupoid& h, const Product& p, const Cover& cover_g,
                           const Cover& cover_h, const ArrowSet& kg, const ArrowSet& kh, const ArrowSet& lg,
                           const ArrowSet& lh, int dg, int dh);

/// Checks that pi (arrow of G -> arrow of H) preserves units, endpoints,
/// inverses and composition. Returns the first failure, or an empty string.
std::string functor_failure(const Groupoid& g, const Groupoid& h, const std::vector<ArrowId>& pi);

/// Pulls a certified witness on H (for K = C) back along pi. Classes are
/// pi^-1(U_i) n G^0; the bound is l_g if given, else the symmetrization of
/// the union of pi^-1(H_i). Requires pi(K_G) <= C. Throws
/// std::invalid_argument if pi is not a functor or the witness is not
/// certified.
DadWitness pullback_witness(const Groupoid& g, const Groupoid& h, const std::vector<ArrowId>& pi,
                            const DadWitness& on_h, const ArrowSet& k_g,
                            const std::optional<ArrowSet>& l_g = std::nullopt);

/// pi^-1(K) in the blow-up.
ArrowSet blowup_preimage(const Blowup& b, const ArrowSet& k);
/// pi(A) in the base groupoid.
ArrowSet blowup_image(const Groupoid& g, const Blowup& b, const ArrowSet& a);

/// Transfers a certified witness on G^psi for (pi^-1(K), .) to G with classes
/// psi(U_i). The bound is l if given, else the symmetrization of pi of the
/// union of the generated sets. Throws std::invalid_argument if the witness
/// does not cover X or its K misses part of pi^-1(K).
DadWitness blowup_transfer(const Groupoid& g, const Blowup& b, const DadWitness& on_blowup, const ArrowSet& k,
                           const std::optional<ArrowSet>& l = std::nullopt);

/// The inverse direction: pull a witness on G back along the projection.
/// The result certifies (pi^-1(K), pi^-1(L)).
DadWitness blowup_lift(const Groupoid& g, const Blowup& b, const DadWitness& on_g);

}  // namespace dadg
