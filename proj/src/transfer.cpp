#include "dadg/transfer.hpp"

#include <algorithm>
#include <stdexcept>

#include "dadg/algebra.hpp"

namespace dadg {

namespace {

void require_chain(const Groupoid& g, const std::vector<ArrowSet>& ks, const char* who) {
  for (std::size_t i = 0; i < ks.size(); ++i) {
    g.require_owner(ks[i]);
    if (!is_oc_normal(g, ks[i]))
      throw std::invalid_argument(std::string(who) + ": K_" + std::to_string(i) +
                                  " is not symmetric with units");
    if (i > 0 && !ks[i - 1].is_subset_of(ks[i]))
      throw std::invalid_argument(std::string(who) + ": K_" + std::to_string(i - 1) + " is not inside K_" +
                                  std::to_string(i));
  }
}

ArrowSet unit_part(const Groupoid& g, const UnitSet& u) { return g.identities(u); }

}  // namespace

GlueCertificate glue_two(const Groupoid& g, const UnitSet& v0, const UnitSet& v1, const ArrowSet& k0,
                         const ArrowSet& k1, const ArrowSet& k2) {
  g.require_owner(v0);
  g.require_owner(v1);
  require_chain(g, {k0, k1, k2}, "glue_two");
  const ArrowSet h0 = generated(g, k0, v0);
  if (!h0.is_subset_of(k1)) throw std::invalid_argument("glue_two: generated(K0, V0) is not inside K1");
  const ArrowSet h1 = generated(g, power(g, k1, 3), v1);
  if (!h1.is_subset_of(k2)) throw std::invalid_argument("glue_two: generated(K1^3, V1) is not inside K2");

  const UnitSet v = v0 | v1;
  GlueCertificate c;
  c.generated = generated(g, k0, v);
  c.bound = power(g, k2, 5);
  c.holds = c.generated.is_subset_of(c.bound);
  c.within_fourth_power = c.generated.is_subset_of(power(g, k2, 4));

  // H0 and H1 get the units of V so that either side of a case may be empty.
  const ArrowSet k0v = k0 & g.arrows_over(v);
  const ArrowSet h0u = h0 | unit_part(g, v);
  const ArrowSet h1u = h1 | unit_part(g, v);
  const ArrowSet left = compose_sets(g, h0u, k0v);
  const ArrowSet right = compose_sets(g, k0v, h0u);
  const ArrowSet middle = compose_sets(
      g, compose_sets(g, compose_sets(g, left, h1u), k0v), h0u);
  c.cases[0] = c.generated & left;
  c.cases[1] = (c.generated & right) - c.cases[0];
  c.cases[2] = (c.generated & middle) - c.cases[0] - c.cases[1];
  c.uncovered = c.generated - c.cases[0] - c.cases[1] - c.cases[2];
  return c;
}

ChainCertificate glue_chain(const Groupoid& g, const std::vector<UnitSet>& vs, const std::vector<ArrowSet>& ks) {
  if (vs.empty()) throw std::invalid_argument("glue_chain: at least one set is required");
  if (ks.size() != vs.size() + 1) throw std::invalid_argument("glue_chain: need one more K than V");
  require_chain(g, ks, "glue_chain");
  UnitSet v = g.empty_units();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    g.require_owner(vs[i]);
    if (!generated(g, power(g, ks[i], 15), vs[i]).is_subset_of(ks[i + 1]))
      throw std::invalid_argument("glue_chain: generated(K_" + std::to_string(i) + "^15, V_" + std::to_string(i) +
                                  ") is not inside K_" + std::to_string(i + 1));
    v |= vs[i];
  }
  ChainCertificate c;
  c.generated = generated(g, ks[0], v);
  c.bound = power(g, ks.back(), 5);
  c.holds = c.generated.is_subset_of(c.bound);
  if (vs.size() == 2) c.two_set_agrees = glue_two(g, vs[0], vs[1], ks[0], ks[1], ks[2]).holds == c.holds;
  return c;
}

DadWitness union_combine(const Groupoid& g, const std::vector<UnitSet>& parts,
                         const std::vector<DadWitness>& witnesses, const std::vector<ArrowSet>& ks) {
  if (parts.empty()) throw std::invalid_argument("union_combine: no parts");
  if (witnesses.size() != parts.size()) throw std::invalid_argument("union_combine: one witness per part");
  if (ks.size() != parts.size() + 1) throw std::invalid_argument("union_combine: need K_0..K_n");
  require_chain(g, ks, "union_combine");

  UnitSet seen = g.empty_units();
  for (const auto& x : parts) {
    g.require_owner(x);
    if (seen.intersects(x)) throw std::invalid_argument("union_combine: parts overlap");
    seen |= x;
  }
  if (seen != g.all_units()) throw std::invalid_argument("union_combine: parts do not cover the units");

  int d = 0;
  for (const auto& w : witnesses) d = std::max(d, w.d());
  std::vector<UnitSet> merged(static_cast<std::size_t>(d) + 1, g.empty_units());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const ArrowSet k_part = power(g, ks[i], 15) & g.arrows_over(parts[i]);
    Cover c{parts[i], witnesses[i].cover.classes};
    for (const auto& u : c.classes)
      if (!u.is_subset_of(parts[i]))
        throw std::invalid_argument("union_combine: witness " + std::to_string(i) + " leaves its part");
    if (!kl_dad_check(g, k_part, ks[i + 1], c).certified)
      throw std::invalid_argument("union_combine: witness " + std::to_string(i) +
                                  " does not certify (K_i^15 on its part, K_{i+1})");
    for (std::size_t j = 0; j < c.classes.size(); ++j) merged[j] |= c.classes[j];
  }
  auto w = kl_dad_check(g, ks.front(), power(g, ks.back(), 5), make_cover(g, std::move(merged)));
  if (!w.certified) throw std::logic_error("union_combine: merged cover escapes K_n^5");
  return w;
}

DadWitness product_combine(const Groupoid& g, const Groupoid& h, const Product& p, const Cover& cover_g,
                           const Cover& cover_h, const ArrowSet& kg, const ArrowSet& kh, const ArrowSet& lg,
                           const ArrowSet& lh, int dg, int dh) {
  if (dg < 0 || dh < 0) throw std::invalid_argument("product_combine: negative dimension");
  if (p.left_arrows != g.n_arrows() || p.right_arrows != h.n_arrows())
    throw std::invalid_argument("product_combine: product does not match the factors");
  const int k = dg + dh;
  const auto classes = static_cast<std::size_t>(k) + 1;
  auto check = [&](const Groupoid& f, const Cover& c, const ArrowSet& kf, const ArrowSet& lf, int df,
                   const char* side) {
    if (c.size() != classes)
      throw std::invalid_argument(std::string("product_combine: ") + side + " cover needs k+1 classes");
    if (fold_number(c) < classes - static_cast<std::size_t>(df))
      throw std::invalid_argument(std::string("product_combine: ") + side + " cover is not (k+1-d)-fold");
    if (c.base != f.all_units())
      throw std::invalid_argument(std::string("product_combine: ") + side + " cover must cover all units");
    for (const auto& u : c.classes)
      if (!generated(f, kf, u).is_subset_of(lf))
        throw std::invalid_argument(std::string("product_combine: ") + side + " class escapes its bound");
  };
  check(g, cover_g, kg, lg, dg, "left");
  check(h, cover_h, kh, lh, dh, "right");

  std::vector<UnitSet> prod;
  for (std::size_t i = 0; i < classes; ++i) prod.push_back(p.unit_product(cover_g.classes[i], cover_h.classes[i]));
  auto w = kl_dad_check(p.groupoid, p.set_product(kg, kh), p.set_product(lg, lh),
                        make_cover(p.groupoid, std::move(prod)));
  if (!w.certified) throw std::logic_error("product_combine: product cover does not certify");
  return w;
}

std::string functor_failure(const Groupoid& g, const Groupoid& h, const std::vector<ArrowId>& pi) {
  if (pi.size() != g.n_arrows()) return "map has the wrong length";
  for (ArrowId a = 0; a < g.n_arrows(); ++a)
    if (pi[a] >= h.n_arrows()) return "arrow " + std::to_string(a) + " maps outside the target";
  for (UnitId u = 0; u < g.n_units(); ++u)
    if (!h.is_unit(pi[u])) return "unit " + std::to_string(u) + " maps to a non-unit";
  for (ArrowId a = 0; a < g.n_arrows(); ++a) {
    if (pi[g.src(a)] != h.src(pi[a]) || pi[g.rng(a)] != h.rng(pi[a]))
      return "arrow " + std::to_string(a) + " endpoints not preserved";
    if (pi[g.inv(a)] != h.inv(pi[a])) return "arrow " + std::to_string(a) + " inverse not preserved";
  }
  for (UnitId u = 0; u < g.n_units(); ++u)
    for (ArrowId a : g.source_fiber(u))
      for (ArrowId b : g.range_fiber(u))
        if (pi[g.compose(a, b)] != h.compose(pi[a], pi[b]))
          return "composition of " + std::to_string(a) + " and " + std::to_string(b) + " not preserved";
  return {};
}

DadWitness pullback_witness(const Groupoid& g, const Groupoid& h, const std::vector<ArrowId>& pi,
                            const DadWitness& on_h, const ArrowSet& k_g, const std::optional<ArrowSet>& l_g) {
  if (auto why = functor_failure(g, h, pi); !why.empty())
    throw std::invalid_argument("pullback_witness: not a functor: " + why);
  g.require_owner(k_g);
  h.require_owner(on_h.k);
  if (!on_h.certified) throw std::invalid_argument("pullback_witness: witness on the target is not certified");
  if (!kl_dad_check(h, on_h.k, on_h.l, on_h.cover).certified)
    throw std::invalid_argument("pullback_witness: witness on the target fails re-verification");
  k_g.for_each([&](ArrowId a) {
    if (!on_h.k.contains(pi[a])) throw std::invalid_argument("pullback_witness: pi(K_G) is not inside C");
  });

  std::vector<UnitSet> classes;
  for (const auto& u : on_h.cover.classes) {
    UnitSet v = g.empty_units();
    for (UnitId x = 0; x < g.n_units(); ++x)
      if (u.contains(pi[x])) v.insert(x);
    classes.push_back(std::move(v));
  }
  ArrowSet bound = g.empty_arrows();
  if (l_g) {
    bound = *l_g;
  } else {
    for (ArrowId a = 0; a < g.n_arrows(); ++a)
      for (const auto& hi : on_h.generated_per_class)
        if (hi.contains(pi[a])) {
          bound.insert(a);
          break;
        }
    bound = symmetrize(g, bound);
  }
  auto w = kl_dad_check(g, k_g, bound, make_cover(g, std::move(classes)));
  if (!w.certified) throw std::logic_error("pullback_witness: pulled-back cover does not certify");
  return w;
}

ArrowSet blowup_preimage(const Blowup& b, const ArrowSet& k) {
  ArrowSet out = b.groupoid.empty_arrows();
  for (ArrowId a = 0; a < b.groupoid.n_arrows(); ++a)
    if (k.contains(b.projection[a])) out.insert(a);
  return out;
}

ArrowSet blowup_image(const Groupoid& g, const Blowup& b, const ArrowSet& a) {
  b.groupoid.require_owner(a);
  ArrowSet out = g.empty_arrows();
  a.for_each([&](ArrowId x) { out.insert(b.projection[x]); });
  return out;
}

DadWitness blowup_transfer(const Groupoid& g, const Blowup& b, const DadWitness& on_blowup, const ArrowSet& k,
                           const std::optional<ArrowSet>& l) {
  const Groupoid& gp = b.groupoid;
  g.require_owner(k);
  if (!on_blowup.certified || !kl_dad_check(gp, on_blowup.k, on_blowup.l, on_blowup.cover).certified)
    throw std::invalid_argument("blowup_transfer: witness on the blow-up is not certified");
  if (fold_number(Cover{gp.all_units(), on_blowup.cover.classes}) < 1)
    throw std::invalid_argument("blowup_transfer: witness does not cover the blow-up units");
  if (!blowup_preimage(b, k).is_subset_of(on_blowup.k))
    throw std::invalid_argument("blowup_transfer: witness K does not contain the preimage of K");

  std::vector<UnitSet> classes;
  for (const auto& u : on_blowup.cover.classes) {
    UnitSet v = g.empty_units();
    u.for_each([&](UnitId x) { v.insert(b.psi[x]); });
    classes.push_back(std::move(v));
  }
  ArrowSet bound = l ? *l : symmetrize(g, blowup_image(g, b, on_blowup.generated_union()));
  auto w = kl_dad_check(g, k, bound, make_cover(g, std::move(classes)));
  if (!w.certified) throw std::logic_error("blowup_transfer: transferred cover does not certify");
  return w;
}

DadWitness blowup_lift(const Groupoid& g, const Blowup& b, const DadWitness& on_g) {
  return pullback_witness(b.groupoid, g, b.projection, on_g, blowup_preimage(b, on_g.k),
                          blowup_preimage(b, on_g.l));
}

}  // namespace dadg
