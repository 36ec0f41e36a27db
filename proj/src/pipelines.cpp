#include "dadg/pipelines.hpp"

#include <algorithm>
#include <stdexcept>

#include "dadg/algebra.hpp"
#include "dadg/bridge.hpp"
#include "dadg/builders.hpp"
#include "dadg/control.hpp"
#include "dadg/parallel.hpp"
#include "dadg/transfer.hpp"
#include "dadg/treeable.hpp"

namespace dadg {

std::string PipelineReport::failed_stage() const {
  for (const auto& s : stages)
    if (!s.ok) return s.name;
  return {};
}

Json PipelineReport::to_json() const {
  Json st = Json::array();
  for (const auto& s : stages) st.push_back({{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
  return {{"theorem", theorem}, {"ok", ok}, {"stages", st}, {"artifacts", artifacts}};
}

namespace {

UnitSet interval(const Groupoid& g, std::uint32_t lo, std::uint32_t hi) {
  UnitSet u = g.empty_units();
  for (std::uint32_t x = lo; x <= hi && x < g.n_units(); ++x) u.insert(x);
  return u;
}

Json sizes_of(const std::vector<UnitSet>& classes) {
  Json j = Json::array();
  for (const auto& u : classes) j.push_back(u.size());
  return j;
}

// Runs body; an exception becomes a failed stage named after the step.
template <class F>
void run_stages(PipelineReport& r, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    r.stages.push_back({"error", false, {{"message", e.what()}}});
  }
  r.ok = !r.stages.empty() && r.failed_stage().empty();
}

}  // namespace

PipelineReport product_pipeline(const ProductOptions& o) {
  PipelineReport r{"product", false, {}, Json::object()};
  run_stages(r, [&] {
    if (o.window_lo > o.window_hi || o.window_hi >= o.n) throw std::invalid_argument("product: bad window");
    const Instance inst = make_instance("path:" + std::to_string(o.n));
    const Groupoid& g = inst.groupoid;
    const ArrowSet k = parse_set_spec(inst, "ball:1");
    const int level = o.dg + o.dh;

    auto lift = [&](int d, const char* side) {
      auto dfun = ControlFunction::discovered(g, d, o.mode);
      Cover c = cover_at(dfun, k, level);
      ArrowSet l = control_apply(dfun, k, level);
      const auto fold = fold_number(c);
      r.stages.push_back({std::string("lift-") + side,
                          fold >= static_cast<std::size_t>(level + 1 - d),
                          {{"d", d}, {"level", level}, {"fold", fold}, {"class_sizes", sizes_of(c.classes)},
                           {"bound_size", l.size()}}});
      r.artifacts[std::string("cover_") + side] = cover_to_json(c);
      r.artifacts[std::string("bound_") + side] = set_json(l);
      return std::make_pair(c, l);
    };
    auto [cg, lg] = lift(o.dg, "left");
    auto [ch, lh] = lift(o.dh, "right");

    const Product p = product(g, g);
    auto w = product_combine(g, g, p, cg, ch, k, k, lg, lh, o.dg, o.dh);
    r.stages.push_back({"product", w.certified,
                        {{"d", w.d()}, {"units", p.groupoid.n_units()}, {"k_size", w.k.size()}, {"l_size", w.l.size()}}});
    r.artifacts["product_witness"] = witness_to_json(w);

    const UnitSet side = interval(g, o.window_lo, o.window_hi);
    const auto sub = restrict(p.groupoid, p.unit_product(side, side));
    const ArrowSet kc = sub.to_child(w.k), lc = sub.to_child(w.l);
    if (level == 0) {
      r.stages.push_back({"refute", true, {{"note", "nothing below d=0"}}});
      return;
    }
    auto found = kl_dad_search(sub.groupoid, kc, lc, level - 1, SearchMode::exact);
    r.stages.push_back({"refute", !found.has_value(),
                        {{"window_units", sub.groupoid.n_units()},
                         {"refuted_up_to", level - 1},
                         {"nodes", last_search_nodes()},
                         {"found_d", found ? found->d() : -1}}});
  });
  return r;
}

PipelineReport union_pipeline(const UnionOptions& o) {
  PipelineReport r{"union", false, {}, Json::object()};
  run_stages(r, [&] {
    const Instance inst = make_instance(o.instance);
    const Groupoid& g = inst.groupoid;
    std::vector<UnitSet> parts;
    if (o.parts == "half") {
      const auto n = g.n_units();
      if (n < 2) throw std::invalid_argument("union: need at least two units to split");
      parts = {interval(g, 0, n / 2 - 1), interval(g, n / 2, n - 1)};
    } else if (o.parts == "orbits") {
      for (const auto& orb : orbits(g)) parts.push_back(g.units(orb));
    } else {
      throw SchemaError("unknown partition \"" + o.parts + "\"");
    }

    std::vector<ArrowSet> ks{symmetrize(g, parse_set_spec(inst, o.k_spec))};
    std::vector<DadWitness> witnesses;
    int part_max = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto sub = restrict(g, parts[i]);
      const ArrowSet k15 = power(g, ks[i], 15);
      const auto sw = search_power_schedule(sub.groupoid, sub.to_child(k15), o.d, o.mode);
      std::vector<UnitSet> classes;
      for (const auto& u : sw.witness.cover.classes) classes.push_back(sub.to_parent(u, g));
      const ArrowSet h = sub.to_parent(sw.witness.generated_union(), g);
      ks.push_back(symmetrize(g, ks[i] | h));
      auto w = kl_dad_check(g, k15 & g.arrows_over(parts[i]), ks[i + 1], Cover{parts[i], classes});
      part_max = std::max(part_max, w.d());
      r.stages.push_back({"part-" + std::to_string(i), w.certified,
                          {{"units", parts[i].size()}, {"d", w.d()}, {"exponent", sw.exponent},
                           {"class_sizes", sizes_of(classes)}, {"next_k_size", ks.back().size()}}});
      r.artifacts["part_" + std::to_string(i)] = witness_to_json(w);
      witnesses.push_back(std::move(w));
    }
    auto glued = union_combine(g, parts, witnesses, ks);
    r.stages.push_back({"glue", glued.certified && glued.d() <= part_max,
                        {{"d", glued.d()}, {"part_max", part_max}, {"k0_size", ks.front().size()},
                         {"bound_size", glued.l.size()}}});
    r.artifacts["glued"] = witness_to_json(glued);
  });
  return r;
}

PipelineReport morita_pipeline(const MoritaOptions& o) {
  PipelineReport r{"morita", false, {}, Json::object()};
  run_stages(r, [&] {
    const Instance inst = make_instance("path:" + std::to_string(o.n));
    const Groupoid& g = inst.groupoid;
    const Blowup b = blowup(g, uniform_cover_map(g.n_units(), o.copies));
    const ArrowSet k = parse_set_spec(inst, o.k_spec);
    const ArrowSet l = parse_set_spec(inst, o.l_spec, {{"K", k}});

    auto wg = kl_dad_search(g, k, l, o.d_max, o.mode);
    r.stages.push_back({"search-base", wg.has_value(), {{"d", wg ? wg->d() : -1}}});
    if (!wg) return;
    r.artifacts["base"] = witness_to_json(*wg);

    auto lifted = blowup_lift(g, b, *wg);
    r.stages.push_back({"lift", lifted.certified && lifted.d() == wg->d(),
                        {{"d", lifted.d()}, {"units", b.groupoid.n_units()}}});
    r.artifacts["lifted"] = witness_to_json(lifted);

    const ArrowSet kb = blowup_preimage(b, k), lb = blowup_preimage(b, l);
    auto wb = kl_dad_search(b.groupoid, kb, lb, o.d_max, o.mode);
    r.stages.push_back({"search-blowup", wb.has_value() && wb->d() == wg->d(), {{"d", wb ? wb->d() : -1}}});
    if (!wb) return;
    r.artifacts["blowup"] = witness_to_json(*wb);

    auto back = blowup_transfer(g, b, *wb, k);
    r.stages.push_back({"transfer", back.certified && back.d() == wb->d() && back.l.is_subset_of(l),
                        {{"d", back.d()}, {"bound_size", back.l.size()}, {"bound_within_l", back.l.is_subset_of(l)}}});
    r.artifacts["transferred"] = witness_to_json(back);
  });
  return r;
}

PipelineReport bridge_pipeline(const BridgeOptions& o) {
  PipelineReport r{"bridge", false, {}, Json::object()};
  run_stages(r, [&] {
    const Instance inst = make_instance(o.instance);
    const Groupoid& g = inst.groupoid;
    const ArrowSet k = parse_set_spec(inst, o.k_spec);
    const ArrowSet l = parse_set_spec(inst, o.l_spec, {{"K", k}});

    auto w = kl_dad_search(g, k, l, o.d_max, o.mode);
    r.stages.push_back({"search", w.has_value(), {{"d", w ? w->d() : -1}}});
    if (!w) return;
    r.artifacts["witness"] = witness_to_json(*w);

    auto fwd = dad_to_asdim(g, *w);
    r.stages.push_back({"dad-to-asdim", fwd.certificate.ok,
                        {{"families", fwd.decomposition.families.size()}, {"reason", fwd.certificate.reason}}});
    r.artifacts["decomposition"] = decomposition_to_json(fwd.decomposition);

    const UnitSet y = g.all_units();
    auto fibres = fibre_decompositions_by_search(g, y, k, l, w->d(), AsdimMode::exact);
    if (!fibres) {
      r.stages.push_back({"fibre-search", false, {}});
      return;
    }
    auto back = asdim_to_dad(g, y, k, l, w->d(), *fibres);
    r.stages.push_back({"asdim-to-dad", back.witness.certified && back.witness.d() == w->d(),
                        {{"d", back.witness.d()}, {"class_sizes", sizes_of(back.classes)},
                         {"fundamental_domain", set_json(back.fundamental_domain)}, {"message", back.message}}});
    r.artifacts["reconstructed"] = witness_to_json(back.witness);

    auto ambient = asdim_to_dad(g, y, k, l, w->d(), fibre_decompositions_from_ambient(g, y, k, fwd.decomposition));
    r.stages.push_back({"asdim-to-dad-ambient", ambient.witness.certified && ambient.witness.d() == w->d(),
                        {{"d", ambient.witness.d()}, {"class_sizes", sizes_of(ambient.classes)},
                         {"message", ambient.message}}});
  });
  return r;
}

std::vector<SweepRow> sweep_dad(const std::vector<std::string>& instances, const std::string& k_spec,
                                const std::string& l_spec, int d_max, SearchMode mode) {
  std::vector<SweepRow> rows(instances.size());
  parallel_for(instances.size(), [&](std::size_t i) {
    const Instance inst = make_instance(instances[i]);
    const ArrowSet k = parse_set_spec(inst, k_spec);
    const ArrowSet l = parse_set_spec(inst, l_spec, {{"K", k}});
    auto w = kl_dad_search(inst.groupoid, k, l, d_max, mode);
    rows[i] = {instances[i], w ? "certified" : "none", w ? w->d() : -1, inst.groupoid.n_units(),
               inst.groupoid.n_arrows(), last_search_nodes()};
  });
  return rows;
}

std::vector<SweepRow> sweep_treeable(const std::vector<std::string>& instances, std::uint32_t n) {
  std::vector<SweepRow> rows(instances.size());
  parallel_for(instances.size(), [&](std::size_t i) {
    const Instance inst = make_instance(instances[i]);
    if (!inst.graphing) throw SchemaError("instance " + instances[i] + " has no graphing");
    auto tc = treeable_cover(inst.groupoid, *inst.graphing, n);
    rows[i] = {instances[i], tc.certificate.ok ? "certified" : "none", tc.certificate.ok ? 1 : -1,
               inst.groupoid.n_units(), inst.groupoid.n_arrows(), tc.max_diameter};
  });
  return rows;
}

}  // namespace dadg
