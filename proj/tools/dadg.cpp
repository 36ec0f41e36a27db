// dadg: batch front-end for the groupoid dimension library.
//
// Exit codes: 0 success or certified, 1 refuted or none, 2 input error.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dadg/algebra.hpp"
#include "dadg/bridge.hpp"
#include "dadg/builders.hpp"
#include "dadg/coarse.hpp"
#include "dadg/io.hpp"
#include "dadg/pipelines.hpp"
#include "dadg/treeable.hpp"

namespace fs = std::filesystem;
using namespace dadg;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct Common {
  std::string out;
  bool timing = false;
  std::uint64_t seed = 20240601;
};

SearchMode parse_mode(const std::string& m) {
  if (m == "exact") return SearchMode::exact;
  if (m == "greedy") return SearchMode::greedy;
  throw SchemaError("unknown mode \"" + m + "\"");
}

AsdimMode parse_asdim_mode(const std::string& m) {
  if (m == "exact") return AsdimMode::exact;
  if (m == "greedy") return AsdimMode::greedy;
  if (m == "auto") return AsdimMode::automatic;
  throw SchemaError("unknown mode \"" + m + "\"");
}

// "4..16" or "3,5,9"
std::vector<std::uint32_t> parse_sizes(const std::string& s) {
  std::vector<std::uint32_t> out;
  try {
    if (auto dots = s.find(".."); dots != std::string::npos) {
      const auto lo = std::stoul(s.substr(0, dots)), hi = std::stoul(s.substr(dots + 2));
      for (auto v = lo; v <= hi; ++v) out.push_back(static_cast<std::uint32_t>(v));
    } else {
      std::istringstream in(s);
      for (std::string tok; std::getline(in, tok, ',');) out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    }
  } catch (const std::exception&) {
    throw SchemaError("bad size list \"" + s + "\"");
  }
  if (out.empty()) throw SchemaError("empty size list \"" + s + "\"");
  return out;
}

void write_artifact(const Common& c, const std::string& name, const Json& j) {
  if (c.out.empty()) return;
  fs::create_directories(c.out);
  write_text((fs::path(c.out) / name).string(), canonical_dump(j));
}

class Timer {
 public:
  Timer(bool on, std::string what) : on_(on), what_(std::move(what)), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    if (!on_) return;
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    std::cerr << "wall_ms\t" << what_ << "\t" << ms << "\n";
  }

 private:
  bool on_;
  std::string what_;
  std::chrono::steady_clock::time_point start_;
};

// validate ------------------------------------------------------------------

struct ValidateArgs {
  std::string path;
};

// Returns 0 clean, 1 violations, 2 unreadable; fills the status and detail.
int validate_file(const std::string& path, std::string& status, std::string& detail) {
  try {
    const auto report = validate(tables_from_json(read_json_file(path)));
    if (report.ok()) {
      status = "ok";
      return kOk;
    }
    status = "invalid";
    detail = report.to_string();
    return kNegative;
  } catch (const SchemaError& e) {
    status = "schema-error";
    detail = e.what();
    return kInputError;
  }
}

int cmd_validate(const ValidateArgs& a, const Common&) {
  if (fs::is_directory(a.path)) {
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(a.path))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    std::cout << "file\tstatus\tviolations\n";
    int worst = kOk;
    for (const auto& f : files) {
      std::string status, detail;
      worst = std::max(worst, validate_file(f, status, detail));
      std::replace(detail.begin(), detail.end(), '\n', ';');
      std::cout << fs::path(f).filename().string() << "\t" << status << "\t" << detail << "\n";
    }
    return worst;
  }
  std::string status, detail;
  const int code = validate_file(a.path, status, detail);
  std::cout << a.path << "\t" << status << "\n";
  if (!detail.empty()) std::cout << detail << (detail.back() == '\n' ? "" : "\n");
  return code;
}

// dad -----------------------------------------------------------------------

struct DadArgs {
  std::string instance = "pair:7";
  std::string k_spec = "ball:1";
  std::string l_spec = "power:K:2";
  int d_max = 3;
  std::string mode = "exact";
};

int cmd_dad(const DadArgs& a, const Common& c) {
  Timer t(c.timing, "dad");
  const Instance inst = make_instance(a.instance);
  const ArrowSet k = parse_set_spec(inst, a.k_spec);
  const ArrowSet l = parse_set_spec(inst, a.l_spec, {{"K", k}});
  auto w = kl_dad_search(inst.groupoid, k, l, a.d_max, parse_mode(a.mode));
  std::cout << "instance\tk_spec\tl_spec\td_max\tmode\tresult\td\tk_size\tl_size\tnodes\n";
  std::cout << a.instance << "\t" << a.k_spec << "\t" << a.l_spec << "\t" << a.d_max << "\t" << a.mode << "\t"
            << (w ? "certified" : "none") << "\t" << (w ? w->d() : -1) << "\t" << k.size() << "\t" << l.size() << "\t"
            << last_search_nodes() << "\n";
  if (w) {
    Json j = witness_to_json(*w);
    j["instance"] = a.instance;
    j["k_spec"] = a.k_spec;
    j["l_spec"] = a.l_spec;
    write_artifact(c, "witness.json", j);
  }
  return w ? kOk : kNegative;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::string witness;
  std::string instance;
};

int cmd_verify(const VerifyArgs& a, const Common&) {
  const Json j = read_json_file(a.witness);
  std::string spec = a.instance;
  if (spec.empty()) {
    if (!j.contains("instance") || !j["instance"].is_string()) throw SchemaError("witness names no instance");
    spec = j["instance"].get<std::string>();
  }
  const Instance inst = make_instance(spec);
  const auto w = witness_from_json(inst.groupoid, j);
  std::cout << "witness\tinstance\tcertified\td\n"
            << a.witness << "\t" << spec << "\t" << (w.certified ? "certified" : "refuted") << "\t" << w.d() << "\n";
  return w.certified ? kOk : kNegative;
}

// asdim ---------------------------------------------------------------------

struct AsdimArgs {
  std::string instance = "pair:7";
  std::string space = "fiber";
  std::uint32_t unit = 0;
  std::string e_spec = "ball:1";
  std::string f_spec = "power:E:2";
  int d_max = 3;
  std::string mode = "auto";
  std::uint32_t treeable = 0;
};

int cmd_asdim(const AsdimArgs& a, const Common& c) {
  Timer t(c.timing, "asdim");
  const Instance inst = make_instance(a.instance);
  const Groupoid& g = inst.groupoid;
  if (a.treeable > 0) {
    if (!inst.graphing) throw SchemaError("instance has no graphing");
    const auto tc = treeable_cover(g, *inst.graphing, a.treeable);
    std::cout << "class_id\tannulus\tsize\tdiameter\n";
    for (const auto& r : tc.rows) std::cout << r.class_id << "\t" << r.annulus << "\t" << r.size << "\t" << r.diameter << "\n";
    std::cout << "# instance\tN\tresult\td\tmax_diameter\tbound\n"
              << "# " << a.instance << "\t" << a.treeable << "\t" << (tc.certificate.ok ? "certified" : "refuted")
              << "\t1\t" << tc.max_diameter << "\t" << 4 * a.treeable << "\n";
    write_artifact(c, "treeable.json", decomposition_to_json(tc.decomposition));
    return tc.certificate.ok ? kOk : kNegative;
  }
  const ArrowSet e = parse_set_spec(inst, a.e_spec);
  const ArrowSet f = parse_set_spec(inst, a.f_spec, {{"E", e}});
  Gauge ge, gf;
  if (a.space == "fiber") {
    auto s = fiber(g, a.unit, {{"E", e}, {"F", f}});
    ge = s.gauges.at("E");
    gf = s.gauges.at("F");
  } else if (a.space == "arrows") {
    ge = gauge_from(g, e);
    gf = gauge_from(g, f);
  } else {
    throw SchemaError("unknown space \"" + a.space + "\"");
  }
  auto dec = ef_asdim_search(ge, gf, a.d_max, parse_asdim_mode(a.mode));
  std::size_t members = 0;
  if (dec)
    for (const auto& fam : dec->families) members += fam.size();
  std::cout << "instance\tspace\te_spec\tf_spec\tresult\td\tpoints\tmembers\n"
            << a.instance << "\t" << a.space << "\t" << a.e_spec << "\t" << a.f_spec << "\t"
            << (dec ? "certified" : "none") << "\t" << (dec ? dec->d() : -1) << "\t" << ge.n_points() << "\t" << members
            << "\n";
  if (dec) write_artifact(c, "decomposition.json", decomposition_to_json(*dec));
  return dec ? kOk : kNegative;
}

// theorem -------------------------------------------------------------------

struct TheoremArgs {
  std::string which;
  std::string instance;
  std::uint32_t n = 0;
  int dg = 1, dh = 1;
  std::string parts = "half";
  int d = 1;
  std::uint32_t copies = 2;
  std::string k_spec = "ball:1";
  std::string l_spec;
  int d_max = 3;
  std::string mode = "exact";
};

int cmd_theorem(const TheoremArgs& a, const Common& c) {
  Timer t(c.timing, "theorem " + a.which);
  const SearchMode mode = parse_mode(a.mode);
  PipelineReport r;
  if (a.which == "product") {
    ProductOptions o;
    if (a.n) o.n = a.n;
    o.dg = a.dg;
    o.dh = a.dh;
    o.mode = mode;
    r = product_pipeline(o);
  } else if (a.which == "union") {
    UnionOptions o;
    if (!a.instance.empty()) o.instance = a.instance;
    o.k_spec = a.k_spec;
    o.parts = a.parts;
    o.d = a.d;
    o.mode = mode;
    r = union_pipeline(o);
  } else if (a.which == "morita") {
    MoritaOptions o;
    if (a.n) o.n = a.n;
    o.copies = a.copies;
    o.k_spec = a.k_spec;
    if (!a.l_spec.empty()) o.l_spec = a.l_spec;
    o.d_max = a.d_max;
    o.mode = mode;
    r = morita_pipeline(o);
  } else if (a.which == "bridge") {
    BridgeOptions o;
    if (!a.instance.empty()) o.instance = a.instance;
    o.k_spec = a.k_spec;
    if (!a.l_spec.empty()) o.l_spec = a.l_spec;
    o.d_max = a.d_max;
    o.mode = mode;
    r = bridge_pipeline(o);
  } else {
    throw SchemaError("unknown theorem \"" + a.which + "\"");
  }
  std::cout << "theorem\tstage\tok\tdetail\n";
  for (const auto& s : r.stages) std::cout << r.theorem << "\t" << s.name << "\t" << (s.ok ? "ok" : "fail") << "\t" << s.detail.dump() << "\n";
  write_artifact(c, "theorem_" + r.theorem + ".json", r.to_json());
  if (!r.ok) std::cerr << "stage failed: " << r.failed_stage() << "\n";
  return r.ok ? kOk : kNegative;
}

// sweep ---------------------------------------------------------------------

struct SweepArgs {
  std::string family = "pair";
  std::string sizes = "4..16";
  std::string k_spec = "ball:1";
  std::string l_spec = "power:K:2";
  int d_max = 3;
  std::string mode = "exact";
  std::uint32_t treeable = 0;
};

int cmd_sweep(const SweepArgs& a, const Common& c) {
  Timer t(c.timing, "sweep");
  std::vector<std::string> specs;
  for (auto n : parse_sizes(a.sizes)) specs.push_back(a.family + ":" + std::to_string(n));
  const auto rows = a.treeable > 0 ? sweep_treeable(specs, a.treeable)
                                   : sweep_dad(specs, a.k_spec, a.l_spec, a.d_max, parse_mode(a.mode));
  std::ostringstream tsv;
  tsv << "instance\tunits\tarrows\tresult\td\t" << (a.treeable > 0 ? "max_diameter" : "nodes") << "\n";
  for (const auto& r : rows)
    tsv << r.instance << "\t" << r.units << "\t" << r.arrows << "\t" << r.result << "\t" << r.d << "\t" << r.extra << "\n";
  std::cout << tsv.str();
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    write_text((fs::path(c.out) / "sweep.tsv").string(), tsv.str());
  }
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.result == "certified"; }) ? kOk
                                                                                                         : kNegative;
}

// build ---------------------------------------------------------------------

struct BuildArgs {
  std::string family = "pair";
  std::uint32_t n = 3;
  std::uint32_t m = 3;
  std::uint32_t copies = 2;
  std::uint32_t block = 3;
};

int cmd_build(const BuildArgs& a, const Common& c) {
  std::string spec;
  const auto n = std::to_string(a.n);
  if (a.family == "pair" || a.family == "path" || a.family == "binary" || a.family == "cycle" || a.family == "shift" ||
      a.family == "tree")
    spec = (a.family == "tree" ? "binary" : a.family) + ":" + n;
  else if (a.family == "disjoint")
    spec = "disjoint:" + n + ":" + std::to_string(a.m);
  else if (a.family == "blowup")
    spec = "blowup:" + n + ":" + std::to_string(a.copies);
  else if (a.family == "random")
    spec = "random:" + n + ":" + std::to_string(a.block) + ":" + std::to_string(c.seed);
  else if (a.family == "product") {
    auto g = path_window(a.n).groupoid;
    auto h = path_window(a.m).groupoid;
    const std::string text = canonical_dump(instance_to_json(product(g, h).groupoid));
    if (c.out.empty()) std::cout << text;
    else write_text(c.out, text);
    return kOk;
  } else
    throw SchemaError("unknown family \"" + a.family + "\"");
  const Instance inst = make_instance(spec);
  const std::string text = canonical_dump(instance_to_json(inst.groupoid, inst.graphing));
  if (c.out.empty()) std::cout << text;
  else write_text(c.out, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dadg: dynamic asymptotic dimension of finite groupoids"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "seed for randomized families");
  app.add_flag("--timing", common.timing, "print wall time to stderr");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "artifact directory (file for build)");
    sub->add_flag("--timing", common.timing, "print wall time to stderr");
    sub->add_option("--seed", common.seed, "seed for randomized families");
  };

  ValidateArgs va;
  auto* v = app.add_subcommand("validate", "check groupoid axioms of a file or a directory of files");
  v->add_option("path", va.path)->required();
  add_common(v);

  DadArgs da;
  auto* d = app.add_subcommand("dad", "search a (K,L) witness");
  d->add_option("--instance", da.instance);
  d->add_option("--k-spec", da.k_spec);
  d->add_option("--l-spec", da.l_spec);
  d->add_option("--d-max", da.d_max);
  d->add_option("--mode", da.mode);
  add_common(d);

  VerifyArgs vfa;
  auto* vf = app.add_subcommand("verify", "re-check a serialized witness");
  vf->add_option("witness", vfa.witness)->required();
  vf->add_option("--instance", vfa.instance);
  add_common(vf);

  AsdimArgs aa;
  auto* as = app.add_subcommand("asdim", "search an (E,F) decomposition or a treeable cover");
  as->add_option("--instance", aa.instance);
  as->add_option("--space", aa.space, "fiber | arrows");
  as->add_option("--unit", aa.unit);
  as->add_option("--e-spec", aa.e_spec);
  as->add_option("--f-spec", aa.f_spec);
  as->add_option("--d-max", aa.d_max);
  as->add_option("--mode", aa.mode, "exact | greedy | auto");
  as->add_option("--treeable", aa.treeable, "annulus scale N; uses the instance graphing");
  add_common(as);

  TheoremArgs ta;
  auto* th = app.add_subcommand("theorem", "run a theorem pipeline: product | union | morita | bridge");
  th->add_option("which", ta.which)->required();
  th->add_option("--instance", ta.instance);
  th->add_option("--n", ta.n);
  th->add_option("--dg", ta.dg);
  th->add_option("--dh", ta.dh);
  th->add_option("--parts", ta.parts, "half | orbits");
  th->add_option("--d", ta.d);
  th->add_option("--copies", ta.copies);
  th->add_option("--k-spec", ta.k_spec);
  th->add_option("--l-spec", ta.l_spec);
  th->add_option("--d-max", ta.d_max);
  th->add_option("--mode", ta.mode);
  add_common(th);

  SweepArgs sa;
  auto* sw = app.add_subcommand("sweep", "run searches over a family of window sizes");
  sw->add_option("--family", sa.family);
  sw->add_option("--sizes", sa.sizes, "a..b or a,b,c");
  sw->add_option("--k-spec", sa.k_spec);
  sw->add_option("--l-spec", sa.l_spec);
  sw->add_option("--d-max", sa.d_max);
  sw->add_option("--mode", sa.mode);
  sw->add_option("--treeable", sa.treeable);
  add_common(sw);

  BuildArgs ba;
  auto* b = app.add_subcommand("build", "write an instance file");
  b->add_option("--family", ba.family, "pair | path | binary | cycle | shift | disjoint | blowup | product | random");
  b->add_option("--n", ba.n);
  b->add_option("--m", ba.m);
  b->add_option("--copies", ba.copies);
  b->add_option("--block", ba.block);
  add_common(b);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*v) return cmd_validate(va, common);
    if (*d) return cmd_dad(da, common);
    if (*vf) return cmd_verify(vfa, common);
    if (*as) return cmd_asdim(aa, common);
    if (*th) return cmd_theorem(ta, common);
    if (*sw) return cmd_sweep(sa, common);
    if (*b) return cmd_build(ba, common);
  } catch (const ValidationError& e) {
    std::cerr << "invalid groupoid:\n" << e.report().to_string();
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
