#include "dadg/io.hpp"

#include <fstream>
#include <sstream>

#include "dadg/algebra.hpp"
#include "dadg/builders.hpp"

namespace dadg {

namespace {

std::uint32_t as_id(const Json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 0xfffffffeLL)
    throw SchemaError(std::string("expected a non-negative integer for ") + what);
  return static_cast<std::uint32_t>(v.get<long long>());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::vector<std::uint32_t> id_list(const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string("expected an array for ") + what);
  std::vector<std::uint32_t> out;
  for (const auto& v : j) out.push_back(as_id(v, what));
  return out;
}

std::uint32_t parse_count(const std::string& s, const std::string& spec) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument(s);
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    throw SchemaError("bad number \"" + s + "\" in spec \"" + spec + "\"");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

ArrowSet graphing_by_step(const Groupoid& g, std::uint32_t n) {
  ArrowSet q = g.empty_arrows();
  for (ArrowId a = g.n_units(); a < g.n_arrows(); ++a) {
    const auto s = g.src(a), r = g.rng(a);
    if ((s + 1) % n == r || (r + 1) % n == s) q.insert(a);
  }
  return q;
}

}  // namespace

GroupoidTables tables_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("instance must be a JSON object");
  GroupoidTables t;
  t.n_units = as_id(field(j, "units"), "units");
  const auto& arrows = field(j, "arrows");
  if (!arrows.is_array()) throw SchemaError("\"arrows\" must be an array");
  const std::size_t m = t.n_units + arrows.size();
  t.src.assign(m, 0);
  t.rng.assign(m, 0);
  for (UnitId u = 0; u < t.n_units; ++u) t.src[u] = t.rng[u] = u;
  std::vector<bool> seen(m, false);
  for (const auto& a : arrows) {
    const auto id = as_id(field(a, "id"), "arrow id");
    if (id < t.n_units || id >= m) throw SchemaError("arrow id " + std::to_string(id) + " out of range");
    if (seen[id]) throw SchemaError("arrow id " + std::to_string(id) + " listed twice");
    seen[id] = true;
    t.src[id] = as_id(field(a, "src"), "src");
    t.rng[id] = as_id(field(a, "rng"), "rng");
  }
  t.inv = id_list(field(j, "inv"), "inv");
  const auto& comp = field(j, "comp");
  if (!comp.is_array()) throw SchemaError("\"comp\" must be an array");
  for (const auto& c : comp) {
    if (!c.is_array() || c.size() != 3) throw SchemaError("comp entries must be [a,b,c] triples");
    t.comp.push_back({as_id(c[0], "comp"), as_id(c[1], "comp"), as_id(c[2], "comp")});
  }
  return t;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

Instance instance_from_json(const Json& j, std::string id) {
  Groupoid g = Groupoid::from_tables(tables_from_json(j));
  std::optional<ArrowSet> q;
  if (j.contains("graphing")) {
    auto ids = id_list(j.at("graphing"), "graphing");
    for (auto a : ids)
      if (a >= g.n_arrows()) throw SchemaError("graphing names arrow " + std::to_string(a) + " out of range");
    q = g.arrows(ids);
  }
  return {std::move(id), std::move(g), std::move(q)};
}

Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path), "file:" + path); }

Json instance_to_json(const Groupoid& g, const std::optional<ArrowSet>& graphing) {
  const auto t = g.tables();
  Json arrows = Json::array();
  for (ArrowId a = g.n_units(); a < g.n_arrows(); ++a) arrows.push_back({{"id", a}, {"src", t.src[a]}, {"rng", t.rng[a]}});
  Json comp = Json::array();
  for (const auto& c : t.comp) comp.push_back({c[0], c[1], c[2]});
  Json j{{"units", g.n_units()}, {"arrows", arrows}, {"inv", t.inv}, {"comp", comp}};
  if (graphing) j["graphing"] = set_json(*graphing);
  return j;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void save_instance(const std::string& path, const Groupoid& g, const std::optional<ArrowSet>& graphing) {
  write_text(path, canonical_dump(instance_to_json(g, graphing)));
}

Instance make_instance(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string& kind = parts.empty() ? spec : parts[0];
  auto need = [&](std::size_t n) {
    if (parts.size() != n + 1) throw SchemaError("spec \"" + spec + "\" needs " + std::to_string(n) + " parameter(s)");
  };
  if (kind == "file") {
    if (parts.size() < 2) throw SchemaError("spec \"file:\" needs a path");
    return load_instance(spec.substr(5));
  }
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") return load_instance(spec);
  if (kind == "pair" || kind == "path") {
    need(1);
    const auto n = parse_count(parts[1], spec);
    if (n == 0) throw SchemaError("spec \"" + spec + "\" needs at least one point");
    auto w = path_window(n);
    return {spec, std::move(w.groupoid), std::move(w.graphing)};
  }
  if (kind == "binary") {
    need(1);
    const auto k = parse_count(parts[1], spec);
    if (k > 10) throw SchemaError("spec \"" + spec + "\" is too deep");
    auto w = binary_tree_window(k);
    return {spec, std::move(w.groupoid), std::move(w.graphing)};
  }
  if (kind == "cycle") {
    need(1);
    const auto n = parse_count(parts[1], spec);
    if (n == 0) throw SchemaError("spec \"" + spec + "\" needs at least one point");
    Groupoid g = action_groupoid(cyclic_rotation(n));
    ArrowSet q = graphing_by_step(g, n);
    return {spec, std::move(g), std::move(q)};
  }
  if (kind == "shift") {
    need(1);
    const auto n = parse_count(parts[1], spec);
    if (n == 0) throw SchemaError("spec \"" + spec + "\" needs at least one point");
    Groupoid g = partial_action_groupoid(PartialActionSpec::integer_shift(n));
    ArrowSet q = g.empty_arrows();
    for (ArrowId a = g.n_units(); a < g.n_arrows(); ++a)
      if (g.src(a) + 1 == g.rng(a) || g.rng(a) + 1 == g.src(a)) q.insert(a);
    return {spec, std::move(g), std::move(q)};
  }
  if (kind == "disjoint") {
    need(2);
    auto a = path_window(parse_count(parts[1], spec));
    auto b = path_window(parse_count(parts[2], spec));
    auto u = disjoint_union(a.groupoid, b.groupoid);
    ArrowSet q = u.groupoid.empty_arrows();
    a.graphing.for_each([&](ArrowId x) { q.insert(u.left_arrow[x]); });
    b.graphing.for_each([&](ArrowId x) { q.insert(u.right_arrow[x]); });
    return {spec, std::move(u.groupoid), std::move(q)};
  }
  if (kind == "blowup") {
    need(2);
    auto a = path_window(parse_count(parts[1], spec));
    const auto copies = parse_count(parts[2], spec);
    if (copies == 0) throw SchemaError("spec \"" + spec + "\" needs at least one copy");
    auto b = blowup(a.groupoid, uniform_cover_map(a.groupoid.n_units(), copies));
    ArrowSet q = b.groupoid.empty_arrows();
    for (ArrowId x = 0; x < b.groupoid.n_arrows(); ++x)
      if (a.graphing.contains(b.projection[x])) q.insert(x);
    return {spec, std::move(b.groupoid), std::move(q)};
  }
  if (kind == "random") {
    need(3);
    Groupoid g = random_principal(parse_count(parts[1], spec), parse_count(parts[2], spec), parse_count(parts[3], spec));
    return {spec, std::move(g), std::nullopt};
  }
  throw SchemaError("unknown instance spec \"" + spec + "\"");
}

ArrowSet parse_set_spec(const Instance& inst, const std::string& spec, const std::map<std::string, ArrowSet>& named) {
  const Groupoid& g = inst.groupoid;
  if (spec == "all") return g.all_arrows();
  if (spec == "units") return g.unit_arrows();
  if (spec == "empty") return g.empty_arrows();
  if (spec.rfind("sym:", 0) == 0) return symmetrize(g, parse_set_spec(inst, spec.substr(4), named));
  if (spec.rfind("ball:", 0) == 0) {
    if (!inst.graphing) throw SchemaError("set spec \"" + spec + "\" needs an instance with a graphing");
    return power(g, symmetrize(g, *inst.graphing), parse_count(spec.substr(5), spec));
  }
  if (spec.rfind("power:", 0) == 0) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw SchemaError("set spec \"" + spec + "\" must be power:NAME:n");
    auto it = named.find(parts[1]);
    if (it == named.end()) throw SchemaError("set spec \"" + spec + "\" refers to unknown set " + parts[1]);
    return power(g, it->second, parse_count(parts[2], spec));
  }
  if (spec.rfind("ids:", 0) == 0) {
    ArrowSet out = g.empty_arrows();
    if (spec.size() > 4)
      for (const auto& s : split(spec.substr(4), ',')) {
        const auto a = parse_count(s, spec);
        if (a >= g.n_arrows()) throw SchemaError("set spec \"" + spec + "\" names arrow out of range");
        out.insert(a);
      }
    return out;
  }
  if (auto it = named.find(spec); it != named.end()) return it->second;
  throw SchemaError("unknown set spec \"" + spec + "\"");
}

Json ids_json(const std::vector<std::uint32_t>& ids) { return Json(ids); }

Json cover_to_json(const Cover& c) {
  Json classes = Json::array();
  for (const auto& u : c.classes) classes.push_back(set_json(u));
  return {{"base", set_json(c.base)}, {"classes", classes}};
}

Cover cover_from_json(const Groupoid& g, const Json& j) {
  auto units = [&](const Json& v) {
    auto ids = id_list(v, "cover");
    for (auto x : ids)
      if (x >= g.n_units()) throw SchemaError("cover names unit " + std::to_string(x) + " out of range");
    return g.units(ids);
  };
  Cover c{units(field(j, "base")), {}};
  const auto& classes = field(j, "classes");
  if (!classes.is_array()) throw SchemaError("\"classes\" must be an array");
  for (const auto& u : classes) c.classes.push_back(units(u));
  return c;
}

Json witness_to_json(const DadWitness& w) {
  Json sizes = Json::array();
  for (const auto& h : w.generated_per_class) sizes.push_back(h.size());
  Json j = cover_to_json(w.cover);
  j["k"] = set_json(w.k);
  j["l"] = set_json(w.l);
  j["k_size"] = w.k.size();
  j["l_size"] = w.l.size();
  j["generated_sizes"] = sizes;
  j["certified"] = w.certified;
  j["d"] = w.d();
  return j;
}

DadWitness witness_from_json(const Groupoid& g, const Json& j) {
  auto arrows = [&](const char* key) {
    auto ids = id_list(field(j, key), key);
    for (auto a : ids)
      if (a >= g.n_arrows()) throw SchemaError(std::string(key) + " names arrow out of range");
    return g.arrows(ids);
  };
  return kl_dad_check(g, arrows("k"), arrows("l"), cover_from_json(g, j));
}

Json decomposition_to_json(const Decomposition& d) { return {{"families", d.families}}; }

Decomposition decomposition_from_json(const Json& j) {
  Decomposition d;
  const auto& fams = field(j, "families");
  if (!fams.is_array()) throw SchemaError("\"families\" must be an array");
  for (const auto& fam : fams) {
    if (!fam.is_array()) throw SchemaError("each family must be an array");
    std::vector<std::vector<std::uint32_t>> members;
    for (const auto& m : fam) members.push_back(id_list(m, "member"));
    d.families.push_back(std::move(members));
  }
  return d;
}

}  // namespace dadg
