#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dadg/coarse.hpp"
#include "dadg/cover.hpp"
#include "dadg/dad.hpp"
#include "dadg/groupoid.hpp"

namespace dadg {

using Json = nlohmann::json;

/// Malformed input: bad JSON, wrong shape, unknown spec.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A groupoid together with an optional graphing and the spec it came from.
struct Instance {
  std::string id;
  Groupoid groupoid;
  std::optional<ArrowSet> graphing;
};

/// Instance file layout:
///   {"units": n, "arrows": [{"id","src","rng"}...], "inv": [...],
///    "comp": [[a,b,c]...], "graphing": [...]}
/// Identities are the ids 0..n-1 and are not listed under "arrows"; "inv"
/// covers every arrow id; "comp" may omit triples that involve an identity;
/// "graphing" is optional.
GroupoidTables tables_from_json(const Json& j);
/// Reads and parses a file; throws SchemaError.
Json read_json_file(const std::string& path);
/// Builds the groupoid; throws SchemaError or ValidationError.
Instance instance_from_json(const Json& j, std::string id);
Instance load_instance(const std::string& path);

Json instance_to_json(const Groupoid& g, const std::optional<ArrowSet>& graphing = std::nullopt);
/// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);
void write_text(const std::string& path, const std::string& text);
void save_instance(const std::string& path, const Groupoid& g, const std::optional<ArrowSet>& graphing = std::nullopt);

/// Instance specs:
///   pair:n | path:n   pair groupoid on n points, graphing i -> i+-1
///   binary:k          pair groupoid on a depth-k binary tree, edge graphing
///   cycle:n           rotation action of Z/n on n points, graphing by +-1
///   shift:n           partial translation action of Z on [0,n-1], graphing by +-1
///   disjoint:a:b      path:a disjoint-union path:b
///   blowup:n:c        path:n blown up with c points over each unit
///   random:n:b:seed   random equivalence relation, blocks of size <= b
///   file:PATH, or any path ending in .json
Instance make_instance(const std::string& spec);

/// Arrow-set specs, evaluated against an instance and already named sets:
///   all | units | empty | ball:r | power:NAME:n | sym:SPEC | ids:a,b,...
/// ball:r is the r-th power of the symmetrized graphing.
ArrowSet parse_set_spec(const Instance& inst, const std::string& spec,
                        const std::map<std::string, ArrowSet>& named = {});

Json ids_json(const std::vector<std::uint32_t>& ids);
template <class Tag>
Json set_json(const IdSet<Tag>& s) {
  return ids_json(s.ids());
}

/// {"base": [...], "classes": [[...], ...]}
Json cover_to_json(const Cover& c);
Cover cover_from_json(const Groupoid& g, const Json& j);

/// Cover plus K, L, generated-set sizes and the certified flag.
Json witness_to_json(const DadWitness& w);
DadWitness witness_from_json(const Groupoid& g, const Json& j);

/// {"families": [[[points...], ...], ...]}
Json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j);

}  // namespace dadg
