#pragma once

#include <string>
#include <vector>

#include "dadg/dad.hpp"
#include "dadg/io.hpp"

namespace dadg {

struct Stage {
  std::string name;
  bool ok = false;
  Json detail;
};

/// End-to-end run of one theorem at window scale. Every stage records what it
/// checked; `artifacts` holds the intermediate witnesses by name.
struct PipelineReport {
  std::string theorem;
  bool ok = false;
  std::vector<Stage> stages;
  Json artifacts = Json::object();

  /// Name of the first failing stage, or empty.
  std::string failed_stage() const;
  Json to_json() const;
};

struct ProductOptions {
  std::uint32_t n = 7;
  int dg = 1;
  int dh = 1;
  std::uint32_t window_lo = 1;  // refutation window {lo..hi} x {lo..hi}
  std::uint32_t window_hi = 5;
  SearchMode mode = SearchMode::exact;
};

/// path:n x path:n with K = ball:1 on each side, discovered control
/// functions lifted to level dg+dh, the product witness, and an exact
/// refutation of d = dg+dh-1 at the same (K, L) on the window.
PipelineReport product_pipeline(const ProductOptions& o);

struct UnionOptions {
  std::string instance = "pair:13";
  std::string k_spec = "ball:1";
  std::string parts = "half";  // half | orbits
  int d = 1;
  SearchMode mode = SearchMode::exact;
};

/// Builds K_{i+1} from part i's witness for K_i^15 on G|_{X_i}, then glues
/// into a (K_0, K_n^5) witness on G.
PipelineReport union_pipeline(const UnionOptions& o);

struct MoritaOptions {
  std::uint32_t n = 3;
  std::uint32_t copies = 2;
  std::string k_spec = "ball:1";
  std::string l_spec = "ball:1";
  int d_max = 3;
  SearchMode mode = SearchMode::exact;
};

/// Search on G, lift to the blow-up, search on the blow-up, transfer back;
/// all three dimensions must agree.
PipelineReport morita_pipeline(const MoritaOptions& o);

struct BridgeOptions {
  std::string instance = "pair:7";
  std::string k_spec = "ball:1";
  std::string l_spec = "power:K:2";
  int d_max = 3;
  SearchMode mode = SearchMode::exact;
};

/// dad witness -> arrow-space decomposition -> fibrewise decompositions ->
/// dad witness, both from per-fibre searches and from the ambient
/// decomposition.
PipelineReport bridge_pipeline(const BridgeOptions& o);

struct SweepRow {
  std::string instance;
  std::string result;  // certified | none
  int d = -1;
  std::size_t units = 0;
  std::size_t arrows = 0;
  std::size_t extra = 0;  // search nodes, or max class diameter for trees
};

/// kl_dad_search on each instance spec; rows come back in input order.
std::vector<SweepRow> sweep_dad(const std::vector<std::string>& instances, const std::string& k_spec,
                                const std::string& l_spec, int d_max, SearchMode mode);
/// treeable_cover at scale N on each instance; d is 1 when the certificate
/// holds.
std::vector<SweepRow> sweep_treeable(const std::vector<std::string>& instances, std::uint32_t n);

}  // namespace dadg
