#pragma once

// Topology skeleton builders (PLTN, tree, fat-tree), attribute assignment for
// both models, graph evolution for dynamic scenarios, and dataset emission.

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "autopt/netmodel.hpp"
#include "autopt/persistence.hpp"
#include "autopt/vulncatalog.hpp"

namespace autopt {

struct PltnParams {
  int total_nodes = 10;  // hosts (assets); switches and the internet gateway are extra
  double dmz_fraction = 0.2;
  double general_fraction = 0.6;
  double sensitive_fraction = 0.2;
  int general_subnets = 0;    // 0 = default max(2, total_nodes / 20)
  int sensitive_subnets = 1;  // [1, 3]
  bool backup_switches = true;
  std::uint64_t seed = 0;
};

struct TreeParams {
  int depth = 1;
  int branching = 2;
  std::uint64_t seed = 0;
};

struct FatTreeParams {
  int k = 4;  // even, >= 2
};

struct AttrProfile {
  AttrModel model = AttrModel::authentic;
  int m = 2;                       // hypothetical vector length
  int value_lo = 0, value_hi = 3;  // initial defense/detection value range
  double lan_similarity = 0.8;     // chance a node inherits its LAN template
  double patch_rate = 0.2;         // chance an inherited vulnerability was patched away
  double weak_password_rate = 0.15;
  double scan_version_rate = 0.5;  // consumed by the engine's scan action
};

struct DynamicsParams {
  double p_change = 0.1;
  std::int64_t interval = 1;  // ticks between scheduled variations (engine side)
  std::int64_t horizon = 5;   // snapshots after the initial one (dataset side)
};

// Skeletons: nodes typed, regions and LANs set, edges wired, attrs empty.
NetworkGraph build_pltn(const PltnParams& p);
NetworkGraph build_tree(const TreeParams& p);
NetworkGraph build_fattree(const FatTreeParams& p);

NetworkGraph assign_hypothetical(const NetworkGraph& skeleton, const AttrProfile& profile,
                                 std::uint64_t seed);
NetworkGraph assign_authentic(const NetworkGraph& skeleton, const AttrProfile& profile,
                              const Catalog& catalog, std::uint64_t seed);

// Scheduled variation: touches exactly ceil(p_change * |V|) nodes, each with
// one mutation (attribute rotation, edge rewire, or removal + replacement
// under a fresh id). catalog may be null for hypothetical graphs.
std::pair<NetworkGraph, GraphDelta> evolve(const NetworkGraph& g, const DynamicsParams& d,
                                           const AttrProfile& profile, const Catalog* catalog,
                                           std::uint64_t seed);

// Profile with model/m recovered from an assigned graph (for consumers that
// only hold a snapshot).
AttrProfile profile_for(const NetworkGraph& g);

// Region wiring constraint (PLTN: sensitive never touches dmz/internet, the
// internet gateway only touches dmz). Non-PLTN graphs allow everything.
bool edge_allowed(const NetworkGraph& g, NodeId a, NodeId b);

struct DatasetSpec {
  Topology topology = Topology::pltn;
  PltnParams pltn;        // total_nodes/seed overridden per cell
  TreeParams tree;        // seed overridden per cell
  FatTreeParams fattree;
  AttrProfile profile;    // model field set per kind
  DynamicsParams dynamics;
  bool include_hypothetical = true;
  bool include_authentic = true;
  bool include_static = true;
  bool include_dynamic = true;
  std::vector<int> scales{10};
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path out;
};

std::string dataset_kind_name(bool dynamic, AttrModel model);

// Emits out/<kind>/<scale>/net_<seed>/snapshot_<t>.json (+ delta_<t>.json for
// dynamic kinds) plus manifest.json at the output root. Returns the manifest.
Manifest generate_dataset(const DatasetSpec& spec, const Catalog& catalog);

}  // namespace autopt
