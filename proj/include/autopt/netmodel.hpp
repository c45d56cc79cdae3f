#pragma once

// Attributed-graph data model shared by the generator, engine and persistence
// layers. Everything here is a value type: graphs are immutable in spirit and
// change only by producing new values (apply_delta).

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace autopt {

using Json = nlohmann::json;

// Error with a stable machine-readable code ("unknown-node", "parse-error", ...).
class SimError : public std::runtime_error {
 public:
  SimError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Rounds to 6 decimals. Model floats are quantized at creation so that the
// fixed 6-decimal serialization round-trips to the exact same double.
inline double quantize6(double x) { return std::round(x * 1e6) / 1e6; }

struct NodeId {
  std::uint64_t value = 0;
  auto operator<=>(const NodeId&) const = default;
};

enum class Region { internet, dmz, general, sensitive, none };
enum class OsKind { windows, linux, other };
enum class Topology { pltn, tree, fattree };
enum class AttrModel { none, hypothetical, authentic };
enum class AccountLevel { standard, administrative, domain_admin };

std::string to_string(Region r);
std::string to_string(OsKind o);
std::string to_string(Topology t);
std::string to_string(AttrModel m);
std::string to_string(AccountLevel l);
Region region_from_string(const std::string& s);
OsKind os_from_string(const std::string& s);
Topology topology_from_string(const std::string& s);
AttrModel attr_model_from_string(const std::string& s);
AccountLevel account_level_from_string(const std::string& s);

struct ServiceEntry {
  int port = 0;
  std::string name;
  std::string version;  // empty when unknown
  auto operator<=>(const ServiceEntry&) const = default;
};

struct SoftwareEntry {
  std::string name;
  std::string version;
  auto operator<=>(const SoftwareEntry&) const = default;
};

struct AccountEntry {
  std::string user;
  std::string password;
  AccountLevel level = AccountLevel::standard;
  bool weak = false;  // password appears in the bundled weak-password list
  auto operator<=>(const AccountEntry&) const = default;
};

struct NodeVuln {
  std::string cve_id;
  double p_success = 0.0;  // clamped to [0.01, 0.99]
  auto operator<=>(const NodeVuln&) const = default;
};

struct AuthenticAttrs {
  std::string ip;
  OsKind system = OsKind::other;
  std::vector<ServiceEntry> services;
  std::vector<SoftwareEntry> software;
  std::vector<AccountEntry> accounts;
  std::vector<NodeVuln> vulns;
  double value = 0.0;      // reward on first compromise
  bool sensitive = false;  // sensitive implies value > 0
  bool operator==(const AuthenticAttrs&) const = default;
};

struct HypotheticalAttrs {
  std::vector<int> attack;   // length m, all zeros at generation
  std::vector<int> defense;  // length m
  int detection = 0;         // the (m+1)-th defense attribute
  bool operator==(const HypotheticalAttrs&) const = default;
};

using NodeAttrs = std::variant<std::monostate, HypotheticalAttrs, AuthenticAttrs>;

struct NodeRecord {
  NodeId id;
  Region region = Region::none;
  std::string node_type;  // "server", "switch", "internet"; open set
  std::string lan_id;
  NodeAttrs attrs;  // monostate on generator skeletons
  bool operator==(const NodeRecord&) const = default;
  bool is_switch() const { return node_type == "switch"; }
  const AuthenticAttrs* authentic() const { return std::get_if<AuthenticAttrs>(&attrs); }
  const HypotheticalAttrs* hypothetical() const { return std::get_if<HypotheticalAttrs>(&attrs); }
  AuthenticAttrs* authentic() { return std::get_if<AuthenticAttrs>(&attrs); }
  HypotheticalAttrs* hypothetical() { return std::get_if<HypotheticalAttrs>(&attrs); }
};

// Undirected edge; endpoints normalized so a < b. Set identity is the pair
// only, structural equality includes attrs.
struct Edge {
  NodeId a, b;
  std::map<std::string, std::string> attrs;

  Edge() = default;
  Edge(NodeId x, NodeId y, std::map<std::string, std::string> at = {})
      : a(x < y ? x : y), b(x < y ? y : x), attrs(std::move(at)) {}

  bool operator==(const Edge&) const = default;
  bool operator<(const Edge& o) const { return a != o.a ? a < o.a : b < o.b; }
  bool touches(NodeId n) const { return a == n || b == n; }
  NodeId other(NodeId n) const { return a == n ? b : a; }
};

struct GraphMeta {
  Topology topology = Topology::pltn;
  AttrModel attr_model = AttrModel::none;
  int scale = 0;
  std::uint64_t seed = 0;
  std::int64_t snapshot_time = 0;
  std::string lineage_id;
  std::uint64_t next_node_id = 0;  // id allocation watermark; ids never reused
  bool operator==(const GraphMeta&) const = default;
};

struct NetworkGraph {
  std::map<NodeId, NodeRecord> nodes;
  std::set<Edge> edges;
  GraphMeta meta;

  bool operator==(const NetworkGraph&) const = default;

  bool has_node(NodeId n) const { return nodes.count(n) != 0; }
  bool has_edge(NodeId x, NodeId y) const { return edges.count(Edge(x, y)) != 0; }
  const NodeRecord& at(NodeId n) const;
  NodeRecord& at(NodeId n);
  NodeId fresh_id();  // consumes the watermark
};

struct Violation {
  std::string code;
  std::string detail;
};

// Empty result iff every NetworkGraph invariant holds. Violations are data,
// not errors.
std::vector<Violation> validate_graph(const NetworkGraph& g);

// Ids sharing an edge with n. Throws unknown-node.
std::set<NodeId> neighbors(const NetworkGraph& g, NodeId n);

enum class DeltaCause { attacker_action, defender_action, scheduled_variation };
std::string to_string(DeltaCause c);
DeltaCause delta_cause_from_string(const std::string& s);

// Field-level attribute change; old/new are the JSON encodings of the field so
// the change is generic and syntactically invertible.
struct AttrChange {
  NodeId node;
  std::string field;
  Json old_value;
  Json new_value;
  bool operator==(const AttrChange&) const = default;
};

struct GraphDelta {
  std::vector<NodeRecord> added_nodes;
  std::vector<NodeRecord> removed_nodes;  // full records so the delta inverts
  std::vector<Edge> added_edges;
  std::vector<Edge> removed_edges;
  std::vector<AttrChange> attr_changes;
  DeltaCause cause = DeltaCause::scheduled_variation;
  int time_shift = 0;  // snapshot_time adjustment; +1 for scheduled variations
  std::vector<NodeId> targets;  // nodes a scheduled variation selected

  bool operator==(const GraphDelta&) const = default;
  bool empty() const {
    return added_nodes.empty() && removed_nodes.empty() && added_edges.empty() &&
           removed_edges.empty() && attr_changes.empty();
  }
};

// Pure: returns the new graph, input untouched. Throws conflicting-delta when
// the delta does not fit the graph (stale old values, dangling references,
// node both removed and changed, removals leaving dangling edges, non-fresh
// added ids).
NetworkGraph apply_delta(const NetworkGraph& g, const GraphDelta& d);

GraphDelta invert(const GraphDelta& d);

// Nodes the delta touches: the recorded variation targets when present,
// otherwise attribute-changed plus removed ids (a replacement counts once
// through its removed id).
std::set<NodeId> touched_nodes(const GraphDelta& d);

// Net difference between two graphs as an applicable, invertible delta.
// Node identity fields (region/type/lan) must not differ for a shared id.
GraphDelta diff_graphs(const NetworkGraph& from, const NetworkGraph& to, DeltaCause cause);

// Removal delta for one node including all incident edges.
GraphDelta delta_removing(const NetworkGraph& g, NodeId n, DeltaCause cause);

// Builds an AttrChange for one field of a node's current attrs.
AttrChange make_attr_change(const NetworkGraph& g, NodeId n, const std::string& field,
                            const Json& new_value);

// JSON codecs (canonical writing lives in persistence).
void to_json(Json& j, const NodeId& v);
void from_json(const Json& j, NodeId& v);
void to_json(Json& j, const ServiceEntry& v);
void from_json(const Json& j, ServiceEntry& v);
void to_json(Json& j, const SoftwareEntry& v);
void from_json(const Json& j, SoftwareEntry& v);
void to_json(Json& j, const AccountEntry& v);
void from_json(const Json& j, AccountEntry& v);
void to_json(Json& j, const NodeVuln& v);
void from_json(const Json& j, NodeVuln& v);
void to_json(Json& j, const NodeAttrs& v);
void from_json(const Json& j, NodeAttrs& v);
void to_json(Json& j, const NodeRecord& v);
void from_json(const Json& j, NodeRecord& v);
void to_json(Json& j, const Edge& v);
void from_json(const Json& j, Edge& v);
void to_json(Json& j, const GraphMeta& v);
void from_json(const Json& j, GraphMeta& v);
void to_json(Json& j, const NetworkGraph& v);
void from_json(const Json& j, NetworkGraph& v);
void to_json(Json& j, const AttrChange& v);
void from_json(const Json& j, AttrChange& v);
void to_json(Json& j, const GraphDelta& v);
void from_json(const Json& j, GraphDelta& v);

}  // namespace autopt
