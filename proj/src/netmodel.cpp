#include "autopt/netmodel.hpp"

#include <algorithm>
#include <queue>

namespace autopt {

std::string to_string(Region r) {
  switch (r) {
    case Region::internet: return "internet";
    case Region::dmz: return "dmz";
    case Region::general: return "general";
    case Region::sensitive: return "sensitive";
    case Region::none: return "none";
  }
  return "none";
}

std::string to_string(OsKind o) {
  switch (o) {
    case OsKind::windows: return "windows";
    case OsKind::linux: return "linux";
    case OsKind::other: return "other";
  }
  return "other";
}

std::string to_string(Topology t) {
  switch (t) {
    case Topology::pltn: return "pltn";
    case Topology::tree: return "tree";
    case Topology::fattree: return "fattree";
  }
  return "pltn";
}

std::string to_string(AttrModel m) {
  switch (m) {
    case AttrModel::none: return "none";
    case AttrModel::hypothetical: return "hypothetical";
    case AttrModel::authentic: return "authentic";
  }
  return "none";
}

std::string to_string(AccountLevel l) {
  switch (l) {
    case AccountLevel::standard: return "standard";
    case AccountLevel::administrative: return "administrative";
    case AccountLevel::domain_admin: return "domain_admin";
  }
  return "standard";
}

std::string to_string(DeltaCause c) {
  switch (c) {
    case DeltaCause::attacker_action: return "attacker_action";
    case DeltaCause::defender_action: return "defender_action";
    case DeltaCause::scheduled_variation: return "scheduled_variation";
  }
  return "scheduled_variation";
}

namespace {

[[noreturn]] void bad_enum(const std::string& what, const std::string& s) {
  throw SimError("parse-error", "unknown " + what + " '" + s + "'");
}

}  // namespace

Region region_from_string(const std::string& s) {
  if (s == "internet") return Region::internet;
  if (s == "dmz") return Region::dmz;
  if (s == "general") return Region::general;
  if (s == "sensitive") return Region::sensitive;
  if (s == "none") return Region::none;
  bad_enum("region", s);
}

OsKind os_from_string(const std::string& s) {
  if (s == "windows") return OsKind::windows;
  if (s == "linux") return OsKind::linux;
  if (s == "other") return OsKind::other;
  bad_enum("system", s);
}

Topology topology_from_string(const std::string& s) {
  if (s == "pltn") return Topology::pltn;
  if (s == "tree") return Topology::tree;
  if (s == "fattree") return Topology::fattree;
  bad_enum("topology", s);
}

AttrModel attr_model_from_string(const std::string& s) {
  if (s == "none") return AttrModel::none;
  if (s == "hypothetical") return AttrModel::hypothetical;
  if (s == "authentic") return AttrModel::authentic;
  bad_enum("attr_model", s);
}

AccountLevel account_level_from_string(const std::string& s) {
  if (s == "standard") return AccountLevel::standard;
  if (s == "administrative") return AccountLevel::administrative;
  if (s == "domain_admin") return AccountLevel::domain_admin;
  bad_enum("account level", s);
}

DeltaCause delta_cause_from_string(const std::string& s) {
  if (s == "attacker_action") return DeltaCause::attacker_action;
  if (s == "defender_action") return DeltaCause::defender_action;
  if (s == "scheduled_variation") return DeltaCause::scheduled_variation;
  bad_enum("delta cause", s);
}

const NodeRecord& NetworkGraph::at(NodeId n) const {
  auto it = nodes.find(n);
  if (it == nodes.end()) throw SimError("unknown-node", "node " + std::to_string(n.value));
  return it->second;
}

NodeRecord& NetworkGraph::at(NodeId n) {
  auto it = nodes.find(n);
  if (it == nodes.end()) throw SimError("unknown-node", "node " + std::to_string(n.value));
  return it->second;
}

NodeId NetworkGraph::fresh_id() {
  if (!nodes.empty()) meta.next_node_id = std::max(meta.next_node_id, nodes.rbegin()->first.value + 1);
  return NodeId{meta.next_node_id++};
}

std::set<NodeId> neighbors(const NetworkGraph& g, NodeId n) {
  if (!g.has_node(n)) throw SimError("unknown-node", "node " + std::to_string(n.value));
  std::set<NodeId> out;
  for (const auto& e : g.edges)
    if (e.touches(n)) out.insert(e.other(n));
  return out;
}

namespace {

bool valid_dotted_quad(const std::string& ip) {
  int part = 0, val = 0, digits = 0;
  for (char c : ip) {
    if (c == '.') {
      if (digits == 0 || val > 255) return false;
      ++part;
      val = 0;
      digits = 0;
    } else if (c >= '0' && c <= '9') {
      val = val * 10 + (c - '0');
      if (++digits > 3) return false;
    } else {
      return false;
    }
  }
  return part == 3 && digits > 0 && val <= 255;
}

void check_lan_groups(const NetworkGraph& g, std::vector<Violation>& out) {
  std::map<std::string, std::vector<NodeId>> lans;
  for (const auto& [id, rec] : g.nodes) lans[rec.lan_id].push_back(id);
  std::map<NodeId, std::set<NodeId>> adj;
  for (const auto& e : g.edges) {
    adj[e.a].insert(e.b);
    adj[e.b].insert(e.a);
  }
  for (const auto& [lan, members] : lans) {
    if (members.size() < 2) continue;
    // Members plus any switch adjacent to a member form the LAN fabric; all
    // members must be mutually reachable inside it.
    std::set<NodeId> fabric(members.begin(), members.end());
    for (NodeId m : members)
      for (NodeId nb : adj[m])
        if (g.at(nb).is_switch()) fabric.insert(nb);
    std::set<NodeId> seen;
    std::queue<NodeId> q;
    q.push(members.front());
    seen.insert(members.front());
    while (!q.empty()) {
      NodeId cur = q.front();
      q.pop();
      for (NodeId nb : adj[cur])
        if (fabric.count(nb) && !seen.count(nb)) {
          seen.insert(nb);
          q.push(nb);
        }
    }
    for (NodeId m : members)
      if (!seen.count(m)) {
        out.push_back({"lan-disconnected", "lan '" + lan + "' member " + std::to_string(m.value) +
                                               " unreachable from its LAN"});
        break;
      }
  }
}

}  // namespace

std::vector<Violation> validate_graph(const NetworkGraph& g) {
  std::vector<Violation> out;
  auto add = [&](const std::string& code, const std::string& detail) {
    out.push_back({code, detail});
  };

  for (const auto& e : g.edges) {
    if (e.a == e.b) add("self-loop", "edge on node " + std::to_string(e.a.value));
    for (NodeId n : {e.a, e.b})
      if (!g.has_node(n)) add("dangling-edge", "edge endpoint " + std::to_string(n.value) + " missing");
  }

  int n_mono = 0, n_hyp = 0, n_auth = 0;
  for (const auto& [id, rec] : g.nodes) {
    if (rec.id != id) add("id-mismatch", "node " + std::to_string(id.value));
    if (rec.lan_id.empty()) add("empty-lan", "node " + std::to_string(id.value));
    if (rec.node_type.empty()) add("empty-type", "node " + std::to_string(id.value));
    if (std::holds_alternative<std::monostate>(rec.attrs)) ++n_mono;
    if (rec.hypothetical()) ++n_hyp;
    if (rec.authentic()) ++n_auth;
  }
  if ((n_mono > 0) + (n_hyp > 0) + (n_auth > 0) > 1)
    add("mixed-attr-model", "graph mixes attribute models");
  AttrModel actual = n_hyp ? AttrModel::hypothetical : (n_auth ? AttrModel::authentic : AttrModel::none);
  if (!g.nodes.empty() && actual != g.meta.attr_model)
    add("attr-model-mismatch",
        "meta says " + to_string(g.meta.attr_model) + ", nodes are " + to_string(actual));

  if (n_hyp > 0) {
    std::size_t m = 0;
    bool first = true;
    for (const auto& [id, rec] : g.nodes) {
      const auto* h = rec.hypothetical();
      if (!h) continue;
      if (first) {
        m = h->defense.size();
        first = false;
      }
      if (h->attack.size() != h->defense.size() || h->defense.size() != m)
        add("hypo-shape", "node " + std::to_string(id.value) + " vector length differs");
      if (h->detection < 0) add("hypo-shape", "node " + std::to_string(id.value) + " negative detection");
      for (int v : h->attack)
        if (v < 0) add("hypo-shape", "node " + std::to_string(id.value) + " negative attack value");
      for (int v : h->defense)
        if (v < 0) add("hypo-shape", "node " + std::to_string(id.value) + " negative defense value");
    }
  }

  if (n_auth > 0) {
    std::map<std::string, NodeId> ips;
    for (const auto& [id, rec] : g.nodes) {
      const auto* a = rec.authentic();
      if (!a) continue;
      if (!valid_dotted_quad(a->ip)) add("bad-ip", "node " + std::to_string(id.value) + " ip '" + a->ip + "'");
      auto [it, fresh] = ips.emplace(a->ip, id);
      if (!fresh)
        add("duplicate-ip", "ip " + a->ip + " on nodes " + std::to_string(it->second.value) + " and " +
                                std::to_string(id.value));
      std::set<int> ports;
      for (const auto& s : a->services) {
        if (s.port < 1 || s.port > 65535) add("bad-port", "node " + std::to_string(id.value));
        if (!ports.insert(s.port).second)
          add("duplicate-port", "node " + std::to_string(id.value) + " port " + std::to_string(s.port));
      }
      std::set<std::pair<std::string, std::string>> sw;
      for (const auto& s : a->software)
        if (!sw.insert({s.name, s.version}).second)
          add("duplicate-software", "node " + std::to_string(id.value) + " " + s.name);
      std::set<std::string> users;
      for (const auto& acc : a->accounts)
        if (!users.insert(acc.user).second)
          add("duplicate-user", "node " + std::to_string(id.value) + " user " + acc.user);
      std::set<std::string> cves;
      for (const auto& v : a->vulns) {
        if (!cves.insert(v.cve_id).second)
          add("duplicate-cve", "node " + std::to_string(id.value) + " " + v.cve_id);
        if (v.p_success < 0.01 || v.p_success > 0.99)
          add("p-range", "node " + std::to_string(id.value) + " " + v.cve_id + " p=" +
                             std::to_string(v.p_success));
      }
      if (a->value < 0) add("negative-value", "node " + std::to_string(id.value));
      if (a->sensitive && a->value <= 0)
        add("sensitive-value", "node " + std::to_string(id.value) + " sensitive without value");
    }
  }

  if (g.meta.topology == Topology::pltn && !g.nodes.empty()) {
    bool has_internet = false;
    for (const auto& [id, rec] : g.nodes) {
      if (rec.region == Region::internet) has_internet = true;
      if (rec.region == Region::none)
        add("region-none-in-pltn", "node " + std::to_string(id.value));
    }
    if (!has_internet) add("no-internet", "pltn graph lacks an internet node");
    for (const auto& e : g.edges) {
      if (!g.has_node(e.a) || !g.has_node(e.b)) continue;
      Region ra = g.at(e.a).region, rb = g.at(e.b).region;
      auto breach = [&](Region x, Region y) {
        return (x == Region::sensitive && (y == Region::dmz || y == Region::internet)) ||
               (y == Region::sensitive && (x == Region::dmz || x == Region::internet));
      };
      if (breach(ra, rb))
        add("region-breach", "edge " + std::to_string(e.a.value) + "-" + std::to_string(e.b.value));
      if ((ra == Region::internet && rb != Region::dmz && rb != Region::internet) ||
          (rb == Region::internet && ra != Region::dmz && ra != Region::internet))
        add("internet-edge", "edge " + std::to_string(e.a.value) + "-" + std::to_string(e.b.value));
    }
  }

  check_lan_groups(g, out);
  return out;
}

namespace {

Json attrs_to_json_obj(const NodeAttrs& attrs) {
  Json j;
  to_json(j, attrs);
  return j;
}

}  // namespace

AttrChange make_attr_change(const NetworkGraph& g, NodeId n, const std::string& field,
                            const Json& new_value) {
  Json cur = attrs_to_json_obj(g.at(n).attrs);
  if (!cur.is_object() || !cur.contains(field))
    throw SimError("conflicting-delta",
                   "node " + std::to_string(n.value) + " has no attr field '" + field + "'");
  return AttrChange{n, field, cur[field], new_value};
}

NetworkGraph apply_delta(const NetworkGraph& g, const GraphDelta& d) {
  NetworkGraph out = g;

  std::set<NodeId> removed;
  for (const auto& rec : d.removed_nodes)
    if (!removed.insert(rec.id).second)
      throw SimError("conflicting-delta", "node " + std::to_string(rec.id.value) + " removed twice");

  for (const auto& ch : d.attr_changes) {
    if (removed.count(ch.node))
      throw SimError("conflicting-delta",
                     "node " + std::to_string(ch.node.value) + " both removed and changed");
    if (!out.has_node(ch.node))
      throw SimError("conflicting-delta", "attr change on missing node " + std::to_string(ch.node.value));
    NodeRecord& rec = out.at(ch.node);
    Json cur = attrs_to_json_obj(rec.attrs);
    if (!cur.is_object() || !cur.contains(ch.field))
      throw SimError("conflicting-delta", "missing attr field '" + ch.field + "'");
    if (cur[ch.field] != ch.old_value)
      throw SimError("conflicting-delta",
                     "stale old value for field '" + ch.field + "' on node " +
                         std::to_string(ch.node.value));
    cur[ch.field] = ch.new_value;
    from_json(cur, rec.attrs);
  }

  for (const auto& e : d.removed_edges) {
    auto it = out.edges.find(e);
    if (it == out.edges.end() || !(*it == e))
      throw SimError("conflicting-delta",
                     "removed edge " + std::to_string(e.a.value) + "-" + std::to_string(e.b.value) +
                         " not present");
    out.edges.erase(it);
  }

  for (const auto& rec : d.removed_nodes) {
    auto it = out.nodes.find(rec.id);
    if (it == out.nodes.end())
      throw SimError("conflicting-delta", "removed node " + std::to_string(rec.id.value) + " missing");
    if (!(it->second == rec))
      throw SimError("conflicting-delta",
                     "removed node " + std::to_string(rec.id.value) + " does not match the delta record");
    for (const auto& e : out.edges)
      if (e.touches(rec.id))
        throw SimError("conflicting-delta",
                       "removing node " + std::to_string(rec.id.value) +
                           " would leave a dangling edge; list its edges in removed_edges");
    out.nodes.erase(it);
  }

  for (const auto& rec : d.added_nodes) {
    if (out.has_node(rec.id) || removed.count(rec.id))
      throw SimError("conflicting-delta", "added id " + std::to_string(rec.id.value) + " not fresh");
    out.nodes.emplace(rec.id, rec);
    out.meta.next_node_id = std::max(out.meta.next_node_id, rec.id.value + 1);
  }

  for (const auto& e : d.added_edges) {
    if (e.a == e.b) throw SimError("conflicting-delta", "self-loop edge");
    if (!out.has_node(e.a) || !out.has_node(e.b))
      throw SimError("conflicting-delta", "added edge references a missing node");
    if (!out.edges.insert(e).second)
      throw SimError("conflicting-delta",
                     "edge " + std::to_string(e.a.value) + "-" + std::to_string(e.b.value) +
                         " already present");
  }

  out.meta.snapshot_time += d.time_shift;
  return out;
}

GraphDelta invert(const GraphDelta& d) {
  GraphDelta inv;
  inv.added_nodes = d.removed_nodes;
  inv.removed_nodes = d.added_nodes;
  inv.added_edges = d.removed_edges;
  inv.removed_edges = d.added_edges;
  inv.attr_changes = d.attr_changes;
  for (auto& ch : inv.attr_changes) std::swap(ch.old_value, ch.new_value);
  inv.cause = d.cause;
  inv.time_shift = -d.time_shift;
  inv.targets = d.targets;
  return inv;
}

std::set<NodeId> touched_nodes(const GraphDelta& d) {
  if (!d.targets.empty()) return {d.targets.begin(), d.targets.end()};
  std::set<NodeId> out;
  for (const auto& ch : d.attr_changes) out.insert(ch.node);
  for (const auto& rec : d.removed_nodes) out.insert(rec.id);
  return out;
}

GraphDelta diff_graphs(const NetworkGraph& from, const NetworkGraph& to, DeltaCause cause) {
  GraphDelta d;
  d.cause = cause;
  d.time_shift = static_cast<int>(to.meta.snapshot_time - from.meta.snapshot_time);

  for (const auto& [id, rec] : from.nodes)
    if (!to.has_node(id)) d.removed_nodes.push_back(rec);
  for (const auto& [id, rec] : to.nodes) {
    if (!from.has_node(id)) {
      d.added_nodes.push_back(rec);
      continue;
    }
    const NodeRecord& old = from.at(id);
    if (old.region != rec.region || old.node_type != rec.node_type || old.lan_id != rec.lan_id)
      throw SimError("conflicting-delta",
                     "node " + std::to_string(id.value) + " changed identity fields");
    if (old.attrs == rec.attrs) continue;
    Json before = attrs_to_json_obj(old.attrs);
    Json after = attrs_to_json_obj(rec.attrs);
    if (!before.is_object() || !after.is_object())
      throw SimError("conflicting-delta",
                     "node " + std::to_string(id.value) + " switched attribute model");
    for (auto it = after.begin(); it != after.end(); ++it)
      if (before.at(it.key()) != it.value())
        d.attr_changes.push_back(AttrChange{id, it.key(), before.at(it.key()), it.value()});
  }

  for (const auto& e : from.edges) {
    auto it = to.edges.find(e);
    if (it == to.edges.end() || !(*it == e)) d.removed_edges.push_back(e);
  }
  for (const auto& e : to.edges) {
    auto it = from.edges.find(e);
    if (it == from.edges.end() || !(*it == e)) d.added_edges.push_back(e);
  }
  return d;
}

GraphDelta delta_removing(const NetworkGraph& g, NodeId n, DeltaCause cause) {
  GraphDelta d;
  d.cause = cause;
  d.removed_nodes.push_back(g.at(n));
  for (const auto& e : g.edges)
    if (e.touches(n)) d.removed_edges.push_back(e);
  return d;
}

// ---------------------------------------------------------------------------
// JSON codecs

void to_json(Json& j, const NodeId& v) { j = v.value; }
void from_json(const Json& j, NodeId& v) { v.value = j.get<std::uint64_t>(); }

void to_json(Json& j, const ServiceEntry& v) {
  j = Json{{"port", v.port}, {"name", v.name}, {"version", v.version}};
}
void from_json(const Json& j, ServiceEntry& v) {
  v.port = j.at("port").get<int>();
  v.name = j.at("name").get<std::string>();
  v.version = j.value("version", std::string());
}

void to_json(Json& j, const SoftwareEntry& v) {
  j = Json{{"name", v.name}, {"version", v.version}};
}
void from_json(const Json& j, SoftwareEntry& v) {
  v.name = j.at("name").get<std::string>();
  v.version = j.value("version", std::string());
}

void to_json(Json& j, const AccountEntry& v) {
  j = Json{{"user", v.user}, {"password", v.password}, {"level", to_string(v.level)}, {"weak", v.weak}};
}
void from_json(const Json& j, AccountEntry& v) {
  v.user = j.at("user").get<std::string>();
  v.password = j.at("password").get<std::string>();
  v.level = account_level_from_string(j.at("level").get<std::string>());
  v.weak = j.value("weak", false);
}

void to_json(Json& j, const NodeVuln& v) {
  j = Json{{"cve_id", v.cve_id}, {"p_success", v.p_success}};
}
void from_json(const Json& j, NodeVuln& v) {
  v.cve_id = j.at("cve_id").get<std::string>();
  v.p_success = j.at("p_success").get<double>();
}

void to_json(Json& j, const NodeAttrs& v) {
  if (std::holds_alternative<std::monostate>(v)) {
    j = nullptr;
  } else if (const auto* h = std::get_if<HypotheticalAttrs>(&v)) {
    j = Json{{"model", "hypothetical"},
             {"attack", h->attack},
             {"defense", h->defense},
             {"detection", h->detection}};
  } else {
    const auto& a = std::get<AuthenticAttrs>(v);
    j = Json{{"model", "authentic"}, {"ip", a.ip},         {"system", to_string(a.system)},
             {"services", a.services}, {"software", a.software}, {"accounts", a.accounts},
             {"vulns", a.vulns},       {"value", a.value},       {"sensitive", a.sensitive}};
  }
}

void from_json(const Json& j, NodeAttrs& v) {
  if (j.is_null()) {
    v = std::monostate{};
    return;
  }
  const std::string model = j.at("model").get<std::string>();
  if (model == "hypothetical") {
    HypotheticalAttrs h;
    h.attack = j.at("attack").get<std::vector<int>>();
    h.defense = j.at("defense").get<std::vector<int>>();
    h.detection = j.at("detection").get<int>();
    v = std::move(h);
  } else if (model == "authentic") {
    AuthenticAttrs a;
    a.ip = j.at("ip").get<std::string>();
    a.system = os_from_string(j.at("system").get<std::string>());
    a.services = j.at("services").get<std::vector<ServiceEntry>>();
    a.software = j.at("software").get<std::vector<SoftwareEntry>>();
    a.accounts = j.at("accounts").get<std::vector<AccountEntry>>();
    a.vulns = j.at("vulns").get<std::vector<NodeVuln>>();
    a.value = j.at("value").get<double>();
    a.sensitive = j.at("sensitive").get<bool>();
    v = std::move(a);
  } else {
    bad_enum("attr model", model);
  }
}

void to_json(Json& j, const NodeRecord& v) {
  j = Json{{"id", v.id},
           {"region", to_string(v.region)},
           {"type", v.node_type},
           {"lan_id", v.lan_id},
           {"attrs", v.attrs}};
}
void from_json(const Json& j, NodeRecord& v) {
  v.id = j.at("id").get<NodeId>();
  v.region = region_from_string(j.at("region").get<std::string>());
  v.node_type = j.at("type").get<std::string>();
  v.lan_id = j.at("lan_id").get<std::string>();
  from_json(j.at("attrs"), v.attrs);
}

void to_json(Json& j, const Edge& v) {
  j = Json{{"a", v.a}, {"b", v.b}};
  if (!v.attrs.empty()) j["attrs"] = v.attrs;
}
void from_json(const Json& j, Edge& v) {
  NodeId a = j.at("a").get<NodeId>();
  NodeId b = j.at("b").get<NodeId>();
  std::map<std::string, std::string> attrs;
  if (j.contains("attrs")) attrs = j.at("attrs").get<std::map<std::string, std::string>>();
  v = Edge(a, b, std::move(attrs));
}

void to_json(Json& j, const GraphMeta& v) {
  j = Json{{"topology", to_string(v.topology)},
           {"attr_model", to_string(v.attr_model)},
           {"scale", v.scale},
           {"seed", v.seed},
           {"snapshot_time", v.snapshot_time},
           {"lineage_id", v.lineage_id},
           {"next_node_id", v.next_node_id}};
}
void from_json(const Json& j, GraphMeta& v) {
  v.topology = topology_from_string(j.at("topology").get<std::string>());
  v.attr_model = attr_model_from_string(j.at("attr_model").get<std::string>());
  v.scale = j.at("scale").get<int>();
  v.seed = j.at("seed").get<std::uint64_t>();
  v.snapshot_time = j.at("snapshot_time").get<std::int64_t>();
  v.lineage_id = j.at("lineage_id").get<std::string>();
  v.next_node_id = j.value("next_node_id", std::uint64_t{0});
}

void to_json(Json& j, const NetworkGraph& v) {
  Json nodes = Json::array();
  for (const auto& [id, rec] : v.nodes) nodes.push_back(rec);
  Json edges = Json::array();
  for (const auto& e : v.edges) edges.push_back(e);
  j = Json{{"meta", v.meta}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}
void from_json(const Json& j, NetworkGraph& v) {
  v = NetworkGraph{};
  v.meta = j.at("meta").get<GraphMeta>();
  for (const auto& jn : j.at("nodes")) {
    NodeRecord rec = jn.get<NodeRecord>();
    NodeId id = rec.id;
    if (!v.nodes.emplace(id, std::move(rec)).second)
      throw SimError("parse-error", "duplicate node id " + std::to_string(id.value));
  }
  for (const auto& je : j.at("edges")) {
    Edge e = je.get<Edge>();
    if (!v.edges.insert(e).second)
      throw SimError("parse-error",
                     "duplicate edge " + std::to_string(e.a.value) + "-" + std::to_string(e.b.value));
  }
}

void to_json(Json& j, const AttrChange& v) {
  j = Json{{"node", v.node}, {"field", v.field}, {"old", v.old_value}, {"new", v.new_value}};
}
void from_json(const Json& j, AttrChange& v) {
  v.node = j.at("node").get<NodeId>();
  v.field = j.at("field").get<std::string>();
  v.old_value = j.at("old");
  v.new_value = j.at("new");
}

void to_json(Json& j, const GraphDelta& v) {
  j = Json{{"added_nodes", v.added_nodes},   {"removed_nodes", v.removed_nodes},
           {"added_edges", v.added_edges},   {"removed_edges", v.removed_edges},
           {"attr_changes", v.attr_changes}, {"cause", to_string(v.cause)},
           {"time_shift", v.time_shift},     {"targets", v.targets}};
}
void from_json(const Json& j, GraphDelta& v) {
  v.added_nodes = j.at("added_nodes").get<std::vector<NodeRecord>>();
  v.removed_nodes = j.at("removed_nodes").get<std::vector<NodeRecord>>();
  v.added_edges = j.at("added_edges").get<std::vector<Edge>>();
  v.removed_edges = j.at("removed_edges").get<std::vector<Edge>>();
  v.attr_changes = j.at("attr_changes").get<std::vector<AttrChange>>();
  v.cause = delta_cause_from_string(j.at("cause").get<std::string>());
  v.time_shift = j.value("time_shift", 0);
  if (j.contains("targets")) v.targets = j.at("targets").get<std::vector<NodeId>>();
}

}  // namespace autopt
