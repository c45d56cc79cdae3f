#include "autopt/generator.hpp"

#include <algorithm>
#include <cmath>

#include "autopt/rng.hpp"

namespace autopt {

namespace {

// ---------------------------------------------------------------------------
// Host/switch templates. Nodes in one LAN inherit the LAN's template instance
// with probability lan_similarity; versions are picked per LAN so inherited
// members really look alike.

struct TemplateService {
  int port;
  const char* name;
  std::vector<const char*> versions;
};

struct TemplateSoftware {
  const char* name;
  std::vector<const char*> versions;
};

struct HostTemplate {
  const char* name;
  OsKind system;
  bool domain_accounts;
  std::vector<TemplateService> services;
  std::vector<TemplateSoftware> software;
};

const std::vector<HostTemplate>& host_templates() {
  static const std::vector<HostTemplate> pool = {
      {"windows_office",
       OsKind::windows,
       false,
       {{445, "smb", {"1.0", "2.1", "3.0"}}, {3389, "rdp", {"6.1", "6.3", "10.0"}}},
       {{"Office", {"2013", "2016", "2019"}}, {"Chrome", {"86.0", "96.0"}}}},
      {"windows_dc",
       OsKind::windows,
       true,
       {{445, "smb", {"3.0", "3.1.1"}}, {389, "ldap", {"3.0"}}, {135, "netlogon", {"8.1", "10.0"}}},
       {{"Exchange", {"2013", "2016", "2019"}}}},
      {"linux_web",
       OsKind::linux,
       false,
       {{80, "nginx", {"1.14.0", "1.18.0"}},
        {443, "openssl", {"1.0.1f", "1.0.2k", "1.1.1"}},
        {3306, "Cacti", {"1.2.20", "1.2.22", "1.2.24"}}},
       {{"Struts2", {"2.0.0", "2.3.20", "2.5.22"}}, {"PHP", {"5.4.0", "7.2.0", "7.4.3"}}}},
      {"linux_db",
       OsKind::linux,
       false,
       {{5432, "PostgreSQL", {"9.3", "9.6", "11.1"}},
        {6699, "samba", {"3.5.0", "4.1.0", "4.7.0"}},
        {22, "openssh", {"6.6", "7.2", "7.9"}}},
       {{"redis", {"4.0.8", "6.0.10"}}}},
      {"linux_file",
       OsKind::linux,
       false,
       {{21, "vsftpd", {"2.3.4", "3.0.2"}},
        {139, "samba", {"3.0.20", "4.5.0", "4.8.0"}},
        {22, "openssh", {"7.1", "7.6"}}},
       {{"log4j", {"2.10.0", "2.14.0", "2.17.0"}}, {"bash", {"4.2", "4.4"}}}},
      {"windows_legacy",
       OsKind::windows,
       false,
       {{445, "smb", {"1.0"}}, {80, "iis", {"6.0", "7.5"}}},
       {{"7zip", {"9.20", "18.05"}}}},
      {"linux_jump",
       OsKind::linux,
       false,
       {{22, "openssh", {"7.2", "7.7", "8.1"}}, {8080, "tomcat", {"7.0.50", "8.5.20", "9.0.30"}}},
       {{"sudo", {"1.8.25", "1.9.6"}}}},
  };
  return pool;
}

const HostTemplate& switch_template() {
  static const HostTemplate tpl = {
      "switch_mgmt",
      OsKind::other,
      false,
      {{23, "telnet", {"1.0"}}, {161, "snmp", {"1.0", "2.0", "3.0"}}, {22, "dropbear", {"2016.73", "2017.75"}}},
      {}};
  return tpl;
}

std::vector<std::size_t> region_template_pool(Region r) {
  switch (r) {
    case Region::dmz: return {2, 5, 6};               // linux_web, windows_legacy, linux_jump
    case Region::general: return {0, 4, 6, 2};        // office, file, jump, web
    case Region::sensitive: return {3, 1};            // db, dc
    default: return {0, 1, 2, 3, 4, 5, 6};
  }
}

const std::vector<std::string>& user_pool() {
  static const std::vector<std::string> users = {
      "alice", "bob",  "carol", "dave",  "erin",  "frank", "grace",  "heidi",
      "ivan",  "judy", "oscar", "peggy", "trent", "wendy", "victor", "mallory"};
  return users;
}

std::string hex64(std::uint64_t v) {
  static const char* hex = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = hex[v & 0xf];
    v >>= 4;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Skeleton helpers

NodeId add_node(NetworkGraph& g, Region region, std::string type, std::string lan) {
  NodeId id = g.fresh_id();
  NodeRecord rec;
  rec.id = id;
  rec.region = region;
  rec.node_type = std::move(type);
  rec.lan_id = std::move(lan);
  g.nodes.emplace(id, std::move(rec));
  return id;
}

void add_edge(NetworkGraph& g, NodeId a, NodeId b) { g.edges.insert(Edge(a, b)); }

int region_code(Region r) {
  switch (r) {
    case Region::dmz: return 1;
    case Region::general: return 2;
    case Region::sensitive: return 3;
    case Region::internet: return 0;
    case Region::none: return 4;
  }
  return 4;
}

}  // namespace

bool edge_allowed(const NetworkGraph& g, NodeId a, NodeId b) {
  if (a == b) return false;
  if (g.meta.topology != Topology::pltn) return true;
  Region ra = g.at(a).region, rb = g.at(b).region;
  auto bad = [](Region x, Region y) {
    if (x == Region::sensitive && (y == Region::dmz || y == Region::internet)) return true;
    if (x == Region::internet && y != Region::dmz && y != Region::internet) return true;
    return false;
  };
  return !bad(ra, rb) && !bad(rb, ra);
}

NetworkGraph build_pltn(const PltnParams& p) {
  if (p.total_nodes < 6)
    throw SimError("too-few-nodes",
                   "PLTN needs at least 6 hosts, got " + std::to_string(p.total_nodes));
  const double fsum = p.dmz_fraction + p.general_fraction + p.sensitive_fraction;
  if (p.dmz_fraction < 0 || p.general_fraction < 0 || p.sensitive_fraction < 0 ||
      std::abs(fsum - 1.0) > 1e-9)
    throw SimError("invalid-params", "region fractions must be non-negative and sum to 1");
  if (p.sensitive_subnets < 1 || p.sensitive_subnets > 3)
    throw SimError("invalid-params", "sensitive_subnets must be in [1, 3]");
  if (p.general_subnets < 0) throw SimError("invalid-params", "general_subnets must be >= 1");

  const int total = p.total_nodes;
  int dmz_hosts = std::max<int>(1, static_cast<int>(std::llround(p.dmz_fraction * total)));
  int sens_hosts = std::max<int>(1, static_cast<int>(std::llround(p.sensitive_fraction * total)));
  int gen_hosts = total - dmz_hosts - sens_hosts;
  if (gen_hosts < 1)
    throw SimError("too-few-nodes", "general region would be empty at this size");

  int gen_subnets = p.general_subnets > 0 ? p.general_subnets : std::max(2, total / 20);
  gen_subnets = std::min(gen_subnets, gen_hosts);
  int sens_subnets = std::min(p.sensitive_subnets, sens_hosts);

  NetworkGraph g;
  g.meta.topology = Topology::pltn;
  g.meta.attr_model = AttrModel::none;
  g.meta.scale = total;
  g.meta.seed = p.seed;

  Rng rng(p.seed);

  const NodeId internet = add_node(g, Region::internet, "internet", "internet");

  auto spread = [](int count, int parts) {
    std::vector<int> out(static_cast<std::size_t>(parts), count / parts);
    for (int i = 0; i < count % parts; ++i) out[static_cast<std::size_t>(i)]++;
    return out;
  };

  struct Lan {
    std::string id;
    Region region;
    NodeId sw;
    std::vector<NodeId> hosts;
  };
  std::vector<Lan> lans;

  auto build_lan = [&](Region region, const std::string& lan_id, int hosts) {
    Lan lan{lan_id, region, add_node(g, region, "switch", lan_id), {}};
    for (int i = 0; i < hosts; ++i) {
      NodeId h = add_node(g, region, "server", lan_id);
      add_edge(g, h, lan.sw);
      lan.hosts.push_back(h);
    }
    lans.push_back(lan);
    return lans.size() - 1;
  };

  const std::size_t dmz_lan = build_lan(Region::dmz, "dmz-0", dmz_hosts);
  // DMZ hosts are interconnected, not just star-wired.
  for (std::size_t i = 0; i < lans[dmz_lan].hosts.size(); ++i)
    for (std::size_t j = i + 1; j < lans[dmz_lan].hosts.size(); ++j)
      add_edge(g, lans[dmz_lan].hosts[i], lans[dmz_lan].hosts[j]);
  add_edge(g, internet, lans[dmz_lan].sw);

  std::vector<std::size_t> gen_lans;
  const auto gen_split = spread(gen_hosts, gen_subnets);
  for (int i = 0; i < gen_subnets; ++i)
    gen_lans.push_back(build_lan(Region::general, "gen-" + std::to_string(i),
                                 gen_split[static_cast<std::size_t>(i)]));
  std::vector<std::size_t> sens_lans;
  const auto sens_split = spread(sens_hosts, sens_subnets);
  for (int i = 0; i < sens_subnets; ++i)
    sens_lans.push_back(build_lan(Region::sensitive, "sens-" + std::to_string(i),
                                  sens_split[static_cast<std::size_t>(i)]));

  // General bridges DMZ and sensitive: every general switch uplinks to the
  // DMZ switch, general switches form a ring, sensitive switches hang off
  // general only.
  for (std::size_t gi : gen_lans) add_edge(g, lans[gi].sw, lans[dmz_lan].sw);
  if (gen_lans.size() > 1)
    for (std::size_t i = 0; i < gen_lans.size(); ++i)
      add_edge(g, lans[gen_lans[i]].sw, lans[gen_lans[(i + 1) % gen_lans.size()]].sw);
  for (std::size_t j = 0; j < sens_lans.size(); ++j) {
    add_edge(g, lans[sens_lans[j]].sw, lans[gen_lans[j % gen_lans.size()]].sw);
    if (gen_lans.size() > 1)
      add_edge(g, lans[sens_lans[j]].sw, lans[gen_lans[(j + 1) % gen_lans.size()]].sw);
  }

  if (p.backup_switches) {
    for (auto& lan : lans) {
      if (lan.region != Region::general && lan.region != Region::sensitive) continue;
      NodeId backup = add_node(g, lan.region, "switch", lan.id);
      add_edge(g, backup, lan.sw);
      Rng lrng = rng.fork("backup:" + lan.id);
      for (NodeId h : lan.hosts) {
        switch (lrng.index(3)) {
          case 0: break;  // stays on the primary switch
          case 1:         // moves to the backup
            g.edges.erase(Edge(h, lan.sw));
            add_edge(g, h, backup);
            break;
          default:  // dual-homed
            add_edge(g, h, backup);
        }
      }
    }
  }

  return g;
}

NetworkGraph build_tree(const TreeParams& p) {
  if (p.depth < 1 || p.branching < 1)
    throw SimError("invalid-params", "tree needs depth >= 1 and branching >= 1");

  NetworkGraph g;
  g.meta.topology = Topology::tree;
  g.meta.attr_model = AttrModel::none;
  g.meta.seed = p.seed;

  struct Pending {
    NodeId id;
    int level;
  };
  std::vector<Pending> frontier;
  NodeId root = add_node(g, Region::none, "switch", "sw-0");
  frontier.push_back({root, 0});

  while (!frontier.empty()) {
    std::vector<Pending> next;
    for (const auto& parent : frontier) {
      if (parent.level == p.depth) continue;
      const bool child_is_leaf = parent.level + 1 == p.depth;
      const std::string lan =
          child_is_leaf ? "lan-" + std::to_string(parent.id.value) : std::string();
      if (child_is_leaf) g.at(parent.id).lan_id = lan;  // leaf LAN includes its switch
      for (int c = 0; c < p.branching; ++c) {
        NodeId child = child_is_leaf
                           ? add_node(g, Region::none, "server", lan)
                           : add_node(g, Region::none, "switch", "");
        if (!child_is_leaf) g.at(child).lan_id = "sw-" + std::to_string(child.value);
        add_edge(g, parent.id, child);
        next.push_back({child, parent.level + 1});
      }
    }
    frontier = std::move(next);
  }

  g.meta.scale = static_cast<int>(g.nodes.size());
  return g;
}

NetworkGraph build_fattree(const FatTreeParams& p) {
  if (p.k < 2) throw SimError("invalid-params", "fat-tree needs k >= 2");
  if (p.k % 2 != 0) throw SimError("odd-k", "fat-tree k must be even, got " + std::to_string(p.k));

  NetworkGraph g;
  g.meta.topology = Topology::fattree;
  g.meta.attr_model = AttrModel::none;

  const int half = p.k / 2;
  std::vector<NodeId> cores;
  for (int i = 0; i < half * half; ++i)
    cores.push_back(add_node(g, Region::none, "switch", "core-" + std::to_string(i)));

  for (int pod = 0; pod < p.k; ++pod) {
    std::vector<NodeId> aggs, edges_; // aggregation and access layers
    for (int j = 0; j < half; ++j)
      aggs.push_back(add_node(g, Region::none, "switch",
                              "pod" + std::to_string(pod) + "-agg" + std::to_string(j)));
    for (int e = 0; e < half; ++e) {
      const std::string lan = "pod" + std::to_string(pod) + "-edge" + std::to_string(e);
      NodeId acc = add_node(g, Region::none, "switch", lan);
      edges_.push_back(acc);
      for (int h = 0; h < half; ++h) {
        NodeId host = add_node(g, Region::none, "server", lan);
        add_edge(g, acc, host);
      }
    }
    for (NodeId a : aggs)
      for (NodeId e : edges_) add_edge(g, a, e);
    // aggregation switch j serves core group j, so every core switch reaches
    // every pod exactly once
    for (int j = 0; j < half; ++j)
      for (int c = j * half; c < (j + 1) * half; ++c)
        add_edge(g, aggs[static_cast<std::size_t>(j)], cores[static_cast<std::size_t>(c)]);
  }

  g.meta.scale = static_cast<int>(g.nodes.size());
  return g;
}

namespace {

void require_skeleton(const NetworkGraph& g) {
  for (const auto& [id, rec] : g.nodes)
    if (!std::holds_alternative<std::monostate>(rec.attrs))
      throw SimError("model-mismatch", "graph already has attributes assigned");
}

AuthenticAttrs instantiate_template(const HostTemplate& tpl, Rng& vrng) {
  AuthenticAttrs a;
  a.system = tpl.system;
  for (const auto& s : tpl.services) {
    ServiceEntry e;
    e.port = s.port;
    e.name = s.name;
    e.version = s.versions[vrng.index(s.versions.size())];
    a.services.push_back(std::move(e));
  }
  for (const auto& s : tpl.software) {
    SoftwareEntry e;
    e.name = s.name;
    e.version = s.versions[vrng.index(s.versions.size())];
    a.software.push_back(std::move(e));
  }
  return a;
}

std::vector<AccountEntry> make_accounts(Rng& rng, const AttrProfile& profile, bool domain_pool,
                                        bool is_switch, Region region) {
  std::vector<AccountEntry> out;
  auto password = [&](AccountEntry& acc) {
    if (rng.chance(profile.weak_password_rate)) {
      acc.password = rng.pick(weak_password_list());
      acc.weak = true;
    } else {
      acc.password = "S!" + hex64(rng.next_u64());
      acc.weak = false;
    }
  };
  std::set<std::string> used;
  auto fresh_user = [&] {
    std::string u = rng.pick(user_pool());
    while (used.count(u)) u += "2";
    used.insert(u);
    return u;
  };

  if (is_switch) {
    AccountEntry admin{"admin", "", AccountLevel::administrative, false};
    used.insert(admin.user);
    password(admin);
    out.push_back(std::move(admin));
    return out;
  }

  const std::size_t std_count = 1 + rng.index(2);
  for (std::size_t i = 0; i < std_count; ++i) {
    AccountEntry acc{fresh_user(), "", AccountLevel::standard, false};
    password(acc);
    out.push_back(std::move(acc));
  }
  if (rng.chance(0.6)) {
    AccountEntry acc{"admin", "", AccountLevel::administrative, false};
    used.insert(acc.user);
    password(acc);
    out.push_back(std::move(acc));
  }
  const double da_rate = domain_pool ? 0.6 : (region == Region::sensitive ? 0.15 : 0.02);
  if (rng.chance(da_rate)) {
    AccountEntry acc{"da_" + fresh_user(), "", AccountLevel::domain_admin, false};
    password(acc);
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<NodeVuln> matched_and_patched(const AuthenticAttrs& attrs, const Catalog& cat,
                                          double patch_rate, Rng& rng) {
  std::vector<NodeVuln> out;
  for (auto& v : match_vulns(attrs, cat))
    if (!rng.chance(patch_rate)) out.push_back(std::move(v));
  return out;
}

struct LanInfo {
  Region region = Region::none;
  bool has_servers = false;
  std::size_t template_idx = 0;  // into host_templates()
};

std::map<std::string, LanInfo> lan_survey(const NetworkGraph& g, const Rng& rng) {
  std::map<std::string, LanInfo> lans;
  for (const auto& [id, rec] : g.nodes) {
    auto& info = lans[rec.lan_id];
    if (rec.region != Region::none) info.region = rec.region;
    if (rec.node_type == "server") info.has_servers = true;
  }
  for (auto& [lan, info] : lans) {
    auto pool = region_template_pool(info.region);
    Rng lrng = rng.fork("lantpl:" + lan);
    info.template_idx = pool[lrng.index(pool.size())];
  }
  return lans;
}

// Full attribute build for one node; shared by assign_authentic and evolve.
AuthenticAttrs make_node_attrs(const NodeRecord& rec, const LanInfo& lan, const AttrProfile& profile,
                               const Catalog& cat, const Rng& base_rng, const std::string& salt) {
  const std::string tag = salt + std::to_string(rec.id.value);
  if (rec.node_type == "internet") {
    AuthenticAttrs a;
    a.system = OsKind::other;
    return a;
  }
  AuthenticAttrs a;
  bool domain_pool = false;
  if (rec.is_switch()) {
    Rng vrng = base_rng.fork("swver:" + tag);
    a = instantiate_template(switch_template(), vrng);
  } else {
    Rng irng = base_rng.fork("inherit:" + tag);
    const auto& pool = host_templates();
    std::size_t idx = lan.template_idx;
    if (irng.chance(profile.lan_similarity)) {
      Rng vrng = base_rng.fork("lanver:" + salt + rec.lan_id);
      a = instantiate_template(pool[idx], vrng);
    } else {
      auto candidates = region_template_pool(rec.region);
      candidates.erase(std::remove(candidates.begin(), candidates.end(), lan.template_idx),
                       candidates.end());
      if (!candidates.empty()) idx = candidates[irng.index(candidates.size())];
      Rng vrng = base_rng.fork("nodever:" + tag);
      a = instantiate_template(pool[idx], vrng);
    }
    domain_pool = pool[idx].domain_accounts;
  }
  Rng arng = base_rng.fork("accounts:" + tag);
  a.accounts = make_accounts(arng, profile, domain_pool, rec.is_switch(), rec.region);
  Rng prng = base_rng.fork("patch:" + tag);
  a.vulns = matched_and_patched(a, cat, profile.patch_rate, prng);
  return a;
}

void assign_ips(NetworkGraph& g) {
  std::map<std::string, std::vector<NodeId>> lans;
  for (const auto& [id, rec] : g.nodes) lans[rec.lan_id].push_back(id);
  std::map<int, int> subnets_used;
  for (auto& [lan, members] : lans) {
    std::sort(members.begin(), members.end());
    int rc = region_code(g.at(members.front()).region);
    int subnet = -1, host = 0;
    for (NodeId id : members) {
      NodeRecord& rec = g.at(id);
      auto* a = rec.authentic();
      if (!a) continue;
      if (rec.node_type == "internet") {
        a->ip = "100.64.0.1";
        continue;
      }
      if (host % 248 == 0) {
        subnet = subnets_used[rc]++;
        host = 0;
      }
      a->ip = "10." + std::to_string(rc) + "." + std::to_string(subnet) + "." + std::to_string(2 + host);
      ++host;
    }
  }
}

void mark_sensitive(NetworkGraph& g, const Rng& rng) {
  bool has_sensitive_region = false;
  for (const auto& [id, rec] : g.nodes)
    if (rec.region == Region::sensitive) has_sensitive_region = true;

  NodeId last_server{0};
  bool any_marked = false;
  for (auto& [id, rec] : g.nodes) {
    auto* a = rec.authentic();
    if (!a || rec.node_type != "server") continue;
    last_server = id;
    bool mark = false;
    if (has_sensitive_region) {
      mark = rec.region == Region::sensitive;
    } else {
      Rng srng = rng.fork("sens:" + std::to_string(id.value));
      mark = srng.chance(0.1);
    }
    if (mark) {
      Rng vrng = rng.fork("value:" + std::to_string(id.value));
      a->sensitive = true;
      a->value = quantize6(static_cast<double>(vrng.uniform_int(50, 200)));
      any_marked = true;
    }
  }
  if (!has_sensitive_region && !any_marked && last_server.value != 0) {
    auto* a = g.at(last_server).authentic();
    Rng vrng = rng.fork("value:" + std::to_string(last_server.value));
    a->sensitive = true;
    a->value = quantize6(static_cast<double>(vrng.uniform_int(50, 200)));
  }
}

}  // namespace

NetworkGraph assign_hypothetical(const NetworkGraph& skeleton, const AttrProfile& profile,
                                 std::uint64_t seed) {
  if (profile.model != AttrModel::hypothetical)
    throw SimError("model-mismatch", "profile model is " + to_string(profile.model));
  if (profile.m < 1 || profile.value_lo < 0 || profile.value_hi < profile.value_lo)
    throw SimError("invalid-params", "bad hypothetical profile");
  require_skeleton(skeleton);

  NetworkGraph g = skeleton;
  Rng rng(seed);
  for (auto& [id, rec] : g.nodes) {
    Rng nrng = rng.fork("hypo:" + std::to_string(id.value));
    HypotheticalAttrs h;
    h.attack.assign(static_cast<std::size_t>(profile.m), 0);
    h.defense.resize(static_cast<std::size_t>(profile.m));
    for (auto& d : h.defense)
      d = static_cast<int>(nrng.uniform_int(profile.value_lo, profile.value_hi));
    h.detection = static_cast<int>(nrng.uniform_int(profile.value_lo, profile.value_hi));
    rec.attrs = std::move(h);
  }
  g.meta.attr_model = AttrModel::hypothetical;
  g.meta.seed = seed;
  return g;
}

NetworkGraph assign_authentic(const NetworkGraph& skeleton, const AttrProfile& profile,
                              const Catalog& catalog, std::uint64_t seed) {
  if (profile.model != AttrModel::authentic)
    throw SimError("model-mismatch", "profile model is " + to_string(profile.model));
  if (catalog.records.empty()) throw SimError("empty-catalog", "catalog has no records");
  require_skeleton(skeleton);

  NetworkGraph g = skeleton;
  Rng rng(seed);
  const auto lans = lan_survey(g, rng);
  for (auto& [id, rec] : g.nodes)
    rec.attrs = make_node_attrs(rec, lans.at(rec.lan_id), profile, catalog, rng, "");
  assign_ips(g);
  mark_sensitive(g, rng);
  g.meta.attr_model = AttrModel::authentic;
  g.meta.seed = seed;
  return g;
}

AttrProfile profile_for(const NetworkGraph& g) {
  AttrProfile p;
  p.model = g.meta.attr_model;
  if (p.model == AttrModel::hypothetical)
    for (const auto& [id, rec] : g.nodes)
      if (const auto* h = rec.hypothetical()) {
        p.m = static_cast<int>(h->defense.size());
        break;
      }
  return p;
}

namespace {

// One lan's members must stay mutually reachable through edges and adjacent
// switches (the validate_graph rule, checked locally during rewires).
bool lan_ok(const NetworkGraph& g, const std::string& lan) {
  std::vector<NodeId> members;
  for (const auto& [id, rec] : g.nodes)
    if (rec.lan_id == lan) members.push_back(id);
  if (members.size() < 2) return true;
  std::set<NodeId> fabric(members.begin(), members.end());
  std::map<NodeId, std::set<NodeId>> adj;
  for (const auto& e : g.edges) {
    adj[e.a].insert(e.b);
    adj[e.b].insert(e.a);
  }
  for (NodeId m : members)
    for (NodeId nb : adj[m])
      if (g.at(nb).is_switch()) fabric.insert(nb);
  std::set<NodeId> seen{members.front()};
  std::vector<NodeId> stack{members.front()};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    for (NodeId nb : adj[cur])
      if (fabric.count(nb) && !seen.count(nb)) {
        seen.insert(nb);
        stack.push_back(nb);
      }
  }
  for (NodeId m : members)
    if (!seen.count(m)) return false;
  return true;
}

void rotate_attrs(NetworkGraph& g, NodeId id, const AttrProfile& profile, const Catalog* cat,
                  const Rng& rng) {
  NodeRecord& rec = g.at(id);
  if (rec.node_type == "internet") return;  // the gateway carries no rotating assets
  if (auto* h = rec.hypothetical()) {
    Rng nrng = rng.fork("rot:" + std::to_string(id.value));
    for (auto& d : h->defense)
      d = static_cast<int>(nrng.uniform_int(profile.value_lo, profile.value_hi));
    h->detection = static_cast<int>(nrng.uniform_int(profile.value_lo, profile.value_hi));
    return;
  }
  auto* a = rec.authentic();
  if (!a || !cat) return;
  // keep role (service/software names), redraw versions, accounts and vulns
  auto version_variants = [&](const std::string& name) -> const std::vector<const char*>* {
    for (const auto& t : host_templates())
      for (const auto& s : t.services)
        if (name == s.name) return &s.versions;
    for (const auto& t : host_templates())
      for (const auto& s : t.software)
        if (name == s.name) return &s.versions;
    const auto& sw = switch_template();
    for (const auto& s : sw.services)
      if (name == s.name) return &s.versions;
    return nullptr;
  };
  Rng nrng = rng.fork("rot:" + std::to_string(id.value));
  for (auto& s : a->services)
    if (const auto* vs = version_variants(s.name)) s.version = (*vs)[nrng.index(vs->size())];
  for (auto& s : a->software)
    if (const auto* vs = version_variants(s.name)) s.version = (*vs)[nrng.index(vs->size())];
  a->accounts = make_accounts(nrng, profile, false, rec.is_switch(), rec.region);
  Rng prng = rng.fork("rotpatch:" + std::to_string(id.value));
  a->vulns = matched_and_patched(*a, *cat, profile.patch_rate, prng);
}

bool rewire_edge(NetworkGraph& g, NodeId id, const Rng& rng) {
  std::vector<Edge> incident;
  for (const auto& e : g.edges)
    if (e.touches(id)) incident.push_back(e);
  if (incident.empty()) return false;
  Rng nrng = rng.fork("rewire:" + std::to_string(id.value));
  nrng.shuffle(incident);

  std::vector<NodeId> peers;
  for (const auto& [nid, rec] : g.nodes) peers.push_back(nid);
  nrng.shuffle(peers);

  for (const Edge& e : incident) {
    const NodeId old_peer = e.other(id);
    for (NodeId q : peers) {
      if (q == id || q == old_peer || g.has_edge(id, q) || !edge_allowed(g, id, q)) continue;
      g.edges.erase(e);
      g.edges.insert(Edge(id, q));
      if (lan_ok(g, g.at(id).lan_id) && lan_ok(g, g.at(old_peer).lan_id) &&
          lan_ok(g, g.at(q).lan_id)) {
        return true;
      }
      g.edges.erase(Edge(id, q));
      g.edges.insert(e);
    }
  }
  return false;
}

void replace_node(NetworkGraph& g, NodeId id, const AttrProfile& profile, const Catalog* cat,
                  const Rng& rng) {
  const NodeRecord old = g.at(id);
  std::vector<Edge> incident;
  for (const auto& e : g.edges)
    if (e.touches(id)) incident.push_back(e);

  NodeRecord fresh;
  fresh.id = g.fresh_id();
  fresh.region = old.region;
  fresh.node_type = old.node_type;
  fresh.lan_id = old.lan_id;
  if (old.hypothetical()) {
    Rng nrng = rng.fork("repl:" + std::to_string(fresh.id.value));
    HypotheticalAttrs h;
    const auto m = old.hypothetical()->defense.size();
    h.attack.assign(m, 0);
    h.defense.resize(m);
    for (auto& d : h.defense)
      d = static_cast<int>(nrng.uniform_int(profile.value_lo, profile.value_hi));
    h.detection = static_cast<int>(nrng.uniform_int(profile.value_lo, profile.value_hi));
    fresh.attrs = std::move(h);
  } else if (const auto* oa = old.authentic()) {
    LanInfo lan{old.region, old.node_type == "server", 0};
    auto pool = region_template_pool(old.region);
    Rng trng = rng.fork("repltpl:" + std::to_string(fresh.id.value));
    lan.template_idx = pool[trng.index(pool.size())];
    AuthenticAttrs a = make_node_attrs(fresh, lan, profile, *cat, rng,
                                       "repl" + std::to_string(fresh.id.value) + ":");
    a.ip = oa->ip;  // the replacement takes over the address slot
    a.sensitive = oa->sensitive;
    a.value = oa->value;
    fresh.attrs = std::move(a);
  }

  for (const auto& e : incident) g.edges.erase(e);
  g.nodes.erase(id);
  g.nodes.emplace(fresh.id, fresh);
  for (const auto& e : incident) g.edges.insert(Edge(fresh.id, e.other(id), e.attrs));
}

}  // namespace

std::pair<NetworkGraph, GraphDelta> evolve(const NetworkGraph& g, const DynamicsParams& d,
                                           const AttrProfile& profile, const Catalog* catalog,
                                           std::uint64_t seed) {
  if (d.p_change < 0.0 || d.p_change > 1.0)
    throw SimError("invalid-params", "p_change must be in [0, 1]");
  if (g.meta.attr_model == AttrModel::authentic && catalog == nullptr)
    throw SimError("empty-catalog", "authentic evolution needs a catalog");

  const auto count = static_cast<std::size_t>(
      std::ceil(d.p_change * static_cast<double>(g.nodes.size())));

  NetworkGraph cur = g;
  GraphDelta delta;
  delta.cause = DeltaCause::scheduled_variation;
  if (count == 0) return {cur, delta};

  Rng rng(seed);
  std::vector<NodeId> ids;
  for (const auto& [id, rec] : g.nodes) ids.push_back(id);
  Rng srng = rng.fork("select");
  std::vector<NodeId> selected;
  for (std::size_t i : srng.sample_indices(ids.size(), count)) selected.push_back(ids[i]);
  std::sort(selected.begin(), selected.end());

  for (NodeId id : selected) {
    Rng mrng = rng.fork("mut:" + std::to_string(id.value));
    switch (mrng.index(3)) {
      case 0:
        rotate_attrs(cur, id, profile, catalog, rng);
        break;
      case 1:
        if (!rewire_edge(cur, id, rng)) rotate_attrs(cur, id, profile, catalog, rng);
        break;
      default:
        replace_node(cur, id, profile, catalog, rng);
    }
  }

  cur.meta.snapshot_time = g.meta.snapshot_time + 1;
  delta = diff_graphs(g, cur, DeltaCause::scheduled_variation);
  delta.targets = selected;
  return {cur, delta};
}

std::string dataset_kind_name(bool dynamic, AttrModel model) {
  return std::string(dynamic ? "dynamic" : "static") + "_" + to_string(model);
}

namespace {

NetworkGraph build_cell_skeleton(const DatasetSpec& spec, int scale, std::uint64_t seed) {
  switch (spec.topology) {
    case Topology::pltn: {
      PltnParams p = spec.pltn;
      p.total_nodes = scale;
      p.seed = seed;
      return build_pltn(p);
    }
    case Topology::tree: {
      TreeParams p = spec.tree;
      p.seed = seed;
      return build_tree(p);
    }
    case Topology::fattree:
      return build_fattree(spec.fattree);
  }
  throw SimError("invalid-params", "unknown topology");
}

}  // namespace

Manifest generate_dataset(const DatasetSpec& spec, const Catalog& catalog) {
  Manifest manifest;
  std::vector<std::pair<bool, AttrModel>> kinds;
  if (spec.include_static && spec.include_hypothetical) kinds.emplace_back(false, AttrModel::hypothetical);
  if (spec.include_static && spec.include_authentic) kinds.emplace_back(false, AttrModel::authentic);
  if (spec.include_dynamic && spec.include_hypothetical) kinds.emplace_back(true, AttrModel::hypothetical);
  if (spec.include_dynamic && spec.include_authentic) kinds.emplace_back(true, AttrModel::authentic);
  if (kinds.empty()) throw SimError("invalid-params", "no dataset kinds selected");
  if (spec.seeds.empty()) throw SimError("invalid-params", "no seeds given");

  std::vector<int> scales = spec.scales;
  if (spec.topology != Topology::pltn) {
    // structural params fix the size; label the single cell with its node count
    scales = {build_cell_skeleton(spec, 0, 0).meta.scale};
  }
  if (scales.empty()) throw SimError("invalid-params", "no scales given");

  for (const auto& [dynamic, model] : kinds) manifest.kinds.push_back(dataset_kind_name(dynamic, model));
  manifest.scales = scales;
  manifest.seeds = spec.seeds;

  auto emit = [&](const std::filesystem::path& rel, const std::string& bytes) {
    write_file_atomic(spec.out / rel, bytes);
    manifest.files.push_back({rel.generic_string(), sha256_hex(bytes)});
  };

  for (const auto& [dynamic, model] : kinds) {
    const std::string kind = dataset_kind_name(dynamic, model);
    for (int scale : scales) {
      for (std::uint64_t seed : spec.seeds) {
        NetworkGraph skel =
            build_cell_skeleton(spec, spec.topology == Topology::pltn ? scale : 0, seed);
        AttrProfile profile = spec.profile;
        profile.model = model;
        NetworkGraph graph = model == AttrModel::hypothetical
                                 ? assign_hypothetical(skel, profile, seed)
                                 : assign_authentic(skel, profile, catalog, seed);
        graph.meta.lineage_id =
            kind + "/" + std::to_string(scale) + "/net_" + std::to_string(seed);
        const std::filesystem::path cell =
            std::filesystem::path(kind) / std::to_string(scale) / ("net_" + std::to_string(seed));
        emit(cell / "snapshot_0.json", write_snapshot(graph));
        if (dynamic) {
          for (std::int64_t t = 1; t <= spec.dynamics.horizon; ++t) {
            auto [next, delta] = evolve(graph, spec.dynamics, profile,
                                        model == AttrModel::authentic ? &catalog : nullptr,
                                        splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(t))));
            emit(cell / ("delta_" + std::to_string(t) + ".json"), write_delta(delta));
            emit(cell / ("snapshot_" + std::to_string(t) + ".json"), write_snapshot(next));
            graph = std::move(next);
          }
        }
      }
    }
  }

  std::sort(manifest.files.begin(), manifest.files.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });

  Json cfg;
  cfg["topology"] = to_string(spec.topology);
  cfg["dynamics"] = Json{{"p_change", spec.dynamics.p_change},
                         {"interval", spec.dynamics.interval},
                         {"horizon", spec.dynamics.horizon}};
  cfg["profile"] = Json{{"m", spec.profile.m},
                        {"value_lo", spec.profile.value_lo},
                        {"value_hi", spec.profile.value_hi},
                        {"lan_similarity", spec.profile.lan_similarity},
                        {"patch_rate", spec.profile.patch_rate},
                        {"weak_password_rate", spec.profile.weak_password_rate},
                        {"scan_version_rate", spec.profile.scan_version_rate}};
  if (spec.topology == Topology::pltn)
    cfg["pltn"] = Json{{"dmz_fraction", spec.pltn.dmz_fraction},
                       {"general_fraction", spec.pltn.general_fraction},
                       {"sensitive_fraction", spec.pltn.sensitive_fraction},
                       {"general_subnets", spec.pltn.general_subnets},
                       {"sensitive_subnets", spec.pltn.sensitive_subnets},
                       {"backup_switches", spec.pltn.backup_switches}};
  if (spec.topology == Topology::tree)
    cfg["tree"] = Json{{"depth", spec.tree.depth}, {"branching", spec.tree.branching}};
  if (spec.topology == Topology::fattree) cfg["fattree"] = Json{{"k", spec.fattree.k}};
  manifest.generator_config = std::move(cfg);

  write_file_atomic(spec.out / "manifest.json", write_manifest(manifest));
  return manifest;
}

}  // namespace autopt
