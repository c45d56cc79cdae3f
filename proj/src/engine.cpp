#include "autopt/engine.hpp"

#include <algorithm>
#include <cassert>

namespace autopt {

std::string to_string(Actor a) { return a == Actor::attacker ? "attacker" : "defender"; }

Actor actor_from_string(const std::string& s) {
  if (s == "attacker") return Actor::attacker;
  if (s == "defender") return Actor::defender;
  throw SimError("parse-error", "unknown actor '" + s + "'");
}

namespace {

struct KindInfo {
  ActionKind kind;
  const char* name;
  Actor actor;
  int cost;
  bool net_changed;
};

// Time costs and Network-Changed flags straight from the action tables.
// Hypothetical-model actions cost 1; defend/monitor mutate graph attributes
// and therefore count as network-changing.
constexpr KindInfo kKinds[] = {
    {ActionKind::scan, "scan", Actor::attacker, 2, false},
    {ActionKind::exploit, "exploit", Actor::attacker, 1, false},
    {ActionKind::persistence, "persistence", Actor::attacker, 1, false},
    {ActionKind::credential_access, "credential_access", Actor::attacker, 3, false},
    {ActionKind::weak_password_crack, "weak_password_crack", Actor::attacker, 3, false},
    {ActionKind::obtain_sensitive, "obtain_sensitive", Actor::attacker, 2, false},
    {ActionKind::phishing, "phishing", Actor::attacker, 2, false},
    {ActionKind::info_leak, "info_leak", Actor::attacker, 2, false},
    {ActionKind::set_connection, "set_connection", Actor::attacker, 1, true},
    {ActionKind::force_power, "force_power", Actor::attacker, 1, true},
    {ActionKind::defense_evasion, "defense_evasion", Actor::attacker, 2, false},
    {ActionKind::patch, "patch", Actor::defender, 1, true},
    {ActionKind::traffic_monitor, "traffic_monitor", Actor::defender, 2, false},
    {ActionKind::detect_attack, "detect_attack", Actor::defender, 1, false},
    {ActionKind::take_offline, "take_offline", Actor::defender, 1, true},
    {ActionKind::ip_blacklist, "ip_blacklist", Actor::defender, 1, true},
    {ActionKind::set_credentials, "set_credentials", Actor::defender, 1, true},
    {ActionKind::honeypot, "honeypot", Actor::defender, 1, false},
    {ActionKind::countermeasure, "countermeasure", Actor::defender, 2, false},
    {ActionKind::security_training, "security_training", Actor::defender, 10, false},
    {ActionKind::recon, "recon", Actor::attacker, 1, false},
    {ActionKind::attack, "attack", Actor::attacker, 1, false},
    {ActionKind::monitor, "monitor", Actor::defender, 1, true},
    {ActionKind::defend, "defend", Actor::defender, 1, true},
    {ActionKind::pass_turn, "pass", Actor::attacker, 1, false},
};

const KindInfo& info_of(ActionKind k) {
  for (const auto& i : kKinds)
    if (i.kind == k) return i;
  throw SimError("illegal-action", "unknown action kind");
}

}  // namespace

std::string to_string(ActionKind k) { return info_of(k).name; }

ActionKind action_kind_from_string(const std::string& s) {
  for (const auto& i : kKinds)
    if (s == i.name) return i.kind;
  throw SimError("parse-error", "unknown action kind '" + s + "'");
}

int time_cost(ActionKind k) { return info_of(k).cost; }
bool network_changed(ActionKind k) { return info_of(k).net_changed; }
Actor actor_of(ActionKind k) { return info_of(k).actor; }

ActionInstance make_attacker(ActionKind kind, NodeId target) {
  ActionInstance a;
  a.actor = Actor::attacker;
  a.kind = kind;
  a.target = target;
  return a;
}
ActionInstance make_scan(NodeId target) { return make_attacker(ActionKind::scan, target); }
ActionInstance make_exploit(NodeId target, std::string cve_id) {
  ActionInstance a = make_attacker(ActionKind::exploit, target);
  a.cve_id = std::move(cve_id);
  return a;
}
ActionInstance make_set_connection(NodeId source, NodeId target, LinkOp op) {
  ActionInstance a = make_attacker(ActionKind::set_connection, target);
  a.source = source;
  a.link_op = op;
  return a;
}
ActionInstance make_force_power(NodeId target, PowerOp op) {
  ActionInstance a = make_attacker(ActionKind::force_power, target);
  a.power_op = op;
  return a;
}
ActionInstance make_defender(ActionKind kind, NodeId target) {
  ActionInstance a;
  a.actor = Actor::defender;
  a.kind = kind;
  a.target = target;
  return a;
}
ActionInstance make_set_credentials(NodeId target, CredOp op) {
  ActionInstance a = make_defender(ActionKind::set_credentials, target);
  a.cred_op = op;
  return a;
}
ActionInstance make_security_training() { return make_defender(ActionKind::security_training, NodeId{}); }
ActionInstance make_recon(NodeId target) { return make_attacker(ActionKind::recon, target); }
ActionInstance make_attack(NodeId target, int dimension) {
  ActionInstance a = make_attacker(ActionKind::attack, target);
  a.dimension = dimension;
  return a;
}
ActionInstance make_monitor(NodeId target) { return make_defender(ActionKind::monitor, target); }
ActionInstance make_defend(NodeId target, int dimension) {
  ActionInstance a = make_defender(ActionKind::defend, target);
  a.dimension = dimension;
  return a;
}
ActionInstance make_pass(Actor actor) {
  ActionInstance a;
  a.actor = actor;
  a.kind = ActionKind::pass_turn;
  return a;
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::foothold_gained: return "foothold_gained";
    case EventKind::foothold_lost: return "foothold_lost";
    case EventKind::alarm: return "alarm";
    case EventKind::network_delta: return "network_delta";
    case EventKind::goal: return "goal";
    case EventKind::caught: return "caught";
    case EventKind::node_offline: return "node_offline";
    case EventKind::node_online: return "node_online";
    case EventKind::target_offline: return "target_offline";
  }
  return "alarm";
}

EventKind event_kind_from_string(const std::string& s) {
  for (EventKind k : {EventKind::foothold_gained, EventKind::foothold_lost, EventKind::alarm,
                      EventKind::network_delta, EventKind::goal, EventKind::caught,
                      EventKind::node_offline, EventKind::node_online, EventKind::target_offline})
    if (s == to_string(k)) return k;
  throw SimError("parse-error", "unknown event kind '" + s + "'");
}

std::string to_string(ScenarioMode m) {
  switch (m) {
    case ScenarioMode::completely_static: return "completely_static";
    case ScenarioMode::semi_dynamic: return "semi_dynamic";
    case ScenarioMode::completely_dynamic: return "completely_dynamic";
  }
  return "semi_dynamic";
}

ScenarioMode scenario_mode_from_string(const std::string& s) {
  if (s == "completely_static" || s == "static") return ScenarioMode::completely_static;
  if (s == "semi_dynamic" || s == "semi") return ScenarioMode::semi_dynamic;
  if (s == "completely_dynamic" || s == "dynamic") return ScenarioMode::completely_dynamic;
  throw SimError("parse-error", "unknown scenario mode '" + s + "'");
}

std::string to_string(EpisodeStatus s) {
  switch (s) {
    case EpisodeStatus::running: return "running";
    case EpisodeStatus::attacker_goal: return "attacker_goal";
    case EpisodeStatus::attacker_caught: return "attacker_caught";
    case EpisodeStatus::tick_limit: return "tick_limit";
  }
  return "running";
}

namespace {

AccountLevel max_level(AccountLevel a, AccountLevel b) { return a < b ? b : a; }

// Stochastic-branch source: fresh randomness recorded into the outcome, or a
// recorded sequence replayed bit-exactly.
struct DrawCtx {
  Rng* rng;
  Outcome* out;
  const std::vector<Draw>* replay = nullptr;
  std::size_t pos = 0;

  std::uint64_t draw_raw(const std::string& label) {
    std::uint64_t raw;
    if (replay) {
      if (pos >= replay->size() || (*replay)[pos].label != label)
        throw SimError("replay-mismatch", "draw '" + label + "' diverges from the recorded trace");
      raw = (*replay)[pos++].raw;
    } else {
      raw = rng->next_u64();
    }
    out->draws.push_back({label, raw, Rng::unit_from_bits(raw)});
    return raw;
  }

  double draw(const std::string& label) { return Rng::unit_from_bits(draw_raw(label)); }
};

std::string hexn(std::uint64_t v, int n) {
  static const char* hex = "0123456789abcdef";
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = n - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = hex[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace

bool same_state(const SimState& a, const SimState& b) {
  return a.graph == b.graph && a.attacker == b.attacker && a.defender == b.defender &&
         a.clock == b.clock && a.attacker_free == b.attacker_free &&
         a.defender_free == b.defender_free && a.inflight_attacker == b.inflight_attacker &&
         a.inflight_defender == b.inflight_defender && a.attacker_reward == b.attacker_reward &&
         a.defender_reward == b.defender_reward && a.status == b.status &&
         a.caught_flag == b.caught_flag && a.next_variation == b.next_variation &&
         a.submit_seq == b.submit_seq && a.pending_returns == b.pending_returns &&
         a.pending_monitor_kill == b.pending_monitor_kill && a.delta_log == b.delta_log &&
         a.env_log == b.env_log;
}

// ---------------------------------------------------------------------------
// Episode

Episode::Episode(NetworkGraph graph, ScenarioConfig cfg, NodeId entry, GoalSpec goal,
                 std::uint64_t seed)
    : cfg_(std::move(cfg)), goal_(goal), seed_(seed) {
  st_.graph = std::move(graph);
  st_.rng = Rng(splitmix64(seed ^ fnv1a64("episode")));

  if (st_.graph.meta.attr_model == AttrModel::none)
    throw SimError("model-mismatch", "episode graph has no attributes assigned");
  if (cfg_.mode == ScenarioMode::completely_dynamic) {
    if (!cfg_.dynamics) throw SimError("invalid-params", "completely_dynamic requires dynamics");
    if (cfg_.dynamics->interval < 1)
      throw SimError("invalid-params", "dynamics.interval must be >= 1");
    if (cfg_.dynamics->p_change < 0 || cfg_.dynamics->p_change > 1)
      throw SimError("invalid-params", "p_change must be in [0, 1]");
    st_.next_variation = cfg_.dynamics->interval;
  }
  if (cfg_.max_ticks < 1) throw SimError("invalid-params", "max_ticks must be positive");
  if (cfg_.w < 1) throw SimError("invalid-params", "w must be positive");

  if (!st_.graph.has_node(entry))
    throw SimError("bad-entry", "entry node " + std::to_string(entry.value) + " not in graph");
  if (st_.graph.meta.topology == Topology::pltn) {
    Region r = st_.graph.at(entry).region;
    if (r != Region::internet && r != Region::dmz)
      throw SimError("bad-entry", "PLTN entry must sit in the internet or dmz region");
  }

  const bool hypo = hypothetical_graph();
  if (goal_.kind == GoalSpec::Kind::node) {
    if (!st_.graph.has_node(goal_.node))
      throw SimError("bad-goal", "goal node " + std::to_string(goal_.node.value) + " not in graph");
  } else {
    if (hypo) throw SimError("bad-goal", "hypothetical episodes need an explicit goal node");
    bool any = false;
    for (const auto& [id, rec] : st_.graph.nodes)
      if (const auto* a = rec.authentic(); a && a->sensitive) any = true;
    if (!any) throw SimError("bad-goal", "graph has no sensitive node");
  }

  if (!hypo && !cfg_.catalog) cfg_.catalog = std::make_shared<Catalog>(default_catalog());
  if (!cfg_.profile) cfg_.profile = profile_for(st_.graph);

  st_.attacker.footholds[entry] = AccountLevel::standard;
  st_.attacker.foothold_origin[entry] = FootholdOrigin{FootholdOrigin::Method::initial, ""};
  st_.attacker.ever_compromised.insert(entry);
  st_.attacker.discovered[entry];  // known by id; attributes come from scanning
  if (hypo) {
    // the entry foothold exposes its neighborhood, as any compromise does
    reveal_neighbors(entry);
  }
}

Episode init_episode(NetworkGraph graph, ScenarioConfig cfg, NodeId entry, GoalSpec goal,
                     std::uint64_t seed) {
  return Episode(std::move(graph), std::move(cfg), entry, goal, seed);
}

bool Episode::hypothetical_graph() const {
  return st_.graph.meta.attr_model == AttrModel::hypothetical;
}

bool Episode::node_online(NodeId n) const { return st_.defender.offline_until.count(n) == 0; }

std::optional<Actor> Episode::next_actor() const {
  if (st_.status != EpisodeStatus::running) return std::nullopt;
  if (!cfg_.defender_enabled) return Actor::attacker;
  return st_.defender_free <= st_.attacker_free ? Actor::defender : Actor::attacker;
}

ObservationView Episode::observe(Actor actor) const {
  ObservationView v;
  v.actor = actor;
  v.clock = st_.clock;
  if (actor == Actor::attacker) {
    v.knowledge = &st_.attacker;
  } else {
    v.graph = &st_.graph;
    v.posture = &st_.defender;
    v.deltas = &st_.delta_log;
  }
  return v;
}

namespace {

bool foothold_at_least(const AttackerKnowledge& k, NodeId n, AccountLevel lvl) {
  auto it = k.footholds.find(n);
  return it != k.footholds.end() && !(it->second < lvl);
}

}  // namespace

bool Episode::is_legal(const ActionInstance& a) const {
  if (st_.status != EpisodeStatus::running) return false;
  if (a.kind == ActionKind::pass_turn) return true;
  if (actor_of(a.kind) != a.actor) return false;
  if (a.actor == Actor::defender && !cfg_.defender_enabled) return false;
  if (cfg_.mode == ScenarioMode::completely_static && network_changed(a.kind)) return false;

  const bool hypo = hypothetical_graph();
  const bool hypo_kind = a.kind == ActionKind::recon || a.kind == ActionKind::attack ||
                         a.kind == ActionKind::monitor || a.kind == ActionKind::defend;
  if (hypo != hypo_kind) return false;

  const auto& kn = st_.attacker;
  auto discovered = [&](NodeId n) { return kn.discovered.count(n) != 0; };
  auto exists = [&](NodeId n) { return st_.graph.has_node(n); };

  switch (a.kind) {
    case ActionKind::scan:
    case ActionKind::phishing:
    case ActionKind::credential_access:
    case ActionKind::weak_password_crack:
      return discovered(a.target);
    case ActionKind::exploit:
      return discovered(a.target) && !a.cve_id.empty();
    case ActionKind::persistence:
      return foothold_at_least(kn, a.target, AccountLevel::administrative) &&
             !kn.persistent.count(a.target);
    case ActionKind::obtain_sensitive:
      return kn.footholds.count(a.target) != 0;
    case ActionKind::info_leak:
      return kn.collected_sensitive.count(a.target) != 0;
    case ActionKind::set_connection: {
      if (!a.link_op || !kn.footholds.count(a.source) || !discovered(a.target)) return false;
      if (!exists(a.source) || !exists(a.target) || a.source == a.target) return false;
      const bool edge = st_.graph.has_edge(a.source, a.target);
      if (*a.link_op == LinkOp::connect)
        return !edge && edge_allowed(st_.graph, a.source, a.target);
      return edge;
    }
    case ActionKind::force_power:
      if (!a.power_op || !kn.footholds.count(a.target) || !exists(a.target)) return false;
      return *a.power_op == PowerOp::off ? node_online(a.target) : !node_online(a.target);
    case ActionKind::defense_evasion:
      return kn.footholds.count(a.target) != 0 && st_.defender.exploit_trace.count(a.target) != 0;

    case ActionKind::patch: {
      if (!exists(a.target)) return false;
      const auto* at = st_.graph.at(a.target).authentic();
      return at && !at->vulns.empty();
    }
    case ActionKind::traffic_monitor:
      return exists(a.target) && !st_.defender.monitored.count(a.target);
    case ActionKind::detect_attack:
      return exists(a.target);
    case ActionKind::take_offline:
      return exists(a.target) && node_online(a.target);
    case ActionKind::ip_blacklist: {
      if (!exists(a.target)) return false;
      for (const auto& e : st_.graph.edges)
        if (e.touches(a.target)) return true;
      return false;
    }
    case ActionKind::set_credentials: {
      if (!a.cred_op || !exists(a.target)) return false;
      const auto* at = st_.graph.at(a.target).authentic();
      if (!at) return false;
      return *a.cred_op == CredOp::add || !at->accounts.empty();
    }
    case ActionKind::honeypot:
      return exists(a.target) && !st_.defender.honeypots.count(a.target);
    case ActionKind::countermeasure: {
      if (!exists(a.target)) return false;
      for (const auto& al : st_.defender.alarms)
        if (al.kind == "honeypot" && al.node == a.target) return true;
      return false;
    }
    case ActionKind::security_training:
      return true;

    case ActionKind::recon:
      return discovered(a.target) && exists(a.target);
    case ActionKind::attack: {
      if (!discovered(a.target) || !exists(a.target) || kn.footholds.count(a.target)) return false;
      const auto* h = st_.graph.at(a.target).hypothetical();
      return h && a.dimension >= 0 && a.dimension < static_cast<int>(h->defense.size());
    }
    case ActionKind::monitor:
      return exists(a.target);
    case ActionKind::defend: {
      if (!exists(a.target)) return false;
      const auto* h = st_.graph.at(a.target).hypothetical();
      return h && a.dimension >= 0 && a.dimension < static_cast<int>(h->defense.size());
    }
    case ActionKind::pass_turn:
      return true;
  }
  return false;
}

std::vector<ActionInstance> Episode::legal_actions(Actor actor) const {
  if (st_.status != EpisodeStatus::running) throw SimError("episode-over", "episode has ended");
  if (actor == Actor::defender && !cfg_.defender_enabled) return {};
  if ((actor == Actor::attacker && st_.inflight_attacker) ||
      (actor == Actor::defender && st_.inflight_defender))
    throw SimError("actor-busy", to_string(actor) + " has an action in flight");

  std::vector<ActionInstance> out;
  auto consider = [&](ActionInstance a) {
    if (is_legal(a)) out.push_back(std::move(a));
  };

  const bool hypo = hypothetical_graph();
  if (actor == Actor::attacker) {
    for (const auto& [id, info] : st_.attacker.discovered) {
      if (!st_.graph.has_node(id)) continue;  // stale knowledge of a removed node
      if (hypo) {
        consider(make_recon(id));
        if (const auto* h = st_.graph.at(id).hypothetical())
          for (int j = 0; j < static_cast<int>(h->defense.size()); ++j)
            consider(make_attack(id, j));
        continue;
      }
      consider(make_scan(id));
      if (cfg_.catalog)
        for (const auto& rec : cfg_.catalog->records) consider(make_exploit(id, rec.cve_id));
      consider(make_attacker(ActionKind::persistence, id));
      consider(make_attacker(ActionKind::credential_access, id));
      consider(make_attacker(ActionKind::weak_password_crack, id));
      consider(make_attacker(ActionKind::obtain_sensitive, id));
      consider(make_attacker(ActionKind::phishing, id));
      consider(make_attacker(ActionKind::info_leak, id));
      consider(make_attacker(ActionKind::defense_evasion, id));
      consider(make_force_power(id, PowerOp::off));
      consider(make_force_power(id, PowerOp::on));
    }
    if (!hypo) {
      for (const auto& [src, lvl] : st_.attacker.footholds) {
        if (!st_.graph.has_node(src)) continue;
        for (const auto& [dst, info] : st_.attacker.discovered) {
          if (!st_.graph.has_node(dst)) continue;
          consider(make_set_connection(src, dst, LinkOp::connect));
          consider(make_set_connection(src, dst, LinkOp::disconnect));
        }
      }
    }
    return out;
  }

  for (const auto& [id, rec] : st_.graph.nodes) {
    if (hypo) {
      consider(make_monitor(id));
      if (const auto* h = rec.hypothetical())
        for (int j = 0; j < static_cast<int>(h->defense.size()); ++j) consider(make_defend(id, j));
      continue;
    }
    consider(make_defender(ActionKind::patch, id));
    consider(make_defender(ActionKind::traffic_monitor, id));
    consider(make_defender(ActionKind::detect_attack, id));
    consider(make_defender(ActionKind::take_offline, id));
    consider(make_defender(ActionKind::ip_blacklist, id));
    consider(make_set_credentials(id, CredOp::clear));
    consider(make_set_credentials(id, CredOp::add));
    consider(make_defender(ActionKind::honeypot, id));
    consider(make_defender(ActionKind::countermeasure, id));
  }
  if (!hypo) consider(make_security_training());
  return out;
}

std::vector<Outcome> Episode::submit(const ActionInstance& a) { return submit(a, {}); }

std::vector<Outcome> Episode::submit(const ActionInstance& a, const std::vector<Draw>& replay_draws) {
  if (st_.status != EpisodeStatus::running) throw SimError("episode-over", "episode has ended");
  auto na = next_actor();
  if (!na || *na != a.actor)
    throw SimError("actor-busy", to_string(a.actor) + " does not hold the next decision point");
  if (!is_legal(a)) throw SimError("illegal-action", to_string(a.kind));

  InFlight f;
  f.action = a;
  f.issued_at = a.actor == Actor::attacker ? st_.attacker_free : st_.defender_free;
  f.completes_at = f.issued_at + time_cost(a.kind);
  f.seq = st_.submit_seq++;
  f.replay = replay_draws;
  f.has_replay = !replay_draws.empty();
  if (a.actor == Actor::attacker) {
    st_.inflight_attacker = std::move(f);
    st_.attacker_free = st_.inflight_attacker->completes_at;
  } else {
    st_.inflight_defender = std::move(f);
    st_.defender_free = st_.inflight_defender->completes_at;
  }
  return advance_to_decision_point();
}

void Episode::advance_clock(std::int64_t t) {
  if (t <= st_.clock) return;
  st_.attacker_reward -= cfg_.rewards.per_tick_cost * static_cast<double>(t - st_.clock);
  st_.defender_reward = -st_.attacker_reward;
  st_.clock = t;
}

struct Episode::PendingEvent {
  std::int64_t time;
  int prio;  // 0 variation, 1 node return, 2 defender completion, 3 attacker completion
  NodeId node;
};

std::vector<Outcome> Episode::advance_to_decision_point() {
  std::vector<Outcome> outs;

  auto emit_unresolved = [&] {
    for (auto* slot : {&st_.inflight_defender, &st_.inflight_attacker}) {
      if (!*slot) continue;
      Outcome o;
      o.action = (**slot).action;
      o.resolved = false;
      o.success = false;
      o.issued_at = (**slot).issued_at;
      o.completed_at = (**slot).completes_at;
      o.seq = (**slot).seq;
      outs.push_back(std::move(o));
      slot->reset();
    }
  };

  std::int64_t target = cfg_.defender_enabled ? std::min(st_.attacker_free, st_.defender_free)
                                              : st_.attacker_free;
  if (cfg_.termination.tick_limit) target = std::min(target, cfg_.max_ticks);

  while (st_.status == EpisodeStatus::running) {
    std::optional<PendingEvent> next;
    auto offer = [&](std::int64_t time, int prio, NodeId node) {
      if (time > target) return;
      if (!next || time < next->time || (time == next->time && prio < next->prio))
        next = PendingEvent{time, prio, node};
    };
    if (st_.next_variation > 0) offer(st_.next_variation, 0, NodeId{});
    if (!st_.pending_returns.empty())
      offer(st_.pending_returns.begin()->first, 1, st_.pending_returns.begin()->second);
    if (st_.inflight_defender) offer(st_.inflight_defender->completes_at, 2, NodeId{});
    if (st_.inflight_attacker) offer(st_.inflight_attacker->completes_at, 3, NodeId{});
    if (!next) break;

    advance_clock(next->time);
    switch (next->prio) {
      case 0:
        run_scheduled_variation(next->time);
        check_termination(nullptr);
        break;
      case 1:
        handle_node_return(next->node, next->time);
        check_termination(nullptr);
        break;
      case 2:
      case 3: {
        auto& slot = next->prio == 2 ? st_.inflight_defender : st_.inflight_attacker;
        InFlight f = std::move(*slot);
        slot.reset();
        outs.push_back(resolve(f));
        check_termination(&outs.back());
        break;
      }
    }
  }

  if (st_.status == EpisodeStatus::running) {
    advance_clock(target);
    check_termination(nullptr);
  }
  if (st_.status != EpisodeStatus::running) emit_unresolved();
  return outs;
}

bool Episode::goal_satisfied() const {
  if (hypothetical_graph())
    return goal_.kind == GoalSpec::Kind::node && st_.attacker.footholds.count(goal_.node) != 0;
  if (goal_.kind == GoalSpec::Kind::node) return st_.attacker.obtained.count(goal_.node) != 0;
  return !st_.attacker.collected_sensitive.empty();
}

void Episode::check_termination(Outcome* cause) {
  if (st_.status != EpisodeStatus::running) return;
  auto note = [&](EventKind k) {
    Event e{k, st_.clock, NodeId{}, ""};
    if (cause)
      cause->events.push_back(e);
    else
      st_.env_log.push_back(e);
  };
  if (cfg_.termination.goal_reached && goal_satisfied()) {
    st_.status = EpisodeStatus::attacker_goal;
    st_.attacker_reward += cfg_.rewards.goal_bonus;
    st_.defender_reward = -st_.attacker_reward;
    note(EventKind::goal);
    return;
  }
  if (st_.caught_flag) {
    st_.status = EpisodeStatus::attacker_caught;
    note(EventKind::caught);
    return;
  }
  if (cfg_.termination.tick_limit && st_.clock >= cfg_.max_ticks)
    st_.status = EpisodeStatus::tick_limit;
}

void Episode::run_scheduled_variation(std::int64_t tick) {
  const Catalog* cat = hypothetical_graph() ? nullptr : cfg_.catalog.get();
  auto [next, delta] =
      evolve(st_.graph, *cfg_.dynamics, *cfg_.profile, cat,
             splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(tick))));
  st_.graph = std::move(next);
  st_.env_log.push_back({EventKind::network_delta, tick, NodeId{}, "scheduled_variation"});

  for (const auto& rec : delta.removed_nodes) {
    NodeId n = rec.id;
    if (st_.attacker.footholds.erase(n)) {
      st_.attacker.foothold_origin.erase(n);
      st_.env_log.push_back({EventKind::foothold_lost, tick, n, "node_removed"});
    }
    st_.attacker.persistent.erase(n);
    st_.attacker.attack_progress.erase(n);
    st_.defender.monitored.erase(n);
    st_.defender.honeypots.erase(n);
    st_.defender.training_factor.erase(n);
    st_.defender.exploit_trace.erase(n);
    st_.pending_monitor_kill.erase(n);
    if (st_.defender.offline_until.erase(n)) {
      for (auto it = st_.pending_returns.begin(); it != st_.pending_returns.end();)
        it = it->second == n ? st_.pending_returns.erase(it) : std::next(it);
    }
  }

  st_.delta_log.emplace_back(tick, std::move(delta));
  st_.next_variation = tick + cfg_.dynamics->interval;
}

void Episode::handle_node_return(NodeId n, std::int64_t tick) {
  st_.defender.offline_until.erase(n);
  for (auto it = st_.pending_returns.begin(); it != st_.pending_returns.end();)
    it = it->second == n ? st_.pending_returns.erase(it) : std::next(it);
  st_.env_log.push_back({EventKind::node_online, tick, n, ""});
  if (st_.attacker.footholds.count(n) && !st_.attacker.persistent.count(n))
    drop_foothold(n, tick, nullptr, "restart");
}

void Episode::drop_foothold(NodeId n, std::int64_t tick, Outcome* out, const std::string& why) {
  if (!st_.attacker.footholds.erase(n)) return;
  st_.attacker.foothold_origin.erase(n);
  st_.attacker.persistent.erase(n);
  Event e{EventKind::foothold_lost, tick, n, why};
  if (out)
    out->events.push_back(e);
  else
    st_.env_log.push_back(e);
}

void Episode::reveal_neighbors(NodeId n) {
  if (!st_.graph.has_node(n)) return;
  auto& info = st_.attacker.discovered[n];
  for (NodeId nb : neighbors(st_.graph, n)) {
    if (!node_online(nb)) continue;  // offline nodes are invisible neighbors
    info.neighbors.insert(nb);
    st_.attacker.discovered[nb];
  }
}

void Episode::gain_foothold(NodeId n, AccountLevel level, FootholdOrigin origin, Outcome& out) {
  const bool fresh = st_.attacker.footholds.count(n) == 0;
  auto& cur = st_.attacker.footholds[n];
  cur = fresh ? level : max_level(cur, level);
  st_.attacker.foothold_origin[n] = std::move(origin);
  if (fresh) {
    out.events.push_back({EventKind::foothold_gained, out.completed_at, n, ""});
    if (!st_.attacker.ever_compromised.count(n)) {
      st_.attacker.ever_compromised.insert(n);
      if (cfg_.rewards.node_value_on_first_compromise)
        if (const auto* a = st_.graph.at(n).authentic()) {
          st_.attacker_reward += a->value;
          st_.defender_reward = -st_.attacker_reward;
        }
    }
  }
  reveal_neighbors(n);
  if (st_.defender.honeypots.count(n)) {
    st_.defender.alarms.push_back({out.completed_at, "honeypot", n});
    out.events.push_back({EventKind::alarm, out.completed_at, n, "honeypot"});
  }
}

void Episode::refresh_inferred_vulns(NodeId n) {
  if (!cfg_.catalog) return;
  auto& info = st_.attacker.discovered[n];
  AuthenticAttrs partial;
  partial.system = info.system.value_or(OsKind::other);
  for (const auto& [port, svc] : info.services) partial.services.push_back(svc);
  partial.software = info.software;
  auto inferred = match_vulns(partial, *cfg_.catalog);
  // knowledge only grows; stale entries may linger and simply fail on use
  for (auto& v : inferred) {
    bool known = false;
    for (const auto& k : info.known_vulns)
      if (k.cve_id == v.cve_id) known = true;
    if (!known) info.known_vulns.push_back(std::move(v));
  }
  std::sort(info.known_vulns.begin(), info.known_vulns.end());
}

void Episode::apply_graph_delta(GraphDelta d, std::int64_t tick, Outcome& out) {
  st_.graph = apply_delta(st_.graph, d);
  out.events.push_back({EventKind::network_delta, tick, out.action.target, to_string(d.cause)});
  st_.delta_log.emplace_back(tick, std::move(d));
}

Outcome Episode::resolve(const InFlight& f) {
  Outcome out;
  out.action = f.action;
  out.issued_at = f.issued_at;
  out.completed_at = f.completes_at;
  out.seq = f.seq;
  DrawCtx ctx{&st_.rng, &out, f.has_replay ? &f.replay : nullptr, 0};

  const ActionInstance& a = f.action;
  const std::int64_t now = f.completes_at;
  auto& kn = st_.attacker;
  auto& df = st_.defender;

  auto training = [&](NodeId n) {
    auto it = df.training_factor.find(n);
    return it == df.training_factor.end() ? 1.0 : it->second;
  };
  auto target_gone = [&] { return !st_.graph.has_node(a.target); };
  auto target_off = [&] {
    if (node_online(a.target)) return false;
    out.events.push_back({EventKind::target_offline, now, a.target, ""});
    return true;
  };

  switch (a.kind) {
    case ActionKind::pass_turn:
      out.success = true;
      break;

    // ---- attacker, authentic -------------------------------------------
    case ActionKind::scan: {
      if (target_gone() || target_off()) break;
      const NodeRecord& rec = st_.graph.at(a.target);
      auto& info = kn.discovered[a.target];
      info.node_type = rec.node_type;
      info.lan_id = rec.lan_id;
      Json payload{{"node_type", rec.node_type}, {"lan_id", rec.lan_id}};
      if (const auto* at = rec.authentic()) {
        info.system = at->system;
        info.sensitive = at->sensitive;
        payload["system"] = to_string(at->system);
        payload["sensitive"] = at->sensitive;
        Json services = Json::array();
        for (const auto& svc : at->services) {
          // each version string comes back independently with probability
          // scan_version_rate
          const bool with_version =
              ctx.draw("scan_version:" + std::to_string(svc.port)) < cfg_.scan_version_rate &&
              !svc.version.empty();
          Json js{{"port", svc.port}, {"name", svc.name}};
          if (with_version) js["version"] = svc.version;
          services.push_back(js);
          auto& known = info.services[svc.port];
          known.port = svc.port;
          known.name = svc.name;
          if (with_version) known.version = svc.version;
        }
        payload["services"] = std::move(services);
      }
      reveal_neighbors(a.target);
      Json nbs = Json::array();
      for (NodeId nb : kn.discovered[a.target].neighbors) nbs.push_back(nb.value);
      payload["neighbors"] = std::move(nbs);
      refresh_inferred_vulns(a.target);
      out.revealed = std::move(payload);
      out.success = true;
      break;
    }

    case ActionKind::exploit: {
      if (target_gone() || target_off()) break;
      const auto* at = st_.graph.at(a.target).authentic();
      if (!at) break;
      const NodeVuln* vuln = nullptr;
      for (const auto& v : at->vulns)
        if (v.cve_id == a.cve_id) vuln = &v;
      if (!vuln) break;  // vulnerability absent: exploitation fails, time still spent
      if (ctx.draw("exploit:" + a.cve_id) < vuln->p_success) {
        AccountLevel grant = AccountLevel::administrative;
        if (cfg_.catalog)
          if (const auto* rec = cfg_.catalog->find(a.cve_id)) grant = rec->grants;
        gain_foothold(a.target, grant, {FootholdOrigin::Method::exploit, a.cve_id}, out);
        df.exploit_trace[a.target] = now;
        out.success = true;
      }
      break;
    }

    case ActionKind::persistence:
      if (target_gone()) break;
      if (!foothold_at_least(kn, a.target, AccountLevel::administrative)) break;
      kn.persistent.insert(a.target);
      out.success = true;
      break;

    case ActionKind::credential_access: {
      if (target_gone() || target_off()) break;
      const auto* at = st_.graph.at(a.target).authentic();
      if (!at) break;
      AccountLevel best = AccountLevel::standard;
      bool matched = false;
      for (const auto& acc : at->accounts)
        for (const auto& cred : kn.credential_store)
          if (cred.user == acc.user && cred.password == acc.password) {
            matched = true;
            best = max_level(best, acc.level);
          }
      if (!matched) break;
      if (ctx.draw("credential") < training(a.target)) {
        gain_foothold(a.target, best, {FootholdOrigin::Method::credential, ""}, out);
        out.success = true;
      }
      break;
    }

    case ActionKind::weak_password_crack: {
      if (target_gone() || target_off()) break;
      const auto* at = st_.graph.at(a.target).authentic();
      if (!at) break;
      const AccountEntry* weak = nullptr;
      for (const auto& acc : at->accounts)
        if (acc.weak && (!weak || acc.user < weak->user)) weak = &acc;
      if (!weak) break;
      if (ctx.draw("crack") < kWeakCrackRate * training(a.target)) {
        kn.credential_store.insert({weak->user, weak->password, a.target});
        gain_foothold(a.target, AccountLevel::administrative,
                      {FootholdOrigin::Method::crack, ""}, out);
        out.success = true;
      }
      break;
    }

    case ActionKind::obtain_sensitive: {
      if (target_gone() || target_off()) break;
      if (!kn.footholds.count(a.target)) break;
      const NodeRecord& rec = st_.graph.at(a.target);
      const auto* at = rec.authentic();
      if (!at) break;
      auto included = [&](const char* group) {
        return cfg_.obtain_completeness >= 1.0 ||
               ctx.draw(std::string("obtain:") + group) < cfg_.obtain_completeness;
      };
      auto& info = kn.discovered[a.target];
      info.node_type = rec.node_type;
      info.lan_id = rec.lan_id;
      info.system = at->system;
      info.sensitive = at->sensitive;
      Json payload{{"ip", at->ip},
                   {"node_type", rec.node_type},
                   {"lan_id", rec.lan_id},
                   {"system", to_string(at->system)},
                   {"sensitive", at->sensitive},
                   {"value", at->value}};
      if (included("services")) {
        payload["services"] = at->services;
        for (const auto& svc : at->services) info.services[svc.port] = svc;
      }
      if (included("software")) {
        payload["software"] = at->software;
        info.software = at->software;
      }
      if (included("accounts")) {
        payload["accounts"] = at->accounts;
        for (const auto& acc : at->accounts)
          kn.credential_store.insert({acc.user, acc.password, a.target});
      }
      if (included("vulns")) {
        payload["vulns"] = at->vulns;
        for (const auto& v : at->vulns) {
          bool known = false;
          for (const auto& k : info.known_vulns)
            if (k.cve_id == v.cve_id) known = true;
          if (!known) info.known_vulns.push_back(v);
        }
        std::sort(info.known_vulns.begin(), info.known_vulns.end());
      }
      kn.obtained.insert(a.target);
      if (at->sensitive) kn.collected_sensitive.insert(a.target);
      reveal_neighbors(a.target);
      out.revealed = std::move(payload);
      out.success = true;
      break;
    }

    case ActionKind::phishing: {
      if (target_gone() || target_off()) break;
      const auto* at = st_.graph.at(a.target).authentic();
      if (!at || at->accounts.empty()) break;
      if (ctx.draw("phishing") < kPhishingBaseRate * training(a.target)) {
        std::size_t idx = static_cast<std::size_t>(ctx.draw("phishing_account") *
                                                   static_cast<double>(at->accounts.size()));
        if (idx >= at->accounts.size()) idx = at->accounts.size() - 1;
        gain_foothold(a.target, at->accounts[idx].level,
                      {FootholdOrigin::Method::phishing, ""}, out);
        out.success = true;
      }
      break;
    }

    case ActionKind::info_leak: {
      if (target_gone() || target_off()) break;
      if (!kn.collected_sensitive.count(a.target)) break;
      kn.exfiltrated.insert(a.target);
      out.success = true;
      if (df.monitored.count(a.target)) {
        df.alarms.push_back({now, "traffic", a.target});
        out.events.push_back({EventKind::alarm, now, a.target, "traffic"});
        drop_foothold(a.target, now, &out, "suspicious_session");
      } else if (st_.inflight_defender &&
                 st_.inflight_defender->action.kind == ActionKind::traffic_monitor &&
                 st_.inflight_defender->action.target == a.target) {
        st_.pending_monitor_kill.insert(a.target);
      }
      break;
    }

    case ActionKind::set_connection: {
      if (target_gone() || !st_.graph.has_node(a.source)) break;
      if (!kn.footholds.count(a.source)) break;
      const bool edge = st_.graph.has_edge(a.source, a.target);
      GraphDelta d;
      d.cause = DeltaCause::attacker_action;
      if (*a.link_op == LinkOp::connect) {
        if (edge || !edge_allowed(st_.graph, a.source, a.target)) break;
        d.added_edges.push_back(Edge(a.source, a.target));
        kn.discovered[a.source].neighbors.insert(a.target);
        kn.discovered[a.target].neighbors.insert(a.source);
      } else {
        if (!edge) break;
        d.removed_edges.push_back(*st_.graph.edges.find(Edge(a.source, a.target)));
        kn.discovered[a.source].neighbors.erase(a.target);
        kn.discovered[a.target].neighbors.erase(a.source);
      }
      apply_graph_delta(std::move(d), now, out);
      out.success = true;
      break;
    }

    case ActionKind::force_power: {
      if (target_gone()) break;
      if (!kn.footholds.count(a.target)) break;
      if (*a.power_op == PowerOp::off) {
        if (!node_online(a.target)) break;
        st_.defender.offline_until[a.target] = now + kOfflineReturnDelay;
        st_.pending_returns.insert({now + kOfflineReturnDelay, a.target});
        out.events.push_back({EventKind::node_offline, now, a.target, "forced"});
      } else {
        if (node_online(a.target)) break;
        handle_node_return(a.target, now);
      }
      out.success = true;
      break;
    }

    case ActionKind::defense_evasion:
      if (target_gone()) break;
      if (!kn.footholds.count(a.target)) break;
      df.exploit_trace.erase(a.target);
      out.success = true;
      break;

    // ---- defender, authentic -------------------------------------------
    case ActionKind::patch: {
      if (target_gone()) break;
      const auto* at = st_.graph.at(a.target).authentic();
      if (!at || at->vulns.empty()) break;
      std::size_t idx = static_cast<std::size_t>(ctx.draw("patch") *
                                                 static_cast<double>(at->vulns.size()));
      if (idx >= at->vulns.size()) idx = at->vulns.size() - 1;
      const std::string cve = at->vulns[idx].cve_id;
      auto remaining = at->vulns;
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(idx));
      GraphDelta d;
      d.cause = DeltaCause::defender_action;
      d.attr_changes.push_back(make_attr_change(st_.graph, a.target, "vulns", Json(remaining)));
      apply_graph_delta(std::move(d), now, out);
      auto orig = kn.foothold_origin.find(a.target);
      if (orig != kn.foothold_origin.end() &&
          orig->second.method == FootholdOrigin::Method::exploit && orig->second.cve == cve)
        drop_foothold(a.target, now, &out, "patched:" + cve);
      out.detail_note:;  // placeholder label removed below
      out.success = true;
      break;
    }

    case ActionKind::traffic_monitor:
      if (target_gone()) break;
      df.monitored.insert(a.target);
      if (st_.pending_monitor_kill.erase(a.target)) {
        df.alarms.push_back({now, "traffic", a.target});
        out.events.push_back({EventKind::alarm, now, a.target, "traffic"});
        drop_foothold(a.target, now, &out, "suspicious_session");
      }
      out.success = true;
      break;

    case ActionKind::detect_attack: {
      if (target_gone()) break;
      auto it = df.exploit_trace.find(a.target);
      if (it != df.exploit_trace.end() && now - it->second <= kDetectWindow) {
        df.alarms.push_back({now, "detect", a.target});
        out.events.push_back({EventKind::alarm, now, a.target, "detect"});
        drop_foothold(a.target, now, &out, "detected");
        df.exploit_trace.erase(it);
        out.success = true;
      }
      break;
    }

    case ActionKind::take_offline:
      if (target_gone() || !node_online(a.target)) break;
      df.offline_until[a.target] = now + kOfflineReturnDelay;
      st_.pending_returns.insert({now + kOfflineReturnDelay, a.target});
      out.events.push_back({EventKind::node_offline, now, a.target, ""});
      out.success = true;
      break;

    case ActionKind::ip_blacklist: {
      if (target_gone()) break;
      std::vector<Edge> incident;
      for (const auto& e : st_.graph.edges)
        if (e.touches(a.target)) incident.push_back(e);
      if (incident.empty()) break;
      std::size_t idx = static_cast<std::size_t>(ctx.draw("blacklist") *
                                                 static_cast<double>(incident.size()));
      if (idx >= incident.size()) idx = incident.size() - 1;
      GraphDelta d;
      d.cause = DeltaCause::defender_action;
      d.removed_edges.push_back(incident[idx]);
      apply_graph_delta(std::move(d), now, out);
      out.success = true;
      break;
    }

    case ActionKind::set_credentials: {
      if (target_gone()) break;
      const auto* at = st_.graph.at(a.target).authentic();
      if (!at) break;
      GraphDelta d;
      d.cause = DeltaCause::defender_action;
      if (*a.cred_op == CredOp::clear) {
        if (at->accounts.empty()) break;
        d.attr_changes.push_back(
            make_attr_change(st_.graph, a.target, "accounts", Json(std::vector<AccountEntry>{})));
        apply_graph_delta(std::move(d), now, out);
        auto orig = kn.foothold_origin.find(a.target);
        if (orig != kn.foothold_origin.end() &&
            (orig->second.method == FootholdOrigin::Method::credential ||
             orig->second.method == FootholdOrigin::Method::crack ||
             orig->second.method == FootholdOrigin::Method::phishing))
          drop_foothold(a.target, now, &out, "credentials_rotated");
      } else {
        auto accounts = at->accounts;
        AccountEntry fresh;
        fresh.user = "svc_" + hexn(ctx.draw_raw("cred_user"), 6);
        while (std::any_of(accounts.begin(), accounts.end(),
                           [&](const AccountEntry& x) { return x.user == fresh.user; }))
          fresh.user += "x";
        fresh.password = "R!" + hexn(ctx.draw_raw("cred_pass"), 12);
        fresh.level = AccountLevel::standard;
        fresh.weak = false;
        accounts.push_back(std::move(fresh));
        d.attr_changes.push_back(make_attr_change(st_.graph, a.target, "accounts", Json(accounts)));
        apply_graph_delta(std::move(d), now, out);
      }
      out.success = true;
      break;
    }

    case ActionKind::honeypot:
      if (target_gone()) break;
      df.honeypots.insert(a.target);
      out.success = true;
      break;

    case ActionKind::countermeasure: {
      if (target_gone()) break;
      bool alarmed = false;
      for (const auto& al : df.alarms)
        if (al.kind == "honeypot" && al.node == a.target) alarmed = true;
      if (!alarmed) break;
      if (cfg_.termination.honeypot_countermeasure) st_.caught_flag = true;
      out.events.push_back({EventKind::caught, now, a.target, "countermeasure"});
      out.success = true;
      break;
    }

    case ActionKind::security_training: {
      for (const auto& [id, rec] : st_.graph.nodes) {
        const double u = ctx.draw("training:" + std::to_string(id.value));
        const double factor = kTrainingDrawLo + (kTrainingDrawHi - kTrainingDrawLo) * u;
        auto it = df.training_factor.find(id);
        df.training_factor[id] = (it == df.training_factor.end() ? 1.0 : it->second) * factor;
      }
      out.success = true;
      break;
    }

    // ---- hypothetical model --------------------------------------------
    case ActionKind::recon: {
      if (target_gone()) break;
      const auto* h = st_.graph.at(a.target).hypothetical();
      if (!h) break;
      auto& info = kn.discovered[a.target];
      info.defense = h->defense;
      info.detection = h->detection;
      out.revealed = Json{{"defense", h->defense}, {"detection", h->detection}};
      out.success = true;
      break;
    }

    case ActionKind::attack: {
      if (target_gone()) break;
      const auto* h = st_.graph.at(a.target).hypothetical();
      if (!h || kn.footholds.count(a.target)) break;
      auto& progress = kn.attack_progress[a.target];
      if (progress.size() != h->defense.size()) progress.assign(h->defense.size(), 0);
      const auto j = static_cast<std::size_t>(a.dimension);
      progress[j] += 1;
      if (progress[j] > h->defense[j]) {
        gain_foothold(a.target, AccountLevel::administrative,
                      {FootholdOrigin::Method::hypothetical, ""}, out);
        out.success = true;
      } else {
        const double p = static_cast<double>(h->detection) / static_cast<double>(cfg_.w + 1);
        if (ctx.draw("detection") < p) {
          st_.caught_flag = true;
          out.events.push_back({EventKind::caught, now, a.target, "detected"});
        }
      }
      break;
    }

    case ActionKind::monitor: {
      if (target_gone()) break;
      const auto* h = st_.graph.at(a.target).hypothetical();
      if (!h) break;
      GraphDelta d;
      d.cause = DeltaCause::defender_action;
      d.attr_changes.push_back(
          make_attr_change(st_.graph, a.target, "detection", Json(h->detection + 1)));
      apply_graph_delta(std::move(d), now, out);
      out.success = true;
      break;
    }

    case ActionKind::defend: {
      if (target_gone()) break;
      const auto* h = st_.graph.at(a.target).hypothetical();
      if (!h) break;
      auto defense = h->defense;
      defense[static_cast<std::size_t>(a.dimension)] += 1;
      GraphDelta d;
      d.cause = DeltaCause::defender_action;
      d.attr_changes.push_back(make_attr_change(st_.graph, a.target, "defense", Json(defense)));
      apply_graph_delta(std::move(d), now, out);
      out.success = true;
      break;
    }
  }

  return out;
}

// ---------------------------------------------------------------------------
// JSON codecs

void to_json(Json& j, const ActionInstance& v) {
  j = Json{{"actor", to_string(v.actor)},
           {"kind", to_string(v.kind)},
           {"target", v.target.value},
           {"cve_id", v.cve_id},
           {"dimension", v.dimension},
           {"source", v.source.value}};
  if (v.link_op) j["link_op"] = *v.link_op == LinkOp::connect ? "connect" : "disconnect";
  if (v.power_op) j["power_op"] = *v.power_op == PowerOp::off ? "off" : "on";
  if (v.cred_op) j["cred_op"] = *v.cred_op == CredOp::clear ? "clear" : "add";
}

void from_json(const Json& j, ActionInstance& v) {
  v = ActionInstance{};
  v.actor = actor_from_string(j.at("actor").get<std::string>());
  v.kind = action_kind_from_string(j.at("kind").get<std::string>());
  v.target.value = j.value("target", std::uint64_t{0});
  v.cve_id = j.value("cve_id", std::string());
  v.dimension = j.value("dimension", -1);
  v.source.value = j.value("source", std::uint64_t{0});
  if (j.contains("link_op"))
    v.link_op = j["link_op"] == "connect" ? LinkOp::connect : LinkOp::disconnect;
  if (j.contains("power_op")) v.power_op = j["power_op"] == "off" ? PowerOp::off : PowerOp::on;
  if (j.contains("cred_op")) v.cred_op = j["cred_op"] == "clear" ? CredOp::clear : CredOp::add;
}

void to_json(Json& j, const Event& v) {
  j = Json{{"kind", to_string(v.kind)}, {"tick", v.tick}, {"node", v.node.value}, {"detail", v.detail}};
}

void from_json(const Json& j, Event& v) {
  v.kind = event_kind_from_string(j.at("kind").get<std::string>());
  v.tick = j.at("tick").get<std::int64_t>();
  v.node.value = j.at("node").get<std::uint64_t>();
  v.detail = j.value("detail", std::string());
}

void to_json(Json& j, const Draw& v) {
  j = Json{{"label", v.label}, {"raw", v.raw}, {"value", v.value}};
}

void from_json(const Json& j, Draw& v) {
  v.label = j.at("label").get<std::string>();
  v.raw = j.at("raw").get<std::uint64_t>();
  v.value = Rng::unit_from_bits(v.raw);  // derived, not trusted from the file
}

void to_json(Json& j, const Outcome& v) {
  j = Json{{"action", v.action},         {"success", v.success}, {"resolved", v.resolved},
           {"revealed", v.revealed},     {"events", v.events},   {"issued_at", v.issued_at},
           {"completed_at", v.completed_at}, {"seq", v.seq},     {"draws", v.draws}};
}

void from_json(const Json& j, Outcome& v) {
  v.action = j.at("action").get<ActionInstance>();
  v.success = j.at("success").get<bool>();
  v.resolved = j.value("resolved", true);
  v.revealed = j.value("revealed", Json());
  v.events = j.at("events").get<std::vector<Event>>();
  v.issued_at = j.at("issued_at").get<std::int64_t>();
  v.completed_at = j.at("completed_at").get<std::int64_t>();
  v.seq = j.value("seq", std::uint64_t{0});
  v.draws = j.at("draws").get<std::vector<Draw>>();
}

}  // namespace autopt
