#pragma once

// Discrete-time stochastic attacker/defender episode engine. The environment
// graph, attacker knowledge and defender posture evolve through submitted
// actions whose effects land at their completion tick; same-tick completions
// resolve defender-first.

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "autopt/generator.hpp"
#include "autopt/netmodel.hpp"
#include "autopt/rng.hpp"
#include "autopt/vulncatalog.hpp"

namespace autopt {

enum class Actor { attacker, defender };
std::string to_string(Actor a);
Actor actor_from_string(const std::string& s);

enum class ActionKind {
  // attacker, authentic model
  scan,
  exploit,
  persistence,
  credential_access,
  weak_password_crack,
  obtain_sensitive,
  phishing,
  info_leak,
  set_connection,
  force_power,
  defense_evasion,
  // defender, authentic model
  patch,
  traffic_monitor,
  detect_attack,
  take_offline,
  ip_blacklist,
  set_credentials,
  honeypot,
  countermeasure,
  security_training,
  // hypothetical model
  recon,
  attack,
  monitor,
  defend,
  // scheduling no-op (cost 1); lets an idle actor yield its turn
  pass_turn,
};
std::string to_string(ActionKind k);
ActionKind action_kind_from_string(const std::string& s);

// Time cost and Network-Changed flag per action, as in the action tables.
int time_cost(ActionKind k);
bool network_changed(ActionKind k);
Actor actor_of(ActionKind k);

// Pinned gameplay constants.
inline constexpr int kOfflineReturnDelay = 5;    // ticks until an offline node returns
inline constexpr int kDetectWindow = 2;          // detect_attack catches exploits <= 2 ticks back
inline constexpr double kPhishingBaseRate = 0.3;
inline constexpr double kWeakCrackRate = 0.9;
inline constexpr double kTrainingDrawLo = 0.75;  // security training multiplies per-node
inline constexpr double kTrainingDrawHi = 0.95;  // success factors by a draw from this range

enum class LinkOp { connect, disconnect };
enum class PowerOp { off, on };
enum class CredOp { clear, add };

struct ActionInstance {
  Actor actor = Actor::attacker;
  ActionKind kind = ActionKind::pass_turn;
  NodeId target{};     // unused for security_training / pass_turn
  std::string cve_id;  // exploit parameter
  int dimension = -1;  // attack/defend dimension j
  NodeId source{};     // set_connection initial node
  std::optional<LinkOp> link_op;
  std::optional<PowerOp> power_op;
  std::optional<CredOp> cred_op;
  bool operator==(const ActionInstance&) const = default;
};

ActionInstance make_scan(NodeId target);
ActionInstance make_exploit(NodeId target, std::string cve_id);
ActionInstance make_attacker(ActionKind kind, NodeId target);
ActionInstance make_set_connection(NodeId source, NodeId target, LinkOp op);
ActionInstance make_force_power(NodeId target, PowerOp op);
ActionInstance make_defender(ActionKind kind, NodeId target);
ActionInstance make_set_credentials(NodeId target, CredOp op);
ActionInstance make_security_training();
ActionInstance make_recon(NodeId target);
ActionInstance make_attack(NodeId target, int dimension);
ActionInstance make_monitor(NodeId target);
ActionInstance make_defend(NodeId target, int dimension);
ActionInstance make_pass(Actor actor);

enum class EventKind {
  foothold_gained,
  foothold_lost,
  alarm,
  network_delta,
  goal,
  caught,
  node_offline,
  node_online,
  target_offline,  // the action failed because its target is offline
};
std::string to_string(EventKind k);
EventKind event_kind_from_string(const std::string& s);

struct Event {
  EventKind kind = EventKind::alarm;
  std::int64_t tick = 0;
  NodeId node{};
  std::string detail;
  bool operator==(const Event&) const = default;
};

// One recorded stochastic branch. value is derived from raw, which replays
// bit-exactly.
struct Draw {
  std::string label;
  std::uint64_t raw = 0;
  double value = 0.0;
  bool operator==(const Draw&) const = default;
};

struct Outcome {
  ActionInstance action;
  bool success = false;
  bool resolved = true;  // false only for actions still in flight at termination
  Json revealed;         // partial attribute payload (scan/recon/obtain)
  std::vector<Event> events;
  std::int64_t issued_at = 0;
  std::int64_t completed_at = 0;  // issued_at + time_cost(kind), always
  std::uint64_t seq = 0;          // submission index; fixes replay order
  std::vector<Draw> draws;
  bool operator==(const Outcome&) const = default;
};

// What the attacker has learned about one node; fields absent until revealed.
struct DiscoveredInfo {
  std::optional<std::string> node_type;
  std::optional<std::string> lan_id;
  std::optional<OsKind> system;
  std::optional<bool> sensitive;
  std::map<int, ServiceEntry> services;  // keyed by port; version may stay empty
  std::vector<SoftwareEntry> software;
  std::vector<NodeVuln> known_vulns;  // inferred via the catalog, or exact after obtain
  std::set<NodeId> neighbors;
  std::optional<std::vector<int>> defense;  // hypothetical recon result
  std::optional<int> detection;
  bool operator==(const DiscoveredInfo&) const = default;
};

struct FootholdOrigin {
  enum class Method { initial, exploit, credential, crack, phishing, hypothetical };
  Method method = Method::initial;
  std::string cve;  // for exploit footholds
  bool operator==(const FootholdOrigin&) const = default;
};

struct Credential {
  std::string user;
  std::string password;
  NodeId origin{};
  auto operator<=>(const Credential&) const = default;
};

struct AttackerKnowledge {
  std::map<NodeId, DiscoveredInfo> discovered;  // keys never removed (perfect recall)
  std::map<NodeId, AccountLevel> footholds;
  std::map<NodeId, FootholdOrigin> foothold_origin;
  std::set<NodeId> persistent;
  std::set<Credential> credential_store;
  std::set<NodeId> collected_sensitive;
  std::set<NodeId> exfiltrated;
  std::set<NodeId> obtained;          // nodes where obtain_sensitive succeeded
  std::set<NodeId> ever_compromised;  // first-compromise reward bookkeeping
  std::map<NodeId, std::vector<int>> attack_progress;  // hypothetical attack state
  bool operator==(const AttackerKnowledge&) const = default;
};

struct AlarmRecord {
  std::int64_t tick = 0;
  std::string kind;  // "honeypot", "detect", "traffic"
  NodeId node{};
  bool operator==(const AlarmRecord&) const = default;
};

struct DefenderPosture {
  std::set<NodeId> monitored;
  std::set<NodeId> honeypots;
  std::map<NodeId, std::int64_t> offline_until;
  std::vector<AlarmRecord> alarms;
  std::map<NodeId, double> training_factor;  // absent = 1.0
  std::map<NodeId, std::int64_t> exploit_trace;
  bool operator==(const DefenderPosture&) const = default;
};

enum class ScenarioMode { completely_static, semi_dynamic, completely_dynamic };
std::string to_string(ScenarioMode m);
ScenarioMode scenario_mode_from_string(const std::string& s);

enum class EpisodeStatus { running, attacker_goal, attacker_caught, tick_limit };
std::string to_string(EpisodeStatus s);

struct RewardConfig {
  bool node_value_on_first_compromise = true;
  double goal_bonus = 100.0;
  double per_tick_cost = 1.0;
};

struct TerminationSet {
  bool goal_reached = true;
  bool honeypot_countermeasure = true;
  bool tick_limit = true;
};

struct GoalSpec {
  enum class Kind { node, any_sensitive };
  Kind kind = Kind::any_sensitive;
  NodeId node{};
  static GoalSpec for_node(NodeId n) { return {Kind::node, n}; }
  static GoalSpec sensitive() { return {Kind::any_sensitive, NodeId{}}; }
};

struct ScenarioConfig {
  ScenarioMode mode = ScenarioMode::semi_dynamic;
  std::optional<DynamicsParams> dynamics;  // required iff completely_dynamic
  bool defender_enabled = true;
  std::int64_t max_ticks = 1000;
  int w = 10;  // hypothetical detection probability is detection / (w + 1)
  RewardConfig rewards;
  TerminationSet termination;
  double scan_version_rate = 0.5;
  double obtain_completeness = 1.0;
  std::shared_ptr<const Catalog> catalog;  // defaults to the bundled catalog
  std::optional<AttrProfile> profile;      // attribute source for scheduled variations
};

struct InFlight {
  ActionInstance action;
  std::int64_t issued_at = 0;
  std::int64_t completes_at = 0;
  std::uint64_t seq = 0;
  std::vector<Draw> replay;  // consumed instead of fresh randomness when set
  bool has_replay = false;
  bool operator==(const InFlight&) const = default;
};

struct SimState {
  NetworkGraph graph;
  AttackerKnowledge attacker;
  DefenderPosture defender;
  std::int64_t clock = 0;
  std::int64_t attacker_free = 0;
  std::int64_t defender_free = 0;
  std::optional<InFlight> inflight_attacker;
  std::optional<InFlight> inflight_defender;
  double attacker_reward = 0.0;
  double defender_reward = 0.0;
  EpisodeStatus status = EpisodeStatus::running;
  bool caught_flag = false;
  std::int64_t next_variation = 0;  // next scheduled variation tick; 0 = none
  std::uint64_t submit_seq = 0;
  std::set<std::pair<std::int64_t, NodeId>> pending_returns;
  std::set<NodeId> pending_monitor_kill;  // leak observed while the monitor was in flight
  std::vector<std::pair<std::int64_t, GraphDelta>> delta_log;
  std::vector<Event> env_log;  // environment events between outcomes
  Rng rng{0};
};

// Equality over everything replay must reproduce (rng excluded).
bool same_state(const SimState& a, const SimState& b);

// Attacker observations expose knowledge only; defender observations expose
// the live graph and posture, never attacker knowledge.
struct ObservationView {
  Actor actor = Actor::attacker;
  std::int64_t clock = 0;
  const AttackerKnowledge* knowledge = nullptr;
  const NetworkGraph* graph = nullptr;
  const DefenderPosture* posture = nullptr;
  const std::vector<std::pair<std::int64_t, GraphDelta>>* deltas = nullptr;
};

class Episode {
 public:
  // Throws bad-entry / bad-goal / invalid-params / model-mismatch.
  Episode(NetworkGraph graph, ScenarioConfig cfg, NodeId entry, GoalSpec goal, std::uint64_t seed);

  const SimState& state() const { return st_; }
  SimState& state() { return st_; }  // direct state edits for tests and tools
  const ScenarioConfig& config() const { return cfg_; }
  const GoalSpec& goal() const { return goal_; }
  std::uint64_t seed() const { return seed_; }

  // The actor holding the next decision point; defender wins free-time ties.
  // Empty once the episode has terminated.
  std::optional<Actor> next_actor() const;

  // Exactly the actions whose preconditions hold right now. Throws
  // episode-over / actor-busy; an enabled-but-absent defender yields {}.
  std::vector<ActionInstance> legal_actions(Actor actor) const;
  bool is_legal(const ActionInstance& a) const;

  ObservationView observe(Actor actor) const;

  // Issues the action at its actor's free time, then advances to the next
  // decision point, resolving due completions, node returns and scheduled
  // variations in deterministic order. Returns outcomes resolved on the way
  // (not necessarily this action's). Throws episode-over / actor-busy /
  // illegal-action.
  std::vector<Outcome> submit(const ActionInstance& a);
  std::vector<Outcome> submit(const ActionInstance& a, const std::vector<Draw>& replay_draws);

  bool node_online(NodeId n) const;

 private:
  struct PendingEvent;
  std::vector<Outcome> advance_to_decision_point();
  void advance_clock(std::int64_t t);
  void check_termination(Outcome* cause);
  bool goal_satisfied() const;
  void apply_graph_delta(GraphDelta d, std::int64_t tick, Outcome& out);
  void run_scheduled_variation(std::int64_t tick);
  void handle_node_return(NodeId n, std::int64_t tick);
  void drop_foothold(NodeId n, std::int64_t tick, Outcome* out, const std::string& why);
  void reveal_neighbors(NodeId n);
  void gain_foothold(NodeId n, AccountLevel level, FootholdOrigin origin, Outcome& out);
  void refresh_inferred_vulns(NodeId n);
  Outcome resolve(const InFlight& f);
  bool hypothetical_graph() const;

  SimState st_;
  ScenarioConfig cfg_;
  GoalSpec goal_;
  std::uint64_t seed_ = 0;
};

// Spec-shaped convenience wrapper around the Episode constructor.
Episode init_episode(NetworkGraph graph, ScenarioConfig cfg, NodeId entry, GoalSpec goal,
                     std::uint64_t seed);

// JSON codecs for trace records.
void to_json(Json& j, const ActionInstance& v);
void from_json(const Json& j, ActionInstance& v);
void to_json(Json& j, const Event& v);
void from_json(const Json& j, Event& v);
void to_json(Json& j, const Draw& v);
void from_json(const Json& j, Draw& v);
void to_json(Json& j, const Outcome& v);
void from_json(const Json& j, Outcome& v);

}  // namespace autopt
