#pragma once
// Event-stream interaction model: participants, dialogue acts, the service
// process phase machine, adjacency pairs and the fold that advances state.
//
// All quantities are integers: positions/lengths in centimetres, money in
// cents, time in whole seconds.  This keeps replays byte-deterministic.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace facework {

using Cm = long long;     // centimetres
using Cents = long long;  // hundredths of the currency unit
using Tick = long long;   // seconds

struct Vec2 {
  Cm x = 0, y = 0;
  bool operator==(const Vec2&) const = default;
};

long long dist2(const Vec2& a, const Vec2& b);  // squared distance, cm^2
// True when segment p1->p2 properly crosses segment q1->q2.
bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1,
                    const Vec2& q2);

enum class Role { agent, client, bystander };

enum class Tie { strangers, acquainted, close };
// strangers < acquainted < close.
bool tie_less(Tie a, Tie b);

struct Participant {
  std::string id;
  Role role = Role::client;
  std::optional<std::string> with_group;  // party ("with") membership
  Vec2 spawn{900, 900};                   // where Enter places them
  bool operator==(const Participant&) const = default;
};

enum class ActKind {
  request, accept, ask, answer, inform,
  apologize, excuse, justify, minimize, self_critique,
  disagree, agree, refuse, self_repair, reference,
  greet, depart_announce, change_topic, state_norm,
  joke, criticize, boundary_statement,
};

const char* to_string(ActKind k);
std::optional<ActKind> act_kind_from_string(const std::string& s);

enum class QuestionForm { yes_no, alternative, open_ended };
const char* to_string(QuestionForm f);

enum class Polarity { yes, no };

struct DialogueAct {
  ActKind kind = ActKind::inform;
  std::string speaker;
  std::vector<std::string> addressees;
  std::optional<std::string> item;          // catalog item (or foreign token)
  std::optional<QuestionForm> question_form;  // asks only
  std::vector<std::string> alternatives;      // alternative questions
  std::optional<Polarity> answer_polarity;    // answers only
  std::optional<std::string> referent;        // deictic references
  std::optional<Tie> presupposed_tie;         // tie the wording presumes
  std::vector<std::string> topics;
  int volume = 5;            // 0..10
  bool mitigated = false;    // hedged/prefaced dispreferred act
  std::optional<Cents> amount;  // bill presentation (inform by agent)
  std::string surface;       // literal wording, may be empty

  bool operator==(const DialogueAct&) const = default;
};

// ----- event payloads --------------------------------------------------

struct Say { DialogueAct act; bool operator==(const Say&) const = default; };
struct Move {
  std::string participant; Vec2 to;
  bool operator==(const Move&) const = default;
};
enum class Mishap { spill, drop, bump };
const char* to_string(Mishap m);
struct Physical {
  std::string participant; Mishap mishap; std::string object;
  bool operator==(const Physical&) const = default;
};
// Masks scripted utterances whose script ordinal falls in [from,to].
struct Noise {
  int level = 0; int span_from = 0; int span_to = 0;
  bool operator==(const Noise&) const = default;
};
struct Enter { std::string participant; bool operator==(const Enter&) const = default; };
struct Depart { std::string participant; bool operator==(const Depart&) const = default; };
struct QueueJoin { std::string participant; bool operator==(const QueueJoin&) const = default; };
enum class ReactionTone { mock, neutral };
struct BystanderReaction {
  std::string participant; ReactionTone tone;
  bool operator==(const BystanderReaction&) const = default;
};
struct Pay {
  std::string participant; Cents amount = 0;
  bool operator==(const Pay&) const = default;
};
// Non-verbal repair marker (cleaning up, remaking an item).
struct Remedy {
  std::string participant; std::string action;
  bool operator==(const Remedy&) const = default;
};

using EventPayload = std::variant<Say, Move, Physical, Noise, Enter, Depart,
                                  QueueJoin, BystanderReaction, Pay, Remedy>;

struct Event {
  int index = 0;  // position in the final stream, dense from 0
  Tick time = 0;
  EventPayload payload;
  std::optional<int> script_ordinal;  // scripted events only
  bool emitted = false;               // produced by the engine

  bool operator==(const Event&) const = default;
};

// ----- functional process ----------------------------------------------

enum class Phase {
  idle, engaged, ordering, confirmed, preparing, served, billing, paid, closed,
};
const char* to_string(Phase p);

struct ChangeMark {
  std::vector<std::string> old_items;
  std::vector<std::string> new_items;
  int original_index = 0;  // event that placed the replaced order
  int change_index = 0;    // event that replaced it
  bool operator==(const ChangeMark&) const = default;
};

struct FunctionalProcess {
  Phase phase = Phase::idle;
  std::vector<std::string> order_items;
  Cents amount_due = 0;
  int order_placed_at = -1;              // event index of last order placement
  std::optional<ChangeMark> last_change;  // consumed by detection
  bool abandoned = false;                 // left while something was owed

  bool operator==(const FunctionalProcess&) const = default;
};

struct IllegalTransition {
  Phase phase;
  std::string act;
};

// Outcome of feeding one act to the phase machine.  An illegal act is a
// disruption candidate, not a crash: phase is left untouched and the
// violation is reported alongside.
struct TransitionResult {
  FunctionalProcess process;
  std::optional<IllegalTransition> violation;
};

struct Catalog {
  std::map<std::string, Cents> prices;
  // unordered compatible pairs; reflexivity is implicit
  std::set<std::pair<std::string, std::string>> compatible;

  bool has(const std::string& item) const { return prices.count(item) > 0; }
  bool operator==(const Catalog&) const = default;
};

// Whether swapping `from` for `to` keeps the order "the same thing".
// Throws UnknownItem (std::out_of_range) when either item is not listed.
bool compatible_change(const Catalog& cat, const std::string& from,
                       const std::string& to);

// ----- adjacency pairs ---------------------------------------------------

struct AdjacencyPair {
  int opened_at = 0;          // event index of the first part
  std::string from, to;       // speaker / addressee of the first part
  ActKind first_kind = ActKind::ask;
  std::optional<QuestionForm> question_form;
  std::vector<std::string> alternatives;
  std::set<ActKind> expected_second;
  Tick deadline = 0;
  bool closed = false;
  bool closed_nonverbally = false;
  std::optional<int> closed_at;
  bool voided = false;  // counterpart left before a second part was possible

  bool operator==(const AdjacencyPair&) const = default;
};

// ----- norms (thresholds copied out of the active culture pack) ---------

struct OccasionNorms {
  std::string occasion_id;
  std::set<std::string> membrane;      // topics filtered out of talk
  Cm proxemic_violation_cm = 50;
  int volume_max = 7;
  int audibility_threshold = 6;
  std::string queue_policy = "fifo";
  Tick timeout_order_start_s = 20;
  Tick timeout_answer_s = 6;
  Tick turn_hold_max_s = 45;
  std::vector<std::string> safe_topics;

  bool operator==(const OccasionNorms&) const = default;
};

// ----- whole-encounter state ---------------------------------------------

struct EnvironmentObject {
  std::string id;
  std::string category;  // what a deictic "those" could pick out
  Vec2 at;
  bool operator==(const EnvironmentObject&) const = default;
};

struct ZoneStay {
  Tick since = 0;
  int entry_index = 0;
  bool operator==(const ZoneStay&) const = default;
};

struct TurnHold {
  std::string speaker;
  Tick started = 0;
  Tick last_say = 0;
  int start_index = 0;
  bool operator==(const TurnHold&) const = default;
};

struct NoiseSpan {
  int level = 0; int from = 0; int to = 0;  // script ordinals
  bool operator==(const NoiseSpan&) const = default;
};

struct InteractionState {
  OccasionNorms norms;
  Catalog catalog;
  std::vector<Participant> cast;                  // declaration order
  std::map<std::string, bool> present;
  std::map<std::string, Vec2> positions;
  std::map<std::pair<std::string, std::string>, Tie> ties;  // key ordered
  std::map<std::string, Vec2> landmarks;          // must include "counter"
  std::vector<EnvironmentObject> objects;
  std::map<std::string, FunctionalProcess> processes;  // per client
  std::vector<AdjacencyPair> pairs;
  std::vector<std::string> queue;
  std::vector<NoiseSpan> noise;
  std::map<std::string, ZoneStay> at_counter;     // clients inside the zone
  std::optional<TurnHold> hold;
  std::optional<DialogueAct> last_say;            // last unmasked utterance
  std::map<std::string, int> last_say_index_by;   // per speaker, unmasked
  std::vector<std::string> topic_history;
  Tick clock = 0;
  int last_index = -1;

  bool operator==(const InteractionState&) const = default;

  const Participant* find(const std::string& id) const;
  const std::string& agent_id() const;  // the unique Role::agent participant
  Tie tie_between(const std::string& a, const std::string& b) const;
  bool is_present(const std::string& id) const;
  bool same_with(const std::string& a, const std::string& b) const;
  // Utterance inaudible to its addressees?
  bool masked(const Event& ev) const;
};

// Distance from a participant to the service counter inside which they are
// considered "at the counter" and expected to start ordering.
inline constexpr Cm kCounterZoneCm = 100;

// Feed the machine one act (or a payment/departure).  Pure.
TransitionResult functional_transition(const FunctionalProcess& process,
                                       const DialogueAct& act,
                                       const Catalog& catalog,
                                       int event_index, Role speaker_role);
TransitionResult functional_transition_pay(const FunctionalProcess& process,
                                           Cents amount);
TransitionResult functional_transition_depart(const FunctionalProcess& process);

// Open pairs whose deadline already passed.
std::vector<AdjacencyPair> pending_pairs(const InteractionState& s);

// Indices into state.pairs of open pairs this act would close.
std::vector<size_t> matching_open_pairs(const InteractionState& s,
                                        const DialogueAct& act);

// Advance state by one event.  Pure: returns the new state.
// Throws StaleEvent (std::invalid_argument) when the index is not
// last_index + 1 and UnknownParticipant (std::invalid_argument) for
// undeclared ids.
InteractionState apply_event(const InteractionState& s, const Event& ev);

}  // namespace facework
