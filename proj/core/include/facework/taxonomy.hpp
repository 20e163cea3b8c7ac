#pragma once
// Disruption taxonomy: the fixed catalogue of ways a service interaction can
// go off the rails, how intent is read, how urgent repair is, and which
// recovery strategies apply by default.

#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace facework {

// Functional rows (F*) break the service process itself; social rows (S*)
// breach the expressive order around it.
enum class DisruptionKind {
  F1_order_change,
  F2_not_starting,
  F3_not_proceeding,
  F4_abandonment,
  F5_performative_mistake,
  S6_common_definition,
  S7_tacit_norms,
  S8_proxemic_norms,
  S9_conversational_norms,
  S10_repairables,
  S11_membrane,
  S12_dispreferred_act,
};

inline constexpr int kDisruptionKindCount = 12;

// Row-10 troubles come in four observable flavours.
enum class RepairableSubKind {
  non_reception,
  misunderstanding,
  speech_error,
  indexical,
};

enum class Intent { intended, unintended, ambiguous, unknown };

// What the assessment can actually claim: what the breacher meant (often
// unknowable) vs how the room reads it.
struct IntentionalityAssessment {
  Intent actual = Intent::unknown;
  Intent perceived = Intent::ambiguous;

  bool operator==(const IntentionalityAssessment&) const = default;
};

// Ordered by urgency; comparisons rely on this order.
enum class RecoveryStatus {
  tolerated,
  recovery_optional,
  recovery_necessary,
};

enum class RecoveryStrategyKind {
  minimize,
  apologize,
  excuse,
  justify,
  offer_compensation,
  initiate_process,
  repeat_question,
  ask_to_proceed,
  remediate_physical,
  treat_as_irrelevant,
  triangling,
  state_norm,
  boundary_statement,
  request_repeat,
  signal_misunderstanding,
  self_repair,
  clarify_referent,
  ignore_and_continue,
  benevolent_joke,
  criticize,
  change_topic,
  hesitation_preface,
};

inline constexpr int kRecoveryStrategyCount = 22;

// must: the step cannot be skipped without abandoning repair altogether.
enum class StrategyForm { may, must };

// Observable cues available when assessing intent.
struct EvidenceFlags {
  bool talk_based = false;
  bool physical_mishap = false;
  bool third_party_mocks = false;
  bool third_party_neutral = false;
  bool explicit_excuse_given = false;

  bool operator==(const EvidenceFlags&) const = default;
};

// Context bits that status classification consults; which ones matter
// depends on the kind.
struct StatusContext {
  bool compatible_change = false;        // F1: old and new order compatible
  bool process_abandoned = false;        // F3: silence turned into walking away
  bool severity_within_tolerance = false;  // F2/S7: small enough to let pass
  Intent perceived = Intent::ambiguous;  // S6 branches on this
  std::optional<RepairableSubKind> sub_kind;  // S10 only
};

// A chain is either a sequence of steps all performed in order, or a
// preference list where the first viable alternative is performed.
enum class ChainMode { sequence, alternatives };

struct StrategyChain {
  std::vector<RecoveryStrategyKind> steps;
  ChainMode mode = ChainMode::sequence;

  bool operator==(const StrategyChain&) const = default;
};

// A single detected disruption, fully attributed.
struct DisruptionInstance {
  DisruptionKind kind;
  std::optional<RepairableSubKind> sub_kind;  // set iff kind == S10
  std::string breaching_actor;                // participant id
  std::vector<std::string> affected;          // participant ids
  std::vector<int> evidence;                  // event indices, ascending
  int at = 0;                                 // index of last evidence event
  IntentionalityAssessment intent;
  RecoveryStatus status = RecoveryStatus::recovery_necessary;
  EvidenceFlags flags;
  std::string tag;  // detector-specific note (queue_skip, proximity, ...)
  StatusContext context;
  std::vector<std::string> utterance_topics;  // topics of the breaching act
};

const char* to_string(DisruptionKind k);
const char* to_string(RepairableSubKind k);
const char* to_string(Intent i);
const char* to_string(RecoveryStatus s);
const char* to_string(RecoveryStrategyKind s);
std::optional<DisruptionKind> disruption_kind_from_string(const std::string& s);
std::optional<RecoveryStrategyKind> strategy_kind_from_string(const std::string& s);

// 0-based row number of the kind in the fixed taxonomy order.
int row_of(DisruptionKind k);
std::array<DisruptionKind, kDisruptionKindCount> all_disruption_kinds();

// Fills actual/perceived from the kind's fixed reading plus evidence cues.
// Throws std::invalid_argument when contradictory third-party flags are set.
IntentionalityAssessment perceive_intentionality(DisruptionKind kind,
                                                 const EvidenceFlags& flags);

// How urgent repair is for a given kind under the given context.
RecoveryStatus classify_status(DisruptionKind kind, const StatusContext& ctx);

// The agent-side default recovery steps for a kind.  `self` means the agent
// itself is the breaching actor.  Perceived intent only branches S6.
// For S10 the sub-kind picks the repair; defaults to non_reception.
StrategyChain default_strategy_chain(
    DisruptionKind kind, bool breaching_actor_is_agent, Intent perceived,
    std::optional<RepairableSubKind> sub_kind = std::nullopt);

StrategyForm strategy_form(RecoveryStrategyKind s);

// Strategies that legitimately produce no utterance and need no template.
bool strategy_is_nonverbal(RecoveryStrategyKind s);

}  // namespace facework
