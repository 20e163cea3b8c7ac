#pragma once
// Turning a detected disruption into something the agent can actually do:
// a repair goal (which strategy chain, what to avoid) and, reactively, a
// single concrete communicative act.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "facework/culture.hpp"
#include "facework/interaction.hpp"
#include "facework/taxonomy.hpp"

namespace facework {

// One realized recovery step.  `say` is absent for deliberate silence
// (tactful blindness) and for purely physical repairs.
struct CommunicativeAct {
  RecoveryStrategyKind strategy = RecoveryStrategyKind::minimize;
  std::optional<DialogueAct> say;
  std::vector<std::string> physical_remedies;  // Remedy action names, in order
  std::string note;                            // trace annotation
};

// What repairing one disruption amounts to, before wording is chosen.
struct RecoveryGoal {
  DisruptionKind kind = DisruptionKind::F1_order_change;
  std::optional<RepairableSubKind> sub_kind;
  std::string breaching_actor;
  std::vector<std::string> affected;
  bool breaching_actor_is_agent = false;
  Intent perceived = Intent::ambiguous;
  RecoveryStatus status = RecoveryStatus::recovery_necessary;
  StrategyChain chain;
  std::set<std::string> avoid_topics;  // membrane plus the breaching topics
  int disruption_at = 0;
};

// Instance -> goal under the given pack (chain overrides, topic avoidance).
RecoveryGoal map_strategy(const DisruptionInstance& inst,
                          const CulturePack& pack,
                          const InteractionState& state);

// Safe topics still usable given the avoid set, in declared order, keeping
// only topics the pack can word.
std::vector<std::string> topic_candidates(const CulturePack& pack,
                                          const OccasionNorms& norms,
                                          const std::set<std::string>& avoid);

// Realize one strategy as an agent act.  `counter` drives template cycling;
// `topic` must be set for change_topic (callers pick it).  Throws NoTemplate
// when the pack has no wording for a verbal strategy.
CommunicativeAct realize_strategy(RecoveryStrategyKind strategy,
                                  const RecoveryGoal& goal,
                                  const InteractionState& state,
                                  const CulturePack& pack, long long counter,
                                  const std::optional<std::string>& topic);

// The reactive shortcut: take the first strategy of the chain and word it
// directly, no lookahead.  For physical mishaps by the agent the apology
// carries the clean-up along.
CommunicativeAct map_reactive(const DisruptionInstance& inst,
                              const CulturePack& pack,
                              const InteractionState& state,
                              long long counter);

}  // namespace facework
