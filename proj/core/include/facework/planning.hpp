#pragma once
// Lookahead: before the agent says anything, run the detectors against the
// would-be utterance and pick wording that causes no new trouble.

#include <optional>
#include <string>
#include <vector>

#include "facework/culture.hpp"
#include "facework/detection.hpp"
#include "facework/recovery.hpp"

namespace facework {

struct ForecastCost {
  int necessary = 0;  // disruptions the act would cause that demand repair
  int optional_ = 0;  // ...that merely permit repair
  bool clean() const { return necessary == 0 && optional_ == 0; }
  bool operator==(const ForecastCost&) const = default;
};

// Disruptions a hypothetical agent utterance would trigger right now.
std::vector<DisruptionInstance> forecast_instances(const InteractionState& state,
                                                   const DialogueAct& act);
ForecastCost forecast(const InteractionState& state, const DialogueAct& act);

struct PlanStep {
  CommunicativeAct act;
  ForecastCost cost;
  bool skipped = false;
  std::string note;
};

struct Plan {
  std::vector<PlanStep> steps;       // in execution order; skipped steps kept
  bool unsatisfiable_must_form = false;
  std::vector<std::string> rationale;  // one line per decision
};

// Realize a recovery goal with lookahead.  Candidates for each step are the
// pack's templates in list order (topics in safe-topic order); the first
// clean candidate wins, otherwise the lexicographically cheapest
// (necessary, optional, order of generation).  Must-form steps are never
// dropped: when nothing clean exists they are emitted at minimal cost and
// the plan is flagged.  May-form steps are dropped instead when every
// candidate would itself demand repair.  Preference lists (alternatives
// mode) emit exactly one step.
Plan plan(const RecoveryGoal& goal, const InteractionState& state,
          const CulturePack& pack);

struct PrefaceResult {
  DialogueAct act;
  bool prefaced = false;
};

// If the act as given would land as an unsoftened dispreferred move, and a
// hedged variant would not, swap in the hedged variant (hesitation wording
// prefixed, mitigated flag set).
PrefaceResult preface_if_dispreferred(const DialogueAct& act,
                                      const InteractionState& state,
                                      const CulturePack& pack);

}  // namespace facework
