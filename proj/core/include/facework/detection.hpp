#pragma once

#include <vector>

#include "facework/interaction.hpp"
#include "facework/taxonomy.hpp"

namespace facework {

// Detection runs over (state-before-event, event) pairs. Detectors are pure:
// they never mutate state and never look at anything later than the event
// under scrutiny. The reactive configuration limits how far back an order
// change may reach; the enhanced configuration keeps the whole history.
struct DetectionConfig {
  bool enhanced = false;
  int window = 8;  // max event distance original->change for reactive order-change reports
};

// Functional-order rules (order changes, stalled or abandoned processes,
// interruptions, physical mishaps). Returned instances carry evidence and
// context but still need assess() for intent and recovery status.
std::vector<DisruptionInstance> detect_functional(const InteractionState& pre,
                                                  const Event& ev,
                                                  const DetectionConfig& cfg);

// Expressive-order rules (situation definition, tacit/proxemic/conversational
// norms, repairables, membrane topics, dispreferred acts).
std::vector<DisruptionInstance> detect_social(const InteractionState& pre,
                                              const Event& ev,
                                              const DetectionConfig& cfg);

// Functional rules first, then social, each in fixed rule order.
std::vector<DisruptionInstance> detect_all(const InteractionState& pre,
                                           const Event& ev,
                                           const DetectionConfig& cfg);

// Fills intent (via the perceived/actual rules) and recovery status. The
// extra flags let the caller merge in evidence that only shows up after the
// event itself, e.g. a bystander reaction. Idempotent for fixed inputs.
DisruptionInstance assess(DisruptionInstance inst, const EvidenceFlags& extra_flags);

}  // namespace facework
