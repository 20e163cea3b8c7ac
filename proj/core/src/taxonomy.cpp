#include "facework/taxonomy.hpp"

namespace facework {

const char* to_string(DisruptionKind k) {
  switch (k) {
    case DisruptionKind::F1_order_change: return "F1";
    case DisruptionKind::F2_not_starting: return "F2";
    case DisruptionKind::F3_not_proceeding: return "F3";
    case DisruptionKind::F4_abandonment: return "F4";
    case DisruptionKind::F5_performative_mistake: return "F5";
    case DisruptionKind::S6_common_definition: return "S6";
    case DisruptionKind::S7_tacit_norms: return "S7";
    case DisruptionKind::S8_proxemic_norms: return "S8";
    case DisruptionKind::S9_conversational_norms: return "S9";
    case DisruptionKind::S10_repairables: return "S10";
    case DisruptionKind::S11_membrane: return "S11";
    case DisruptionKind::S12_dispreferred_act: return "S12";
  }
  return "?";
}

const char* to_string(RepairableSubKind k) {
  switch (k) {
    case RepairableSubKind::non_reception: return "non_reception";
    case RepairableSubKind::misunderstanding: return "misunderstanding";
    case RepairableSubKind::speech_error: return "speech_error";
    case RepairableSubKind::indexical: return "indexical";
  }
  return "?";
}

const char* to_string(Intent i) {
  switch (i) {
    case Intent::intended: return "intended";
    case Intent::unintended: return "unintended";
    case Intent::ambiguous: return "ambiguous";
    case Intent::unknown: return "unknown";
  }
  return "?";
}

const char* to_string(RecoveryStatus s) {
  switch (s) {
    case RecoveryStatus::tolerated: return "tolerated";
    case RecoveryStatus::recovery_optional: return "recovery_optional";
    case RecoveryStatus::recovery_necessary: return "recovery_necessary";
  }
  return "?";
}

const char* to_string(RecoveryStrategyKind s) {
  switch (s) {
    case RecoveryStrategyKind::minimize: return "minimize";
    case RecoveryStrategyKind::apologize: return "apologize";
    case RecoveryStrategyKind::excuse: return "excuse";
    case RecoveryStrategyKind::justify: return "justify";
    case RecoveryStrategyKind::offer_compensation: return "offer_compensation";
    case RecoveryStrategyKind::initiate_process: return "initiate_process";
    case RecoveryStrategyKind::repeat_question: return "repeat_question";
    case RecoveryStrategyKind::ask_to_proceed: return "ask_to_proceed";
    case RecoveryStrategyKind::remediate_physical: return "remediate_physical";
    case RecoveryStrategyKind::treat_as_irrelevant: return "treat_as_irrelevant";
    case RecoveryStrategyKind::triangling: return "triangling";
    case RecoveryStrategyKind::state_norm: return "state_norm";
    case RecoveryStrategyKind::boundary_statement: return "boundary_statement";
    case RecoveryStrategyKind::request_repeat: return "request_repeat";
    case RecoveryStrategyKind::signal_misunderstanding: return "signal_misunderstanding";
    case RecoveryStrategyKind::self_repair: return "self_repair";
    case RecoveryStrategyKind::clarify_referent: return "clarify_referent";
    case RecoveryStrategyKind::ignore_and_continue: return "ignore_and_continue";
    case RecoveryStrategyKind::benevolent_joke: return "benevolent_joke";
    case RecoveryStrategyKind::criticize: return "criticize";
    case RecoveryStrategyKind::change_topic: return "change_topic";
    case RecoveryStrategyKind::hesitation_preface: return "hesitation_preface";
  }
  return "?";
}

std::optional<DisruptionKind> disruption_kind_from_string(const std::string& s) {
  for (DisruptionKind k : all_disruption_kinds())
    if (s == to_string(k)) return k;
  return std::nullopt;
}

std::optional<RecoveryStrategyKind> strategy_kind_from_string(const std::string& s) {
  for (int i = 0; i < kRecoveryStrategyCount; ++i) {
    auto k = static_cast<RecoveryStrategyKind>(i);
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

int row_of(DisruptionKind k) { return static_cast<int>(k); }

std::array<DisruptionKind, kDisruptionKindCount> all_disruption_kinds() {
  std::array<DisruptionKind, kDisruptionKindCount> out{};
  for (int i = 0; i < kDisruptionKindCount; ++i)
    out[static_cast<size_t>(i)] = static_cast<DisruptionKind>(i);
  return out;
}

IntentionalityAssessment perceive_intentionality(DisruptionKind kind,
                                                 const EvidenceFlags& flags) {
  if (flags.third_party_mocks && flags.third_party_neutral)
    throw std::invalid_argument(
        "perceive_intentionality: contradictory third-party flags");

  IntentionalityAssessment a;
  a.actual = flags.explicit_excuse_given ? Intent::unintended : Intent::unknown;

  switch (kind) {
    // Convention breaches and dispreferred moves read as deliberate.
    case DisruptionKind::S9_conversational_norms:
    case DisruptionKind::S12_dispreferred_act:
      a.perceived = Intent::intended;
      return a;
    // Mishaps and repairables read as accidents.
    case DisruptionKind::F5_performative_mistake:
    case DisruptionKind::S10_repairables:
      a.perceived = Intent::unintended;
      return a;
    // Definition-of-situation breaches are read off bystanders.
    case DisruptionKind::S6_common_definition:
      if (flags.third_party_mocks) a.perceived = Intent::intended;
      else if (flags.third_party_neutral) a.perceived = Intent::unintended;
      else a.perceived = Intent::ambiguous;
      return a;
    // A change request is a deliberate act but lands as a slip of mind.
    case DisruptionKind::F1_order_change:
      a.actual = Intent::intended;
      a.perceived = Intent::unintended;
      return a;
    default:
      break;
  }
  if (flags.talk_based) a.perceived = Intent::intended;
  else if (flags.physical_mishap) a.perceived = Intent::unintended;
  else a.perceived = Intent::ambiguous;
  return a;
}

RecoveryStatus classify_status(DisruptionKind kind, const StatusContext& ctx) {
  using RS = RecoveryStatus;
  switch (kind) {
    case DisruptionKind::F1_order_change:
      return ctx.compatible_change ? RS::recovery_optional
                                   : RS::recovery_necessary;
    case DisruptionKind::F2_not_starting:
      return ctx.severity_within_tolerance ? RS::recovery_optional
                                           : RS::recovery_necessary;
    case DisruptionKind::F3_not_proceeding:
      return ctx.process_abandoned ? RS::recovery_optional
                                   : RS::recovery_necessary;
    case DisruptionKind::F4_abandonment:
    case DisruptionKind::F5_performative_mistake:
    case DisruptionKind::S8_proxemic_norms:
    case DisruptionKind::S11_membrane:
    case DisruptionKind::S12_dispreferred_act:
      return RS::recovery_necessary;
    case DisruptionKind::S6_common_definition:
      return ctx.perceived == Intent::intended ? RS::recovery_necessary
                                               : RS::recovery_optional;
    case DisruptionKind::S7_tacit_norms:
      return ctx.severity_within_tolerance ? RS::tolerated
                                           : RS::recovery_necessary;
    case DisruptionKind::S9_conversational_norms:
      return RS::recovery_optional;
    case DisruptionKind::S10_repairables: {
      auto sub = ctx.sub_kind.value_or(RepairableSubKind::non_reception);
      switch (sub) {
        case RepairableSubKind::non_reception:
        case RepairableSubKind::indexical:
          return RS::recovery_necessary;
        case RepairableSubKind::misunderstanding:
        case RepairableSubKind::speech_error:
          return RS::recovery_optional;
      }
      return RS::recovery_necessary;
    }
  }
  return RS::recovery_necessary;
}

namespace {
StrategyChain seq(std::vector<RecoveryStrategyKind> s) {
  return StrategyChain{std::move(s), ChainMode::sequence};
}
StrategyChain alt(std::vector<RecoveryStrategyKind> s) {
  return StrategyChain{std::move(s), ChainMode::alternatives};
}
}  // namespace

StrategyChain default_strategy_chain(DisruptionKind kind,
                                     bool breaching_actor_is_agent,
                                     Intent perceived,
                                     std::optional<RepairableSubKind> sub_kind) {
  using K = RecoveryStrategyKind;
  const bool self = breaching_actor_is_agent;
  switch (kind) {
    case DisruptionKind::F1_order_change:
      // Changer offers compensation; the served side waves it off.
      return self ? seq({K::offer_compensation}) : seq({K::minimize});
    case DisruptionKind::F2_not_starting:
      return seq({K::initiate_process});
    case DisruptionKind::F3_not_proceeding:
      return seq({K::repeat_question});
    case DisruptionKind::F4_abandonment:
      return seq({K::ask_to_proceed, K::minimize});
    case DisruptionKind::F5_performative_mistake:
      return self ? seq({K::apologize, K::remediate_physical})
                  : seq({K::minimize});
    case DisruptionKind::S6_common_definition:
      // Deliberate or unreadable gaffes are best left unacknowledged;
      // clearly accidental ones get redirected.
      return perceived == Intent::unintended ? seq({K::triangling})
                                             : seq({K::treat_as_irrelevant});
    case DisruptionKind::S7_tacit_norms:
      return seq({K::state_norm});
    case DisruptionKind::S8_proxemic_norms:
      return self ? seq({K::apologize}) : seq({K::minimize});
    case DisruptionKind::S9_conversational_norms:
      return self ? seq({K::apologize, K::excuse})
                  : seq({K::boundary_statement});
    case DisruptionKind::S10_repairables: {
      auto sub = sub_kind.value_or(RepairableSubKind::non_reception);
      switch (sub) {
        case RepairableSubKind::non_reception: return seq({K::request_repeat});
        case RepairableSubKind::misunderstanding:
          return seq({K::signal_misunderstanding});
        case RepairableSubKind::speech_error: return seq({K::self_repair});
        case RepairableSubKind::indexical: return seq({K::clarify_referent});
      }
      return seq({K::request_repeat});
    }
    case DisruptionKind::S11_membrane:
      return alt({K::ignore_and_continue, K::benevolent_joke, K::criticize});
    case DisruptionKind::S12_dispreferred_act:
      return self ? seq({K::hesitation_preface, K::minimize})
                  : seq({K::minimize});
  }
  return seq({K::minimize});
}

StrategyForm strategy_form(RecoveryStrategyKind s) {
  // Asking to repeat is the one step that cannot be waved away: without the
  // missed content the process is stuck.
  return s == RecoveryStrategyKind::request_repeat ? StrategyForm::must
                                                   : StrategyForm::may;
}

bool strategy_is_nonverbal(RecoveryStrategyKind s) {
  return s == RecoveryStrategyKind::treat_as_irrelevant ||
         s == RecoveryStrategyKind::remediate_physical;
}

}  // namespace facework
