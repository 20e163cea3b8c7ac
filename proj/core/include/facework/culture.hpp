#pragma once
// Culture packs: the tunable half of the engine.  A pack names an occasion's
// norms (thresholds, filtered topics), the wording templates for recovery
// strategies, and optional overrides of the default strategy chains.
//
// The normative grammar lives in docs/formats.md.  Sketch:
//
//   culture "generic"
//   occasion casual_bar {
//     membrane = [religion, politics]
//     proxemic_violation_m = 0.5
//     ...
//     safe_topics = [busy_day, weather]
//   }
//   template minimize = ["Never mind, it is not a problem."]
//   template change_topic.weather = ["They say it will stay above 30C ..."]
//   strategy S6.other -> [change_topic]

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "facework/errors.hpp"
#include "facework/interaction.hpp"
#include "facework/taxonomy.hpp"

namespace facework {

struct CulturePack {
  std::string id;
  std::map<std::string, OccasionNorms> occasions;
  std::map<RecoveryStrategyKind, std::vector<std::string>> templates;
  // wording that opens a specific safe topic (change_topic.<topic>)
  std::map<std::string, std::vector<std::string>> topic_openers;
  // (kind, agent-is-breacher) -> replacement chain
  std::map<std::pair<DisruptionKind, bool>, StrategyChain> strategy_overrides;
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  SourceLoc loc;
  std::string message;
};

// Parse pack text.  Structural problems throw ParseError; violations of the
// closed schema (unknown keys, non-positive thresholds, membrane/safe-topic
// overlap, unknown strategy ids) throw SchemaError.
CulturePack parse_culture_pack(const std::string& text);

// Pack-internal consistency: every reachable verbal strategy has wording,
// must-form steps stay first in override chains, unreferenced templates are
// flagged as warnings.  Errors mean the pack must not be used.
std::vector<Diagnostic> validate_pack(const CulturePack& pack);

// Canonical text form; parse(serialize(p)) has the same meaning as p.
std::string serialize_pack(const CulturePack& pack);

// Deterministic wording choice: counter cycles through the template list.
// Slot placeholders {name} are substituted literally from `slots`.
// Throws NoTemplate / MissingSlot.
std::string render_template(const CulturePack& pack, RecoveryStrategyKind s,
                            const std::map<std::string, std::string>& slots,
                            long long counter);

// Wording that changes the subject to `topic` (topic opener if declared,
// otherwise the generic change_topic template with {topic} filled in).
std::optional<std::string> render_topic_opener(const CulturePack& pack,
                                               const std::string& topic,
                                               long long counter);

// Pack override if declared, otherwise the taxonomy default.
StrategyChain resolved_chain(const CulturePack& pack, DisruptionKind kind,
                             bool breaching_actor_is_agent, Intent perceived,
                             std::optional<RepairableSubKind> sub_kind);

// Every strategy that could be asked to speak under this pack.
std::set<RecoveryStrategyKind> reachable_strategies(const CulturePack& pack);

// The built-in "generic" pack (same content ships as fixtures/packs/generic.pack).
const CulturePack& default_pack();
const std::string& default_pack_text();

}  // namespace facework
