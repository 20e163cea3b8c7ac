#pragma once
// Scripted encounters: a header (who is there, what is sold, where things
// stand) plus a timed event list and the outcomes the script expects.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "facework/interaction.hpp"
#include "facework/taxonomy.hpp"

namespace facework {

struct ScriptEvent {
  Tick time = 0;
  EventPayload payload;
};

// Expectations can be limited to one processing mode.
enum class ArchFilter { both, A, B };

// Ordinals refer to positions in the scripted event list, not the final
// stream (engine speech gets interleaved at run time).
struct ExpectDisruption {
  DisruptionKind kind = DisruptionKind::F1_order_change;
  int at_ordinal = 0;
  ArchFilter arch = ArchFilter::both;
};
struct ExpectRecovery {
  RecoveryStrategyKind strategy = RecoveryStrategyKind::minimize;
  std::string by;
  ArchFilter arch = ArchFilter::both;
};
struct ExpectNoDisruption {
  int from_ordinal = 0;
  int to_ordinal = 0;
  ArchFilter arch = ArchFilter::both;
};
using Expectation =
    std::variant<ExpectDisruption, ExpectRecovery, ExpectNoDisruption>;

struct Scenario {
  std::string id;
  std::string occasion;
  std::string pack_id = "generic";
  std::vector<Participant> cast;  // declaration order is meaningful
  std::map<std::string, Vec2> landmarks;
  std::vector<EnvironmentObject> objects;
  std::map<std::pair<std::string, std::string>, Tie> ties;
  Catalog catalog;
  std::vector<ScriptEvent> events;
  std::vector<Expectation> expectations;
};

// Throws ParseError for malformed text, SchemaError for well-formed text
// that breaks scenario rules (unknown participants, missing counter
// landmark, decreasing times, out-of-range ordinals, ...).
Scenario parse_scenario(const std::string& text);

// Canonical text; parsing it back yields an equivalent scenario.
std::string serialize_scenario(const Scenario& sc);

// One event in canonical script form, without the leading "event t=..".
std::string render_event_payload(const EventPayload& payload);

// Parse exactly one `event t=N <form> ...` statement against an existing
// scenario header (the interactive shell feeds these one line at a time).
ScriptEvent parse_script_event(const std::string& text, const Scenario& sc);

const char* to_string(Role r);
const char* to_string(Tie t);
const char* to_string(ReactionTone t);

}  // namespace facework
