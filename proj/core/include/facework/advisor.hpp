#pragma once
// Design-time guidance: which disruption kinds an agent with a given set of
// capabilities can handle, and a questionnaire-driven architecture report.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "facework/taxonomy.hpp"

namespace facework {

// Capabilities an agent architecture brings, split the way the requirement
// table slices them.  All entries come from closed vocabularies.
struct CompetenceProfile {
  std::set<std::string> competences;     // perceptual, conversational, ...
  std::set<std::string> knowledge;       // scenario, functional_process, ...
  std::set<std::string> representation;  // current_scenario, ...
  std::set<std::string> planning;        // functional, recovery_acts, ...
};

struct KindRequirements {
  std::set<std::string> competences;
  std::set<std::string> knowledge;
  std::set<std::string> representation;
  std::set<std::string> planning;
};

const std::set<std::string>& competence_vocabulary();
const std::set<std::string>& knowledge_vocabulary();
const std::set<std::string>& representation_vocabulary();
const std::set<std::string>& planning_vocabulary();

// Per-kind capability requirements (see docs/requirements_matrix.md).
const std::map<DisruptionKind, KindRequirements>& requirements_table();

// A kind is manageable iff all four requirement sets fit in the profile.
// Monotone: growing the profile never loses a kind.
bool profile_covers(const CompetenceProfile& profile, DisruptionKind kind);
std::set<DisruptionKind> manageable_disruptions(const CompetenceProfile& profile);

// The fourteen design questions, answered yes/no, in order.
struct AdvisorAnswers {
  std::array<bool, 14> q{};
  bool yes(int number) const { return q[static_cast<size_t>(number - 1)]; }
};

// Deterministic report: per-question guidance, recommended architecture
// (planning-capable answers get the planning variant), manageable kinds for
// the profile, and caveats for the cases the reference designs do not cover.
std::string advise(const AdvisorAnswers& answers,
                   const CompetenceProfile& profile);

// File formats: `qN = yes|no` lines (all fourteen required) and
// `competences|knowledge|representation|planning = [a, b]` lines.
// Unknown keys or vocabulary throw SchemaError; malformed text ParseError.
AdvisorAnswers parse_answers(const std::string& text);
CompetenceProfile parse_profile(const std::string& text);

}  // namespace facework
