#include "facework/advisor.hpp"

#include <sstream>

#include "facework/errors.hpp"
#include "parse_util.hpp"

namespace facework {

const std::set<std::string>& competence_vocabulary() {
  static const std::set<std::string> v{
      "perceptual",      "conversational", "representational", "functional",
      "reasoning",       "spatial",        "self_perception",
      "self_assessment"};
  return v;
}

const std::set<std::string>& knowledge_vocabulary() {
  static const std::set<std::string> v{
      "scenario",        "functional_process",   "tacit_norms",
      "proxemic_norms",  "conversational_norms", "illocutionary_acts",
      "social_norms"};
  return v;
}

const std::set<std::string>& representation_vocabulary() {
  static const std::set<std::string> v{"current_scenario", "situating_scenario",
                                       "spatial_status",
                                       "communication_status"};
  return v;
}

const std::set<std::string>& planning_vocabulary() {
  static const std::set<std::string> v{"functional", "recovery_acts",
                                       "recovery_illocutionary", "spatial"};
  return v;
}

const std::map<DisruptionKind, KindRequirements>& requirements_table() {
  using K = DisruptionKind;
  static const std::map<DisruptionKind, KindRequirements> table{
      {K::F1_order_change,
       {{"conversational", "representational"},
        {"scenario"},
        {"current_scenario", "situating_scenario"},
        {"functional"}}},
      {K::F2_not_starting,
       {{"representational", "perceptual"}, {"functional_process"}, {},
        {"functional"}}},
      {K::F3_not_proceeding,
       {{"representational"},
        {"functional_process"},
        {"current_scenario", "situating_scenario"},
        {"functional"}}},
      {K::F4_abandonment,
       {{"representational"}, {"functional_process"}, {"situating_scenario"},
        {"functional"}}},
      {K::F5_performative_mistake,
       {{"representational", "functional", "reasoning"},
        {"functional_process"},
        {"situating_scenario"},
        {"functional", "recovery_acts"}}},
      {K::S6_common_definition,
       {{"representational"}, {"scenario"}, {"current_scenario"},
        {"recovery_acts", "recovery_illocutionary"}}},
      {K::S7_tacit_norms,
       {{"representational", "reasoning"}, {"tacit_norms"},
        {"situating_scenario"}, {"recovery_illocutionary"}}},
      {K::S8_proxemic_norms,
       {{"representational", "perceptual", "spatial"},
        {"proxemic_norms"},
        {"spatial_status"},
        {"spatial", "recovery_acts", "recovery_illocutionary"}}},
      {K::S9_conversational_norms,
       {{"conversational", "representational", "perceptual", "reasoning"},
        {"conversational_norms"},
        {"communication_status"},
        {"recovery_illocutionary"}}},
      {K::S10_repairables,
       {{"conversational", "perceptual", "self_perception", "self_assessment"},
        {"illocutionary_acts"},
        {"communication_status"},
        {"recovery_illocutionary"}}},
      {K::S11_membrane,
       {{"conversational", "reasoning"}, {"social_norms", "scenario"},
        {"current_scenario"}, {"recovery_acts", "recovery_illocutionary"}}},
      {K::S12_dispreferred_act,
       {{"conversational", "spatial", "reasoning"}, {"social_norms"}, {},
        {"recovery_acts", "recovery_illocutionary"}}},
  };
  return table;
}

namespace {

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const auto& x : a)
    if (!b.count(x)) return false;
  return true;
}

}  // namespace

bool profile_covers(const CompetenceProfile& profile, DisruptionKind kind) {
  const KindRequirements& req = requirements_table().at(kind);
  return subset(req.competences, profile.competences) &&
         subset(req.knowledge, profile.knowledge) &&
         subset(req.representation, profile.representation) &&
         subset(req.planning, profile.planning);
}

std::set<DisruptionKind> manageable_disruptions(
    const CompetenceProfile& profile) {
  std::set<DisruptionKind> out;
  for (DisruptionKind k : all_disruption_kinds())
    if (profile_covers(profile, k)) out.insert(k);
  return out;
}

namespace {

struct Question {
  const char* label;
  const char* when_yes;
  const char* when_no;
};

const std::array<Question, 14>& questions() {
  static const std::array<Question, 14> qs{{
      {"social agent",
       "Expect the expressive order to be in play; disruption handling "
       "applies directly.",
       "Expressive-order phenomena could still occur around the task; keep "
       "detection available."},
      {"expressive-order failures seen",
       "Use the logged failures to seed detection rules and recovery "
       "wording.",
       "Watch for human-side failures too; the agent can help repair them."},
      {"anticipated social contexts",
       "Encode each context as an occasion: its norms guide detection, and "
       "recovery keeps the context itself stable.",
       "The agent may still end up immersed in a context that brings the "
       "expressive order with it."},
      {"co-present multi-party interaction",
       "More than one human already makes a social context; disruptions can "
       "arise even if the agent itself is not social.",
       "Even single-user interaction can be embedded among other humans."},
      {"social presence as a goal",
       "Managing the expressive order supports social presence, and social "
       "presence in turn raises the stakes.",
       "If the expressive order is triggered anyway, disruptions still need "
       "smoothing."},
      {"capabilities reviewed",
       "Check the capability matrix: each disruption kind lists what it "
       "needs; see the manageable list below.",
       "Review the capability matrix; the manageable list below shows what "
       "the stated profile already covers."},
      {"planning module available",
       "A planning module can drive recovery with lookahead (Architecture "
       "B): wording is chosen so that it causes no new trouble.",
       "You can use a reactive approach as depicted in Architecture A."},
      {"culturally adaptive architecture",
       "Culture packs slot into an adaptive architecture; disruption kinds "
       "stay fixed while wording and thresholds vary.",
       "Disruptions are quasi-universal whereas the specific ways of "
       "recovering them are not; a culture pack per deployment covers that."},
      {"multiple deployment cultures",
       "Ship one pack per deployment; recovery differs by culture even when "
       "detection does not.",
       "A single cultural context keeps the recovery side simple: one pack."},
      {"culture-sensitive activity",
       "Culture-sensitive activities need the pack reviewed with particular "
       "care (proxemics, volume, topics).",
       "Recovery content stays simple."},
      {"mixed cultures among participants",
       "Dynamically mixed cultural backgrounds need per-party adaptation; "
       "Architectures A and B do NOT cover this.",
       "One shared background keeps recovery selection static."},
      {"multicultural context",
       "Either adapt dynamically or assume a deliberately neutral, "
       "globalized occasion.",
       "Treat cultural differences as incidental."},
      {"detect culture-based misunderstandings",
       "Misunderstandings rooted in differing expectations can be surfaced "
       "by comparing packs, but no reference design automates this.",
       "Expressive-order handling stays within one pack's expectations."},
      {"cultural mediator",
       "Mediation is the most demanding case; Architectures A and B do NOT "
       "cover this.",
       "No mediation duties keeps the design within the reference "
       "architectures."},
  }};
  return qs;
}

void append_missing(std::ostringstream& os, const char* label,
                    const std::set<std::string>& need,
                    const std::set<std::string>& have, bool& first) {
  for (const auto& x : need) {
    if (have.count(x)) continue;
    if (!first) os << ", ";
    os << label << ":" << x;
    first = false;
  }
}

}  // namespace

std::string advise(const AdvisorAnswers& answers,
                   const CompetenceProfile& profile) {
  std::ostringstream os;
  os << "capability advisory\n";
  os << "===================\n\n";

  os << "answers\n";
  for (int i = 1; i <= 14; ++i) {
    os << "  q" << i << (i < 10 ? "  " : " ") << questions()[i - 1].label
       << ": " << (answers.yes(i) ? "yes" : "no") << "\n";
  }
  os << "\nguidance\n";
  for (int i = 1; i <= 14; ++i) {
    const Question& q = questions()[i - 1];
    os << "  q" << i << ": " << (answers.yes(i) ? q.when_yes : q.when_no)
       << "\n";
  }

  os << "\nrecommended architecture: ";
  if (answers.yes(7))
    os << "B (planning recovery with lookahead)\n";
  else
    os << "A (reactive recovery)\n";

  auto manageable = manageable_disruptions(profile);
  os << "\nmanageable disruption kinds (" << manageable.size() << " of "
     << kDisruptionKindCount << "):";
  if (manageable.empty()) os << " none";
  for (DisruptionKind k : all_disruption_kinds())
    if (manageable.count(k)) os << " " << to_string(k);
  os << "\n";

  bool any_missing = false;
  for (DisruptionKind k : all_disruption_kinds()) {
    if (manageable.count(k)) continue;
    if (!any_missing) os << "not yet manageable:\n";
    any_missing = true;
    const KindRequirements& req = requirements_table().at(k);
    os << "  " << to_string(k) << " (missing ";
    bool first = true;
    append_missing(os, "competence", req.competences, profile.competences,
                   first);
    append_missing(os, "knowledge", req.knowledge, profile.knowledge, first);
    append_missing(os, "representation", req.representation,
                   profile.representation, first);
    append_missing(os, "planning", req.planning, profile.planning, first);
    os << ")\n";
  }

  os << "\ncaveats\n";
  bool any_caveat = false;
  if (answers.yes(11)) {
    os << "  - Mixed cultural backgrounds among participants: Architectures "
          "A and B do NOT cover this.\n";
    any_caveat = true;
  }
  if (answers.yes(14)) {
    os << "  - Cultural mediation: Architectures A and B do NOT cover "
          "this.\n";
    any_caveat = true;
  }
  if (!answers.yes(1)) {
    os << "  - Not designed as a social agent, but expressive-order "
          "phenomena could still occur; detection stays useful.\n";
    any_caveat = true;
  }
  if (!any_caveat) os << "  (none)\n";

  return os.str();
}

AdvisorAnswers parse_answers(const std::string& text) {
  detail::TokenCursor cur(detail::tokenize(text));
  AdvisorAnswers out;
  std::array<bool, 14> seen{};
  cur.skip_newlines();
  while (!cur.at_end()) {
    std::string key = cur.expect_ident("answer key (q1..q14)");
    int number = 0;
    if (key.size() >= 2 && key[0] == 'q') {
      try {
        number = std::stoi(key.substr(1));
      } catch (...) {
        number = 0;
      }
    }
    if (number < 1 || number > 14)
      throw SchemaError(key, "unknown answer key (expected q1..q14)");
    cur.expect_punct("=");
    std::string val = cur.expect_ident("yes or no");
    if (val != "yes" && val != "no")
      throw SchemaError(key, "answer must be yes or no");
    if (seen[static_cast<size_t>(number - 1)])
      throw SchemaError(key, "duplicate answer");
    seen[static_cast<size_t>(number - 1)] = true;
    out.q[static_cast<size_t>(number - 1)] = val == "yes";
    cur.expect_end_of_line();
    cur.skip_newlines();
  }
  for (int i = 0; i < 14; ++i)
    if (!seen[static_cast<size_t>(i)])
      throw SchemaError("q" + std::to_string(i + 1), "missing answer");
  return out;
}

CompetenceProfile parse_profile(const std::string& text) {
  detail::TokenCursor cur(detail::tokenize(text));
  CompetenceProfile out;
  std::set<std::string> seen;
  cur.skip_newlines();
  while (!cur.at_end()) {
    std::string key = cur.expect_ident("profile category");
    std::set<std::string>* target = nullptr;
    const std::set<std::string>* vocab = nullptr;
    if (key == "competences") {
      target = &out.competences;
      vocab = &competence_vocabulary();
    } else if (key == "knowledge") {
      target = &out.knowledge;
      vocab = &knowledge_vocabulary();
    } else if (key == "representation") {
      target = &out.representation;
      vocab = &representation_vocabulary();
    } else if (key == "planning") {
      target = &out.planning;
      vocab = &planning_vocabulary();
    } else {
      throw SchemaError(key, "unknown profile category");
    }
    if (seen.count(key)) throw SchemaError(key, "duplicate profile category");
    seen.insert(key);
    cur.expect_punct("=");
    cur.expect_punct("[");
    if (!cur.accept_punct("]")) {
      while (true) {
        std::string item = cur.expect_ident("capability token");
        if (!vocab->count(item))
          throw SchemaError(key, "unknown capability: " + item);
        target->insert(item);
        if (cur.accept_punct("]")) break;
        cur.expect_punct(",");
      }
    }
    cur.expect_end_of_line();
    cur.skip_newlines();
  }
  return out;
}

}  // namespace facework
