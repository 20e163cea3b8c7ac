#include "facework/advisor.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "facework/errors.hpp"

using namespace facework;

namespace {

std::string fixture(const std::string& rel) {
  std::ifstream in(std::string(FACEWORK_FIXTURE_DIR) + "/" + rel);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CompetenceProfile full_profile() {
  return {competence_vocabulary(), knowledge_vocabulary(),
          representation_vocabulary(), planning_vocabulary()};
}

}  // namespace

TEST_CASE("every requirement entry uses the closed vocabularies") {
  const auto& table = requirements_table();
  CHECK(table.size() == 12);
  for (const auto& [kind, req] : table) {
    for (const auto& x : req.competences) CHECK(competence_vocabulary().count(x));
    for (const auto& x : req.knowledge) CHECK(knowledge_vocabulary().count(x));
    for (const auto& x : req.representation)
      CHECK(representation_vocabulary().count(x));
    for (const auto& x : req.planning) CHECK(planning_vocabulary().count(x));
    CHECK(!req.competences.empty());
  }
}

TEST_CASE("the complete profile manages everything, the empty one nothing") {
  CHECK(manageable_disruptions(full_profile()).size() == 12);
  CHECK(manageable_disruptions(CompetenceProfile{}).empty());
}

TEST_CASE("a talk-and-scenario profile reaches order changes only") {
  auto profile = parse_profile(fixture("advisor/profile_basic.txt"));
  auto managed = manageable_disruptions(profile);
  CHECK(managed == std::set<DisruptionKind>{DisruptionKind::F1_order_change});
  CHECK(profile_covers(profile, DisruptionKind::F1_order_change));
  CHECK(!profile_covers(profile, DisruptionKind::F2_not_starting));
}

TEST_CASE("growing a profile never loses a manageable kind") {
  std::mt19937 rng(77u);
  auto pick = [&](const std::set<std::string>& vocab, int keep_mod) {
    std::set<std::string> out;
    for (const auto& x : vocab)
      if (rng() % 4 < static_cast<unsigned>(keep_mod)) out.insert(x);
    return out;
  };
  for (int iter = 0; iter < 300; ++iter) {
    CAPTURE(iter);
    CompetenceProfile small{pick(competence_vocabulary(), 2),
                            pick(knowledge_vocabulary(), 2),
                            pick(representation_vocabulary(), 2),
                            pick(planning_vocabulary(), 2)};
    CompetenceProfile big = small;
    for (const auto& x : pick(competence_vocabulary(), 2))
      big.competences.insert(x);
    for (const auto& x : pick(knowledge_vocabulary(), 2))
      big.knowledge.insert(x);
    for (const auto& x : pick(representation_vocabulary(), 2))
      big.representation.insert(x);
    for (const auto& x : pick(planning_vocabulary(), 2))
      big.planning.insert(x);

    auto ms = manageable_disruptions(small);
    auto mb = manageable_disruptions(big);
    for (DisruptionKind k : ms) CHECK(mb.count(k) == 1);
  }
}

TEST_CASE("the report recommends the reactive design without planning") {
  auto answers = parse_answers(fixture("advisor/answers_basic.txt"));
  CHECK(!answers.yes(7));
  auto report = advise(answers, parse_profile(fixture("advisor/profile_basic.txt")));
  CHECK(report.find("recommended architecture: A (reactive recovery)") !=
        std::string::npos);
  CHECK(report.find("You can use a reactive approach as depicted in "
                    "Architecture A.") != std::string::npos);
  CHECK(report.find("manageable disruption kinds (1 of 12): F1") !=
        std::string::npos);
  CHECK(report.find("not yet manageable:") != std::string::npos);
  CHECK(report.find("caveats") != std::string::npos);
}

TEST_CASE("the report recommends lookahead when planning exists") {
  auto answers = parse_answers(fixture("advisor/answers_full.txt"));
  CHECK(answers.yes(7));
  auto report = advise(answers, full_profile());
  CHECK(report.find("recommended architecture: B (planning recovery with "
                    "lookahead)") != std::string::npos);
  CHECK(report.find("manageable disruption kinds (12 of 12):") !=
        std::string::npos);
  CHECK(report.find("not yet manageable:") == std::string::npos);
  // mediation and mixed backgrounds sit outside both reference designs
  CHECK(report.find("Architectures A and B do NOT cover this.") !=
        std::string::npos);
}

TEST_CASE("a non-social deployment still gets the standing caveat") {
  AdvisorAnswers answers;  // all no
  auto report = advise(answers, CompetenceProfile{});
  CHECK(report.find("could still occur") != std::string::npos);
  CHECK(report.find("recommended architecture: A") != std::string::npos);
  CHECK(report.find("manageable disruption kinds (0 of 12): none") !=
        std::string::npos);
}

TEST_CASE("identical inputs give byte-identical reports") {
  auto answers = parse_answers(fixture("advisor/answers_basic.txt"));
  auto profile = parse_profile(fixture("advisor/profile_basic.txt"));
  CHECK(advise(answers, profile) == advise(answers, profile));
}

TEST_CASE("answer files demand exactly the fourteen questions") {
  CHECK_THROWS_AS(parse_answers("q1 = yes\n"), SchemaError);
  CHECK_THROWS_AS(parse_answers(fixture("advisor/answers_full.txt") +
                                "q3 = no\n"),
                  SchemaError);
  CHECK_THROWS_AS(parse_answers(fixture("advisor/answers_full.txt") +
                                "q15 = yes\n"),
                  SchemaError);
  std::string maybe = fixture("advisor/answers_full.txt");
  maybe.replace(maybe.find("q2 = yes"), 8, "q2 = mmh");
  CHECK_THROWS_AS(parse_answers(maybe), SchemaError);
}

TEST_CASE("profile files reject anything outside the vocabularies") {
  CHECK_THROWS_AS(parse_profile("competences = [telepathy]\n"), SchemaError);
  CHECK_THROWS_AS(parse_profile("charisma = [conversational]\n"), SchemaError);
  CHECK_THROWS_AS(parse_profile("competences = [conversational]\n"
                                "competences = [reasoning]\n"),
                  SchemaError);
  CHECK_THROWS_AS(parse_profile("competences = conversational\n"), ParseError);

  auto p = parse_profile("competences = [conversational]\n");
  CHECK(p.competences == std::set<std::string>{"conversational"});
  CHECK(p.knowledge.empty());
}
