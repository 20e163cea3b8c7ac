#include "facework/recovery.hpp"

#include "doctest.h"
#include "facework/detection.hpp"
#include "helpers.hpp"

using namespace facework;
using testbar::make_state;
using testbar::next_event;
using testbar::say_act;
using testbar::step_say;

namespace {

DisruptionInstance detect_one(const InteractionState& s, EventPayload payload,
                              Tick t) {
  DetectionConfig cfg;
  cfg.enhanced = true;
  auto found = detect_all(s, testbar::next_event(s, std::move(payload), t), cfg);
  REQUIRE(found.size() == 1);
  return assess(found[0], {});
}

}  // namespace

TEST_CASE("goal construction copies the facts and resolves the chain") {
  auto s = make_state();
  auto req = say_act(ActKind::request, "client1", "agent");
  req.item = "coffee";
  s = step_say(s, req, 1);
  s = step_say(s, say_act(ActKind::accept, "agent", "client1"), 2);
  auto change = say_act(ActKind::request, "client1", "agent");
  change.item = "water";
  auto inst = detect_one(s, Say{change}, 4);

  RecoveryGoal goal = map_strategy(inst, default_pack(), s);
  CHECK(goal.kind == DisruptionKind::F1_order_change);
  CHECK(!goal.breaching_actor_is_agent);
  CHECK(goal.chain.steps ==
        std::vector<RecoveryStrategyKind>{RecoveryStrategyKind::minimize,
                                          RecoveryStrategyKind::change_topic});
  CHECK(goal.avoid_topics == s.norms.membrane);
}

TEST_CASE("gaffe repair avoids the topics the gaffe itself touched") {
  auto s = make_state();
  auto act = say_act(ActKind::inform, "client2", "client1");
  act.presupposed_tie = Tie::close;
  act.topics = {"busy_day"};
  auto inst = detect_one(s, Say{act}, 2);
  RecoveryGoal goal = map_strategy(inst, default_pack(), s);
  CHECK(goal.avoid_topics.count("busy_day") == 1);

  auto candidates = topic_candidates(default_pack(), s.norms,
                                     goal.avoid_topics);
  REQUIRE(!candidates.empty());
  CHECK(candidates.front() == "weather");
}

TEST_CASE("safe topics come in declared order minus the avoided ones") {
  auto cands = topic_candidates(default_pack(),
                                default_pack().occasions.at("casual_bar"), {});
  CHECK(cands == std::vector<std::string>{"busy_day", "weather", "sports"});
}

TEST_CASE("reactive repair takes the first strategy of the chain") {
  auto s = make_state();
  auto req = say_act(ActKind::request, "client1", "agent");
  req.item = "coffee";
  s = step_say(s, req, 1);
  s = step_say(s, say_act(ActKind::accept, "agent", "client1"), 2);
  auto change = say_act(ActKind::request, "client1", "agent");
  change.item = "water";
  auto inst = detect_one(s, Say{change}, 4);

  auto act = map_reactive(inst, default_pack(), s, 0);
  CHECK(act.strategy == RecoveryStrategyKind::minimize);
  REQUIRE(act.say.has_value());
  CHECK(act.say->speaker == "agent");
  CHECK(act.say->addressees == std::vector<std::string>{"client1"});
  CHECK(act.say->kind == ActKind::minimize);
  CHECK(act.say->surface == "Never mind, it is not a problem.");

  auto cycled = map_reactive(inst, default_pack(), s, 1);
  CHECK(cycled.say->surface == "Don't worry. There are days like that.");
}

TEST_CASE("the agent's own mishap gets an apology that carries the cleanup") {
  auto s = make_state();
  auto req = say_act(ActKind::request, "client1", "agent");
  req.item = "latte";
  s = step_say(s, req, 1);
  s = step_say(s, say_act(ActKind::accept, "agent", "client1"), 2);
  auto inst = detect_one(s, Physical{"agent", Mishap::spill, "cup"}, 4);

  auto act = map_reactive(inst, default_pack(), s, 0);
  CHECK(act.strategy == RecoveryStrategyKind::apologize);
  REQUIRE(act.say.has_value());
  CHECK(act.physical_remedies ==
        std::vector<std::string>{"clean_counter", "remake_item"});
}

TEST_CASE("a mishap before anything is on the bench needs no remake") {
  auto s = make_state();
  auto inst = detect_one(s, Physical{"agent", Mishap::bump, "tray"}, 2);
  auto act = map_reactive(inst, default_pack(), s, 0);
  CHECK(act.physical_remedies == std::vector<std::string>{"clean_counter"});
}

TEST_CASE("someone else's rewording needs no act from the agent") {
  auto s = make_state();
  s = step_say(s, say_act(ActKind::inform, "client1", "agent"), 1);
  auto inst = detect_one(s, Say{say_act(ActKind::self_repair, "client1",
                                        "agent")},
                         2);
  auto act = map_reactive(inst, default_pack(), s, 0);
  CHECK(act.strategy == RecoveryStrategyKind::self_repair);
  CHECK(!act.say.has_value());
  CHECK(act.physical_remedies.empty());
  CHECK(!act.note.empty());
}

TEST_CASE("tolerated disruptions must not reach the repair mapper") {
  auto s = make_state();
  auto loud = say_act(ActKind::inform, "client1", "agent");
  loud.volume = 8;
  auto inst = detect_one(s, Say{loud}, 2);
  REQUIRE(inst.status == RecoveryStatus::tolerated);
  CHECK_THROWS_AS(map_reactive(inst, default_pack(), s, 0), std::logic_error);
}

TEST_CASE("a repeated question copies the original's form") {
  auto s = make_state();
  auto ask = say_act(ActKind::ask, "agent", "client1");
  ask.question_form = QuestionForm::alternative;
  ask.alternatives = {"here", "to_go"};
  s = step_say(s, ask, 1);
  auto inst = detect_one(s, Move{"client2", {500, 400}}, 10);
  REQUIRE(inst.kind == DisruptionKind::F3_not_proceeding);

  auto act = map_reactive(inst, default_pack(), s, 0);
  CHECK(act.strategy == RecoveryStrategyKind::repeat_question);
  REQUIRE(act.say.has_value());
  CHECK(act.say->question_form == QuestionForm::alternative);
  CHECK(act.say->alternatives == std::vector<std::string>{"here", "to_go"});
  CHECK(act.say->addressees == std::vector<std::string>{"client1"});
}

TEST_CASE("redirecting the topic picks the first usable safe topic") {
  auto s = make_state();
  auto act = say_act(ActKind::inform, "client2", "client1");
  act.presupposed_tie = Tie::close;
  auto inst = detect_one(s, Say{act}, 2);
  EvidenceFlags neutral;
  neutral.third_party_neutral = true;
  inst = assess(inst, neutral);
  REQUIRE(inst.status == RecoveryStatus::recovery_optional);

  auto repair = map_reactive(inst, default_pack(), s, 0);
  CHECK(repair.strategy == RecoveryStrategyKind::change_topic);
  REQUIRE(repair.say.has_value());
  CHECK(repair.say->kind == ActKind::change_topic);
  CHECK(repair.say->topics == std::vector<std::string>{"busy_day"});
  CHECK(repair.say->surface == "I guess this is a busy day for you.");
}

TEST_CASE("nonverbal strategies stay nonverbal") {
  RecoveryGoal goal;
  goal.breaching_actor = "client1";
  goal.affected = {"agent"};
  auto s = make_state();
  auto act = realize_strategy(RecoveryStrategyKind::treat_as_irrelevant, goal,
                              s, default_pack(), 0, std::nullopt);
  CHECK(!act.say.has_value());
  CHECK(act.note == "tactful blindness");
}
