#include "facework/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "facework/errors.hpp"

using namespace facework;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmall = R"(scenario demo
occasion casual_bar
pack generic

landmark counter 0 0
object mug1 kind=mug at=1.0,0.2
participant agent role=agent at=0,0.8
participant client1 role=client at=3,3
participant client2 role=client with=client1 at=3.4,3
tie client1 client2 close

item espresso price=1.10 compat=caffe_macchiato
item caffe_macchiato price=1.30

event t=0 enter client1
event t=1 say client1 -> agent act=ask qform=alt(espresso, caffe_macchiato) vol=6 topics=[busy_day] "Which one?"
event t=2 say agent -> client1 act=answer item=espresso
event t=3 move client1 0.4 0.5
event t=4 noise level=8 span=5..5
event t=5 say client1 -> agent act=request item=espresso
event t=6 physical agent spill mug1
event t=7 queue client2
event t=8 react client2 mock
event t=9 pay client1 amount=1.10
event t=10 remedy agent clean_counter
event t=11 depart client1

expect disruption S10 at=5
expect recovery request_repeat by=agent arch=B
expect no_disruption 0..3 arch=A
)";

}  // namespace

TEST_CASE("the reference scripts survive a parse/serialize round trip") {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const char* dir : {"golden", "extra"})
    for (const auto& e :
         fs::directory_iterator(fs::path(FACEWORK_FIXTURE_DIR) / dir))
      if (e.path().extension() == ".scn") files.push_back(e.path());
  REQUIRE(files.size() >= 18);

  for (const auto& f : files) {
    CAPTURE(f.string());
    auto first = serialize_scenario(parse_scenario(slurp(f)));
    auto second = serialize_scenario(parse_scenario(first));
    CHECK(first == second);
  }
}

TEST_CASE("every statement form lands in the right structure") {
  auto sc = parse_scenario(kSmall);
  CHECK(sc.id == "demo");
  CHECK(sc.occasion == "casual_bar");
  CHECK(sc.pack_id == "generic");
  CHECK(sc.landmarks.at("counter") == Vec2{0, 0});
  REQUIRE(sc.objects.size() == 1);
  CHECK(sc.objects[0].category == "mug");
  CHECK(sc.objects[0].at == Vec2{100, 20});
  REQUIRE(sc.cast.size() == 3);
  CHECK(sc.cast[0].role == Role::agent);
  CHECK(sc.cast[2].with_group == std::optional<std::string>("client1"));
  CHECK(sc.ties.at({"client1", "client2"}) == Tie::close);
  CHECK(sc.catalog.prices.at("espresso") == 110);
  CHECK(sc.catalog.compatible.count({"caffe_macchiato", "espresso"}) == 1);

  REQUIRE(sc.events.size() == 12);
  CHECK(sc.events[0].time == 0);
  const auto& ask = std::get<Say>(sc.events[1].payload).act;
  CHECK(ask.kind == ActKind::ask);
  CHECK(ask.question_form == QuestionForm::alternative);
  CHECK(ask.alternatives ==
        std::vector<std::string>{"espresso", "caffe_macchiato"});
  CHECK(ask.volume == 6);
  CHECK(ask.topics == std::vector<std::string>{"busy_day"});
  CHECK(ask.surface == "Which one?");
  CHECK(std::get<Move>(sc.events[3].payload).to == Vec2{40, 50});
  const auto& noise = std::get<Noise>(sc.events[4].payload);
  CHECK(noise.level == 8);
  CHECK(noise.span_from == 5);
  CHECK(noise.span_to == 5);
  CHECK(std::get<Physical>(sc.events[6].payload).mishap == Mishap::spill);
  CHECK(std::get<QueueJoin>(sc.events[7].payload).participant == "client2");
  CHECK(std::get<BystanderReaction>(sc.events[8].payload).tone ==
        ReactionTone::mock);
  CHECK(std::get<Pay>(sc.events[9].payload).amount == 110);
  CHECK(std::get<Remedy>(sc.events[10].payload).action == "clean_counter");
  CHECK(std::holds_alternative<Depart>(sc.events[11].payload));

  REQUIRE(sc.expectations.size() == 3);
  const auto& d = std::get<ExpectDisruption>(sc.expectations[0]);
  CHECK(d.kind == DisruptionKind::S10_repairables);
  CHECK(d.at_ordinal == 5);
  CHECK(d.arch == ArchFilter::both);
  const auto& r = std::get<ExpectRecovery>(sc.expectations[1]);
  CHECK(r.strategy == RecoveryStrategyKind::request_repeat);
  CHECK(r.by == "agent");
  CHECK(r.arch == ArchFilter::B);
  const auto& n = std::get<ExpectNoDisruption>(sc.expectations[2]);
  CHECK(n.from_ordinal == 0);
  CHECK(n.to_ordinal == 3);
  CHECK(n.arch == ArchFilter::A);
}

TEST_CASE("the canonical form is a serialization fixpoint") {
  auto sc = parse_scenario(kSmall);
  auto canon = serialize_scenario(sc);
  CHECK(serialize_scenario(parse_scenario(canon)) == canon);
}

namespace {

std::string patched(const std::string& needle, const std::string& repl) {
  std::string text = kSmall;
  auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, needle.size(), repl);
  return text;
}

}  // namespace

TEST_CASE("script rules are enforced after parsing") {
  CHECK_THROWS_AS(parse_scenario(patched("occasion casual_bar\n", "")),
                  SchemaError);
  CHECK_THROWS_AS(parse_scenario(patched("landmark counter", "landmark bar")),
                  SchemaError);
  CHECK_THROWS_AS(
      parse_scenario(patched("client2 role=client", "client2 role=agent")),
      SchemaError);
  CHECK_THROWS_AS(parse_scenario(patched("event t=3 move", "event t=1 move")),
                  SchemaError);
  CHECK_THROWS_AS(parse_scenario(patched("act=ask qform=alt(espresso, "
                                         "caffe_macchiato)",
                                         "act=ask")),
                  SchemaError);
  CHECK_THROWS_AS(
      parse_scenario(patched("act=answer item=espresso", "act=answer")),
      SchemaError);
  CHECK_THROWS_AS(parse_scenario(patched("vol=6", "vol=11")), SchemaError);
  CHECK_THROWS_AS(parse_scenario(patched("span=5..5", "span=5..40")),
                  SchemaError);
  CHECK_THROWS_AS(parse_scenario(patched("disruption S10 at=5",
                                         "disruption S10 at=99")),
                  SchemaError);
  CHECK_THROWS_AS(parse_scenario(patched("tie client1 client2 close",
                                         "tie client1 client2 chums")),
                  SchemaError);
  CHECK_THROWS_AS(parse_scenario("scenario x\noccasion y\nevent t=0\n"),
                  ParseError);
}

TEST_CASE("single script statements parse against an existing header") {
  auto sc = parse_scenario(kSmall);

  auto ev = parse_script_event(
      "event t=20 say client1 -> agent act=request item=espresso", sc);
  CHECK(ev.time == 20);
  const auto& act = std::get<Say>(ev.payload).act;
  CHECK(act.kind == ActKind::request);
  CHECK(act.item == std::optional<std::string>("espresso"));

  auto mv = parse_script_event("event t=21 move client2 1.0 0.6", sc);
  CHECK(std::get<Move>(mv.payload).to == Vec2{100, 60});

  CHECK_THROWS_AS(parse_script_event("say client1 -> agent act=greet", sc),
                  ParseError);
  CHECK_THROWS_AS(parse_script_event("event t=5 juggle client1", sc),
                  SchemaError);
  CHECK_THROWS_AS(
      parse_script_event("event t=5 say ghost -> agent act=greet", sc),
      SchemaError);
}
