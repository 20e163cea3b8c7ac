#include "facework/culture.hpp"

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "facework/errors.hpp"

using namespace facework;

namespace {

std::string fixture(const std::string& rel) {
  std::ifstream in(std::string(FACEWORK_FIXTURE_DIR) + "/" + rel,
                   std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("the built-in pack parses, validates, and matches its fixture") {
  const CulturePack& pack = default_pack();
  CHECK(pack.id == "generic");
  REQUIRE(pack.occasions.count("casual_bar"));
  const auto& norms = pack.occasions.at("casual_bar");
  CHECK(norms.proxemic_violation_cm == 50);
  CHECK(norms.volume_max == 7);
  CHECK(norms.audibility_threshold == 6);
  CHECK(norms.queue_policy == "fifo");
  CHECK(norms.timeout_order_start_s == 20);
  CHECK(norms.timeout_answer_s == 6);
  CHECK(norms.turn_hold_max_s == 45);
  CHECK(norms.membrane.count("salary") == 1);
  CHECK(norms.safe_topics ==
        std::vector<std::string>{"busy_day", "weather", "sports"});

  for (const auto& d : validate_pack(pack))
    CHECK(d.severity != Severity::error);

  CHECK(fixture("packs/generic.pack") == default_pack_text());
}

TEST_CASE("the warm pack differs from generic only in wording") {
  CulturePack warm = parse_culture_pack(fixture("packs/warm.pack"));
  CHECK(warm.id == "warm");
  const CulturePack& generic = default_pack();
  CHECK(warm.occasions.at("casual_bar").membrane ==
        generic.occasions.at("casual_bar").membrane);
  OccasionNorms a = warm.occasions.at("casual_bar");
  OccasionNorms b = generic.occasions.at("casual_bar");
  CHECK(a == b);
  CHECK(warm.strategy_overrides.size() == generic.strategy_overrides.size());
  CHECK(warm.templates.size() == generic.templates.size());
  CHECK(warm.templates.at(RecoveryStrategyKind::minimize) !=
        generic.templates.at(RecoveryStrategyKind::minimize));
  for (const auto& d : validate_pack(warm))
    CHECK(d.severity != Severity::error);
}

TEST_CASE("templates cycle deterministically through their wordings") {
  const CulturePack& pack = default_pack();
  auto first = render_template(pack, RecoveryStrategyKind::minimize, {}, 0);
  auto second = render_template(pack, RecoveryStrategyKind::minimize, {}, 1);
  auto wrapped = render_template(pack, RecoveryStrategyKind::minimize, {}, 2);
  CHECK(first == "Never mind, it is not a problem.");
  CHECK(second == "Don't worry. There are days like that.");
  CHECK(wrapped == first);
  CHECK(render_template(pack, RecoveryStrategyKind::minimize, {}, -1) ==
        second);
}

TEST_CASE("missing wordings throw rather than guess") {
  CulturePack tiny = parse_culture_pack(
      "culture \"tiny\"\n"
      "occasion casual_bar {\n"
      "  membrane = [politics]\n"
      "  proxemic_violation_m = 0.5\n"
      "  volume_max = 7\n"
      "  audibility_threshold = 6\n"
      "  queue_policy = fifo\n"
      "  timeout_order_start_s = 20\n"
      "  timeout_answer_s = 6\n"
      "  turn_hold_max_s = 45\n"
      "  safe_topics = [weather]\n"
      "}\n"
      "template minimize = [\"No matter.\"]\n");
  CHECK_THROWS_AS(
      render_template(tiny, RecoveryStrategyKind::apologize, {}, 0),
      NoTemplate);
  CHECK(!render_topic_opener(tiny, "weather", 0).has_value());
}

TEST_CASE("slot substitution fills and complains precisely") {
  CulturePack pack = parse_culture_pack(
      "culture \"slots\"\n"
      "occasion casual_bar {\n"
      "  membrane = [politics]\n"
      "  proxemic_violation_m = 0.5\n"
      "  volume_max = 7\n"
      "  audibility_threshold = 6\n"
      "  queue_policy = fifo\n"
      "  timeout_order_start_s = 20\n"
      "  timeout_answer_s = 6\n"
      "  turn_hold_max_s = 45\n"
      "  safe_topics = [weather]\n"
      "}\n"
      "template offer_compensation = [\"A better price on the {item}.\"]\n");
  std::map<std::string, std::string> slots{{"item", "latte"}};
  CHECK(render_template(pack, RecoveryStrategyKind::offer_compensation, slots,
                        0) == "A better price on the latte.");
  CHECK_THROWS_AS(render_template(pack, RecoveryStrategyKind::offer_compensation,
                                  {}, 0),
                  MissingSlot);
}

TEST_CASE("overrides replace the default chain for the stated side") {
  const CulturePack& pack = default_pack();
  auto other = resolved_chain(pack, DisruptionKind::F1_order_change, false,
                              Intent::unintended, std::nullopt);
  REQUIRE(other.steps.size() == 2);
  CHECK(other.steps[0] == RecoveryStrategyKind::minimize);
  CHECK(other.steps[1] == RecoveryStrategyKind::change_topic);
  auto self = resolved_chain(pack, DisruptionKind::F1_order_change, true,
                             Intent::unintended, std::nullopt);
  CHECK(self.steps ==
        std::vector<RecoveryStrategyKind>{
            RecoveryStrategyKind::offer_compensation});
  auto s6 = resolved_chain(pack, DisruptionKind::S6_common_definition, false,
                           Intent::unintended, std::nullopt);
  CHECK(s6.steps ==
        std::vector<RecoveryStrategyKind>{RecoveryStrategyKind::change_topic});
}

TEST_CASE("pack serialization is a fixpoint") {
  const CulturePack& pack = default_pack();
  std::string once = serialize_pack(pack);
  CulturePack back = parse_culture_pack(once);
  std::string twice = serialize_pack(back);
  CHECK(once == twice);
  CHECK(back.id == pack.id);
  CHECK(back.occasions.at("casual_bar") == pack.occasions.at("casual_bar"));
  CHECK(back.templates == pack.templates);
  CHECK(back.topic_openers == pack.topic_openers);

  CulturePack warm = parse_culture_pack(fixture("packs/warm.pack"));
  std::string w1 = serialize_pack(warm);
  std::string w2 = serialize_pack(parse_culture_pack(w1));
  CHECK(w1 == w2);
}

TEST_CASE("schema violations are rejected with the offending key") {
  SUBCASE("unknown occasion key") {
    CHECK_THROWS_AS(parse_culture_pack("culture \"x\"\n"
                                       "occasion casual_bar {\n"
                                       "  membrane = []\n"
                                       "  shoe_size = 44\n"
                                       "}\n"),
                    SchemaError);
  }
  SUBCASE("membrane and safe topics must not overlap") {
    CHECK_THROWS_AS(parse_culture_pack(
                        "culture \"x\"\n"
                        "occasion casual_bar {\n"
                        "  membrane = [weather]\n"
                        "  proxemic_violation_m = 0.5\n"
                        "  volume_max = 7\n"
                        "  audibility_threshold = 6\n"
                        "  queue_policy = fifo\n"
                        "  timeout_order_start_s = 20\n"
                        "  timeout_answer_s = 6\n"
                        "  turn_hold_max_s = 45\n"
                        "  safe_topics = [weather]\n"
                        "}\n"),
                    SchemaError);
  }
  SUBCASE("unknown strategy id in an override") {
    CHECK_THROWS_AS(parse_culture_pack("culture \"x\"\n"
                                       "strategy F1.other -> [levitate]\n"),
                    SchemaError);
  }
  SUBCASE("structurally broken text is a parse error") {
    CHECK_THROWS_AS(parse_culture_pack("culture \"x\n"), ParseError);
  }
}

TEST_CASE("validation flags reachable strategies without wording") {
  CulturePack pack = parse_culture_pack(
      "culture \"gappy\"\n"
      "occasion casual_bar {\n"
      "  membrane = [politics]\n"
      "  proxemic_violation_m = 0.5\n"
      "  volume_max = 7\n"
      "  audibility_threshold = 6\n"
      "  queue_policy = fifo\n"
      "  timeout_order_start_s = 20\n"
      "  timeout_answer_s = 6\n"
      "  turn_hold_max_s = 45\n"
      "  safe_topics = [weather]\n"
      "}\n"
      "template minimize = [\"No matter.\"]\n");
  auto diags = validate_pack(pack);
  bool flagged = false;
  for (const auto& d : diags)
    if (d.message.find("apologize") != std::string::npos) flagged = true;
  CHECK(flagged);
}
