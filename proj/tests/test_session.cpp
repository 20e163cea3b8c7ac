#include "facework/session.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"

using namespace facework;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario fixture_scenario(const std::string& rel) {
  return parse_scenario(
      slurp(std::filesystem::path(FACEWORK_FIXTURE_DIR) / rel));
}

CulturePack warm_pack() {
  auto pack = parse_culture_pack(
      slurp(std::filesystem::path(FACEWORK_FIXTURE_DIR) / "packs/warm.pack"));
  REQUIRE(validate_pack(pack).empty());
  return pack;
}

std::vector<std::string> detect_lines(const RunResult& res) {
  std::vector<std::string> out;
  for (const auto& l : res.lines)
    if (l.rfind("detect ", 0) == 0) out.push_back(l);
  return out;
}

std::vector<std::filesystem::path> all_fixture_scripts() {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const char* dir : {"golden", "extra"})
    for (const auto& e :
         fs::directory_iterator(fs::path(FACEWORK_FIXTURE_DIR) / dir))
      if (e.path().extension() == ".scn") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST_CASE("every reference script meets its expectations under both modes") {
  for (const auto& f : all_fixture_scripts()) {
    CAPTURE(f.string());
    auto sc = parse_scenario(slurp(f));
    for (Arch arch : {Arch::A, Arch::B}) {
      CAPTURE(to_string(arch));
      SessionOptions opt;
      opt.arch = arch;
      auto res = run_session(sc, default_pack(), opt);
      CHECK(res.passed);
      REQUIRE(!res.lines.empty());
      CHECK(res.lines.front().rfind("# transcript scenario=" + sc.id, 0) == 0);
      CHECK(res.lines.back().rfind("result PASS", 0) == 0);
    }
  }
}

TEST_CASE("repeated runs produce byte-identical transcripts") {
  for (const char* rel : {"golden/f1_order_change.scn",
                          "extra/membrane_topic_change.scn",
                          "extra/prevention_preface.scn"}) {
    CAPTURE(rel);
    auto sc = fixture_scenario(rel);
    for (Arch arch : {Arch::A, Arch::B}) {
      SessionOptions opt;
      opt.arch = arch;
      auto a = run_session(sc, default_pack(), opt);
      auto b = run_session(sc, default_pack(), opt);
      CHECK(a.transcript() == b.transcript());
    }
  }
}

TEST_CASE("swapping wording-only packs never changes what is detected") {
  auto warm = warm_pack();
  for (const char* rel :
       {"golden/f1_order_change.scn", "golden/s10_noise_masked.scn",
        "golden/s12_dispreferred.scn", "extra/sugar_misunderstanding.scn"}) {
    CAPTURE(rel);
    auto sc = fixture_scenario(rel);
    for (Arch arch : {Arch::A, Arch::B}) {
      CAPTURE(to_string(arch));
      SessionOptions opt;
      opt.arch = arch;
      auto generic = run_session(sc, default_pack(), opt);
      auto swapped = run_session(sc, warm, opt);
      CHECK(detect_lines(generic) == detect_lines(swapped));
      CHECK(generic.passed);
      CHECK(swapped.passed);
    }
  }
}

TEST_CASE("the planning mode avoids topics the gaffe touched") {
  auto sc = fixture_scenario("extra/membrane_topic_change.scn");
  SessionOptions opt;
  opt.arch = Arch::B;
  auto res = run_session(sc, default_pack(), opt);
  CHECK(res.passed);
  auto t = res.transcript();
  CHECK(t.find("They say it will stay above 30C for another couple of days.") !=
        std::string::npos);
  CHECK(t.find("I guess this is a busy day for you.") == std::string::npos);
}

TEST_CASE("the first wording stays first when it causes no trouble") {
  auto sc = fixture_scenario("extra/sugar_misunderstanding.scn");
  SessionOptions opt;
  opt.arch = Arch::B;
  auto res = run_session(sc, default_pack(), opt);
  CHECK(res.passed);
  bool found = false;
  for (const auto& e : res.emissions)
    if (e.strategy == RecoveryStrategyKind::signal_misunderstanding)
      found = true;
  CHECK(found);
  CHECK(res.transcript().find("Do you prefer brown sugar then?") !=
        std::string::npos);
}

TEST_CASE("planning softens the agent's scripted refusal") {
  auto sc = fixture_scenario("extra/prevention_preface.scn");

  SessionOptions reactive;
  reactive.arch = Arch::A;
  auto a = run_session(sc, default_pack(), reactive);
  CHECK(a.passed);
  bool saw_s12 = false;
  for (const auto& d : a.detections)
    if (d.kind == DisruptionKind::S12_dispreferred_act) saw_s12 = true;
  CHECK(saw_s12);

  SessionOptions planning;
  planning.arch = Arch::B;
  auto b = run_session(sc, default_pack(), planning);
  CHECK(b.passed);
  for (const auto& d : b.detections)
    CHECK(d.kind != DisruptionKind::S12_dispreferred_act);
  CHECK(b.transcript().find("note softened agent wording at ord=3") !=
        std::string::npos);
}

TEST_CASE("a reactive window miss becomes a hit with a wider window") {
  auto sc = fixture_scenario("extra/long_gap_order_change.scn");

  SessionOptions narrow;
  narrow.arch = Arch::A;
  auto missed = run_session(sc, default_pack(), narrow);
  CHECK(missed.passed);  // the script expects the miss under A
  CHECK(detect_lines(missed).empty());

  SessionOptions wide;
  wide.arch = Arch::A;
  wide.window = 20;
  auto hit = run_session(sc, default_pack(), wide);
  REQUIRE(!detect_lines(hit).empty());
  CHECK(detect_lines(hit)[0].find("kind=F1") != std::string::npos);

  SessionOptions planning;
  planning.arch = Arch::B;
  auto always = run_session(sc, default_pack(), planning);
  CHECK(always.passed);
  REQUIRE(!detect_lines(always).empty());
  CHECK(detect_lines(always)[0] == detect_lines(hit)[0]);
}

TEST_CASE("expectations bound to the other mode are skipped, not failed") {
  auto sc = fixture_scenario("extra/long_gap_order_change.scn");
  SessionOptions opt;
  opt.arch = Arch::A;
  auto res = run_session(sc, default_pack(), opt);
  CHECK(res.passed);
  bool skipped = false;
  for (const auto& v : res.verdicts)
    if (!v.applicable) skipped = true;
  CHECK(skipped);
  CHECK(res.transcript().find("skip (other arch)") != std::string::npos);
}

TEST_CASE("trace mode only adds planner rationale lines") {
  auto sc = fixture_scenario("golden/f1_order_change.scn");
  SessionOptions quiet;
  quiet.arch = Arch::B;
  auto plain = run_session(sc, default_pack(), quiet);
  SessionOptions chatty = quiet;
  chatty.trace = true;
  auto traced = run_session(sc, default_pack(), chatty);

  std::vector<std::string> extra;
  for (const auto& l : traced.lines)
    if (l.rfind("plan ", 0) == 0) extra.push_back(l);
  CHECK(!extra.empty());

  auto strip = [](const RunResult& r) {
    std::vector<std::string> out;
    for (const auto& l : r.lines)
      if (l.rfind("plan ", 0) != 0) out.push_back(l);
    return out;
  };
  CHECK(strip(traced) == strip(plain));
  CHECK(detect_lines(traced) == detect_lines(plain));
}

TEST_CASE("emitted events carry no ordinal and extend the stream in order") {
  auto sc = fixture_scenario("golden/f5_spill.scn");
  SessionOptions opt;
  opt.arch = Arch::B;
  auto res = run_session(sc, default_pack(), opt);
  CHECK(res.passed);
  REQUIRE(res.stream.size() > sc.events.size());
  int expected_index = 0;
  int emitted = 0;
  for (const auto& ev : res.stream) {
    CHECK(ev.index == expected_index++);
    if (ev.emitted) {
      ++emitted;
      CHECK(!ev.script_ordinal.has_value());
    }
  }
  CHECK(emitted == static_cast<int>(res.stream.size() - sc.events.size()));
  for (const auto& [ord, idx] : res.ordinal_to_index) {
    REQUIRE(idx >= 0);
    REQUIRE(idx < static_cast<int>(res.stream.size()));
    CHECK(res.stream[static_cast<size_t>(idx)].script_ordinal ==
          std::optional<int>(ord));
  }
}
