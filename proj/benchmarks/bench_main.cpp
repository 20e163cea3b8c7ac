// Hot paths: one detection pass, one planned repair, a whole scripted run.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "facework/planning.hpp"
#include "facework/session.hpp"

using namespace facework;

namespace {

Scenario load(const char* rel) {
  std::ifstream in(std::filesystem::path(FACEWORK_FIXTURE_DIR) / rel);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

InteractionState busy_state() {
  Scenario sc = load("golden/f1_order_change.scn");
  InteractionState s = initial_session_state(sc, default_pack());
  for (const auto& p : sc.cast) {
    s.present[p.id] = true;
    s.positions[p.id] = p.spawn;
  }
  DialogueAct req;
  req.kind = ActKind::request;
  req.speaker = "client1";
  req.addressees = {"agent"};
  req.item = "latte";
  Event ev;
  ev.index = 1;
  ev.time = 1;
  ev.payload = Say{req};
  s = apply_event(s, ev);
  DialogueAct acc;
  acc.kind = ActKind::accept;
  acc.speaker = "agent";
  acc.addressees = {"client1"};
  Event ev2;
  ev2.index = 2;
  ev2.time = 2;
  ev2.payload = Say{acc};
  return apply_event(s, ev2);
}

void bench_detect_step(benchmark::State& state) {
  InteractionState s = busy_state();
  DialogueAct change;
  change.kind = ActKind::request;
  change.speaker = "client1";
  change.addressees = {"agent"};
  change.item = "water";
  Event ev;
  ev.index = s.last_index + 1;
  ev.time = 4;
  ev.payload = Say{change};
  DetectionConfig cfg;
  cfg.enhanced = true;
  for (auto _ : state) {
    auto found = detect_all(s, ev, cfg);
    benchmark::DoNotOptimize(found);
  }
}
BENCHMARK(bench_detect_step);

void bench_plan_repair(benchmark::State& state) {
  InteractionState s = busy_state();
  DialogueAct change;
  change.kind = ActKind::request;
  change.speaker = "client1";
  change.addressees = {"agent"};
  change.item = "water";
  Event ev;
  ev.index = s.last_index + 1;
  ev.time = 4;
  ev.payload = Say{change};
  DetectionConfig cfg;
  cfg.enhanced = true;
  auto found = detect_all(s, ev, cfg);
  auto inst = assess(found.at(0), {});
  auto goal = map_strategy(inst, default_pack(), s);
  for (auto _ : state) {
    auto p = plan(goal, s, default_pack());
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(bench_plan_repair);

void bench_full_session(benchmark::State& state) {
  Scenario sc = load("extra/membrane_topic_change.scn");
  SessionOptions opt;
  opt.arch = Arch::B;
  for (auto _ : state) {
    auto res = run_session(sc, default_pack(), opt);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(bench_full_session);

}  // namespace

BENCHMARK_MAIN();
