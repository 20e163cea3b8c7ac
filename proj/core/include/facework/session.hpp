#pragma once
// Driving a scripted encounter through detection and recovery, producing a
// deterministic transcript plus structured records for checking.

#include <map>
#include <string>
#include <vector>

#include "facework/culture.hpp"
#include "facework/detection.hpp"
#include "facework/planning.hpp"
#include "facework/recovery.hpp"
#include "facework/scenario.hpp"

namespace facework {

// A: react to each disruption with the first strategy of its chain, one act
// per incoming event, no lookahead, bounded change window.
// B: plan every queued repair with lookahead over the full history.
enum class Arch { A, B };
const char* to_string(Arch a);

struct SessionOptions {
  Arch arch = Arch::A;
  int window = 8;     // order-change lookback for A
  bool trace = false;  // extra note lines about internal decisions
};

struct EmissionRecord {
  RecoveryStrategyKind strategy = RecoveryStrategyKind::minimize;
  std::string by;           // who performed the repair
  DisruptionKind for_kind = DisruptionKind::F1_order_change;
  int for_at = 0;           // event index of the repaired disruption
  bool null_act = false;    // deliberate silence / observed reciprocation
  std::vector<int> event_indices;
  std::string note;
};

struct VerdictRecord {
  std::string description;
  bool applicable = true;  // false when limited to the other architecture
  bool passed = true;
};

struct RunResult {
  std::vector<std::string> lines;  // the transcript, in order
  std::vector<DisruptionInstance> detections;
  std::vector<EmissionRecord> emissions;
  std::vector<Event> stream;  // scripted + emitted, final order
  std::map<int, int> ordinal_to_index;
  std::vector<VerdictRecord> verdicts;
  bool unsatisfiable_must_form = false;
  bool passed = true;

  std::string transcript() const;  // lines joined, trailing newline
};

// Where a session starts before any scripted event: the stage as declared,
// only the host present.  Throws SchemaError when the pack lacks the
// scenario's occasion.
InteractionState initial_session_state(const Scenario& sc,
                                       const CulturePack& pack);

// Incremental engine (used by the script runner and the interactive shell).
class SessionEngine {
 public:
  SessionEngine(const Scenario& sc, const CulturePack& pack,
                const SessionOptions& opt);

  // Feed the next scripted event; returns transcript lines it produced.
  std::vector<std::string> step(const ScriptEvent& ev, int ordinal);
  // Resolve what is still pending and evaluate expectations.
  void finalize();

  const InteractionState& state() const { return state_; }
  const RunResult& result() const { return result_; }
  void set_trace(bool on) { opt_.trace = on; }

 private:
  void resolve_pending(const Event& current);
  void route(DisruptionInstance inst);
  void emission_phase(bool drain);
  void execute(const CommunicativeAct& act, const DisruptionInstance& inst);
  void line(std::string text);

  const Scenario& scenario_;
  const CulturePack& pack_;
  SessionOptions opt_;
  DetectionConfig cfg_;
  InteractionState state_;
  RunResult result_;
  std::vector<DisruptionInstance> pending_s6_;
  std::vector<DisruptionInstance> queue_;
  long long emitted_says_ = 0;
  size_t line_mark_ = 0;
};

RunResult run_session(const Scenario& sc, const CulturePack& pack,
                      const SessionOptions& opt);

}  // namespace facework
