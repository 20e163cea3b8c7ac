#include "facework/session.hpp"

#include <algorithm>
#include <sstream>

#include "facework/errors.hpp"

namespace facework {

const char* to_string(Arch a) { return a == Arch::A ? "A" : "B"; }

std::string RunResult::transcript() const {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

namespace {

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += xs[i];
  }
  return out;
}

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string detect_line(const DisruptionInstance& inst) {
  std::ostringstream os;
  os << "detect kind=" << to_string(inst.kind);
  if (inst.sub_kind) os << " sub=" << to_string(*inst.sub_kind);
  os << " at=" << inst.at << " actor=" << inst.breaching_actor
     << " affected=" << join(inst.affected)
     << " status=" << to_string(inst.status)
     << " perceived=" << to_string(inst.intent.perceived)
     << " actual=" << to_string(inst.intent.actual) << " tag=" << inst.tag
     << " evidence=" << join_ints(inst.evidence);
  return os.str();
}

std::string expectation_text(const Expectation& e) {
  std::ostringstream os;
  if (const auto* d = std::get_if<ExpectDisruption>(&e)) {
    os << "disruption " << to_string(d->kind) << " at=" << d->at_ordinal;
    if (d->arch != ArchFilter::both)
      os << " arch=" << (d->arch == ArchFilter::A ? "A" : "B");
  } else if (const auto* r = std::get_if<ExpectRecovery>(&e)) {
    os << "recovery " << to_string(r->strategy) << " by=" << r->by;
    if (r->arch != ArchFilter::both)
      os << " arch=" << (r->arch == ArchFilter::A ? "A" : "B");
  } else if (const auto* nd = std::get_if<ExpectNoDisruption>(&e)) {
    os << "no_disruption " << nd->from_ordinal << ".." << nd->to_ordinal;
    if (nd->arch != ArchFilter::both)
      os << " arch=" << (nd->arch == ArchFilter::A ? "A" : "B");
  }
  return os.str();
}

// Urgent first; equal urgency in taxonomy row order; then detection order.
void sort_batch(std::vector<DisruptionInstance>& batch) {
  std::stable_sort(batch.begin(), batch.end(),
                   [](const DisruptionInstance& a, const DisruptionInstance& b) {
                     if (a.status != b.status)
                       return static_cast<int>(a.status) >
                              static_cast<int>(b.status);
                     return row_of(a.kind) < row_of(b.kind);
                   });
}

}  // namespace

InteractionState initial_session_state(const Scenario& sc,
                                       const CulturePack& pack) {
  auto occ = pack.occasions.find(sc.occasion);
  if (occ == pack.occasions.end())
    throw SchemaError("occasion",
                      "pack has no occasion named " + sc.occasion);
  InteractionState state;
  state.norms = occ->second;
  state.catalog = sc.catalog;
  state.cast = sc.cast;
  state.landmarks = sc.landmarks;
  state.objects = sc.objects;
  state.ties = sc.ties;
  for (const auto& p : sc.cast) state.present[p.id] = false;
  // the host is on duty from the start
  const std::string& agent = state.agent_id();
  state.present[agent] = true;
  state.positions[agent] = state.find(agent)->spawn;
  return state;
}

SessionEngine::SessionEngine(const Scenario& sc, const CulturePack& pack,
                             const SessionOptions& opt)
    : scenario_(sc), pack_(pack), opt_(opt) {
  cfg_.enhanced = opt.arch == Arch::B;
  cfg_.window = opt.window;
  state_ = initial_session_state(sc, pack);

  line("# transcript scenario=" + sc.id + " occasion=" + sc.occasion +
       " arch=" + to_string(opt.arch) + " window=" +
       std::to_string(cfg_.window) +
       (cfg_.enhanced ? " enhanced=1" : " enhanced=0"));
}

void SessionEngine::line(std::string text) {
  result_.lines.push_back(std::move(text));
}

std::vector<std::string> SessionEngine::step(const ScriptEvent& sev,
                                             int ordinal) {
  line_mark_ = result_.lines.size();

  Event ev;
  ev.index = state_.last_index + 1;
  ev.time = sev.time;
  ev.payload = sev.payload;
  ev.script_ordinal = ordinal;

  // Under planning, the agent's own scripted wording is softened when it
  // would land as an unsoftened dispreferred move.
  if (opt_.arch == Arch::B) {
    if (auto* say = std::get_if<Say>(&ev.payload)) {
      if (say->act.speaker == state_.agent_id()) {
        auto pr = preface_if_dispreferred(say->act, state_, pack_);
        if (pr.prefaced) {
          say->act = pr.act;
          line("note softened agent wording at ord=" +
               std::to_string(ordinal));
        }
      }
    }
  }

  result_.ordinal_to_index[ordinal] = ev.index;

  auto fresh = detect_all(state_, ev, cfg_);
  state_ = apply_event(state_, ev);
  result_.stream.push_back(ev);
  line("event " + std::to_string(ev.index) + " ord=" + std::to_string(ordinal) +
       " t=" + std::to_string(ev.time) + " | " +
       render_event_payload(ev.payload));

  resolve_pending(ev);

  std::vector<DisruptionInstance> batch;
  for (auto& inst : fresh) {
    if (inst.kind == DisruptionKind::S6_common_definition) {
      pending_s6_.push_back(std::move(inst));  // wait one event for reactions
      continue;
    }
    batch.push_back(assess(std::move(inst), {}));
  }
  sort_batch(batch);
  for (auto& inst : batch) route(std::move(inst));

  emission_phase(false);

  return {result_.lines.begin() + static_cast<long>(line_mark_),
          result_.lines.end()};
}

void SessionEngine::resolve_pending(const Event& current) {
  if (pending_s6_.empty()) return;
  EvidenceFlags flags;
  if (const auto* re = std::get_if<BystanderReaction>(&current.payload)) {
    if (re->tone == ReactionTone::mock) flags.third_party_mocks = true;
    else flags.third_party_neutral = true;
  }
  std::vector<DisruptionInstance> batch;
  for (auto& inst : pending_s6_) batch.push_back(assess(std::move(inst), flags));
  pending_s6_.clear();
  sort_batch(batch);
  for (auto& inst : batch) route(std::move(inst));
}

void SessionEngine::route(DisruptionInstance inst) {
  line(detect_line(inst));
  result_.detections.push_back(inst);

  if (inst.status == RecoveryStatus::tolerated) {
    line("note tolerated; no recovery");
    return;
  }
  // Someone rewording themselves already is the repair.
  if (inst.kind == DisruptionKind::S10_repairables &&
      inst.sub_kind == RepairableSubKind::speech_error &&
      inst.breaching_actor != state_.agent_id()) {
    EmissionRecord rec;
    rec.strategy = RecoveryStrategyKind::self_repair;
    rec.by = inst.breaching_actor;
    rec.for_kind = inst.kind;
    rec.for_at = inst.at;
    rec.null_act = true;
    rec.note = "speaker self-repaired";
    result_.emissions.push_back(rec);
    line("null strategy=self_repair by=" + inst.breaching_actor + " for=" +
         to_string(inst.kind) + "@" + std::to_string(inst.at) +
         " note=speaker self-repaired");
    return;
  }
  queue_.push_back(std::move(inst));
}

void SessionEngine::emission_phase(bool drain) {
  while (!queue_.empty()) {
    DisruptionInstance inst = queue_.front();
    queue_.erase(queue_.begin());

    if (opt_.arch == Arch::A) {
      CommunicativeAct act = map_reactive(inst, pack_, state_, emitted_says_);
      execute(act, inst);
      if (!drain) break;  // one repair per incoming event
      continue;
    }

    RecoveryGoal goal = map_strategy(inst, pack_, state_);
    Plan plan_result = plan(goal, state_, pack_);
    if (opt_.trace)
      for (const auto& r : plan_result.rationale) line("plan " + r);
    if (plan_result.unsatisfiable_must_form) {
      result_.unsatisfiable_must_form = true;
      line("plan UNSATISFIABLE must-form step has no harmless wording");
    }
    for (const auto& step : plan_result.steps) {
      if (step.skipped) {
        line("plan skipped " + std::string(to_string(step.act.strategy)) +
             ": " + step.note);
        continue;
      }
      execute(step.act, inst);
    }
  }
}

void SessionEngine::execute(const CommunicativeAct& act,
                            const DisruptionInstance& inst) {
  EmissionRecord rec;
  rec.strategy = act.strategy;
  rec.by = state_.agent_id();
  rec.for_kind = inst.kind;
  rec.for_at = inst.at;
  rec.note = act.note;

  std::string tail = std::string(" for=") + to_string(inst.kind) + "@" +
                     std::to_string(inst.at);

  if (!act.say && act.physical_remedies.empty()) {
    rec.null_act = true;
    result_.emissions.push_back(rec);
    line("null strategy=" + std::string(to_string(act.strategy)) +
         " by=" + rec.by + tail +
         (act.note.empty() ? "" : " note=" + act.note));
    return;
  }

  line("emit strategy=" + std::string(to_string(act.strategy)) +
       " by=" + rec.by + tail);
  if (act.say) {
    Event ev;
    ev.index = state_.last_index + 1;
    ev.time = state_.clock;
    ev.payload = Say{*act.say};
    ev.emitted = true;
    state_ = apply_event(state_, ev);
    result_.stream.push_back(ev);
    rec.event_indices.push_back(ev.index);
    ++emitted_says_;
    line("event " + std::to_string(ev.index) + " t=" + std::to_string(ev.time) +
         " emitted | " + render_event_payload(ev.payload));
  }
  for (const auto& remedy : act.physical_remedies) {
    Event ev;
    ev.index = state_.last_index + 1;
    ev.time = state_.clock;
    ev.payload = Remedy{state_.agent_id(), remedy};
    ev.emitted = true;
    state_ = apply_event(state_, ev);
    result_.stream.push_back(ev);
    rec.event_indices.push_back(ev.index);
    line("event " + std::to_string(ev.index) + " t=" + std::to_string(ev.time) +
         " emitted | " + render_event_payload(ev.payload));
  }
  result_.emissions.push_back(rec);
}

void SessionEngine::finalize() {
  Event nothing;  // resolves any reaction wait with no reaction seen
  nothing.index = state_.last_index + 1;
  nothing.time = state_.clock;
  resolve_pending(nothing);
  emission_phase(true);

  for (const auto& e : scenario_.expectations) {
    VerdictRecord v;
    v.description = expectation_text(e);

    ArchFilter filter = ArchFilter::both;
    if (const auto* d = std::get_if<ExpectDisruption>(&e)) filter = d->arch;
    else if (const auto* r = std::get_if<ExpectRecovery>(&e)) filter = r->arch;
    else if (const auto* nd = std::get_if<ExpectNoDisruption>(&e))
      filter = nd->arch;
    if (filter != ArchFilter::both &&
        filter != (opt_.arch == Arch::A ? ArchFilter::A : ArchFilter::B)) {
      v.applicable = false;
      result_.verdicts.push_back(v);
      line("verdict expect " + v.description + " -> skip (other arch)");
      continue;
    }

    if (const auto* d = std::get_if<ExpectDisruption>(&e)) {
      int idx = result_.ordinal_to_index.at(d->at_ordinal);
      v.passed = false;
      for (const auto& inst : result_.detections)
        if (inst.kind == d->kind && inst.at == idx) v.passed = true;
    } else if (const auto* r = std::get_if<ExpectRecovery>(&e)) {
      v.passed = false;
      for (const auto& rec : result_.emissions)
        if (rec.strategy == r->strategy && rec.by == r->by) v.passed = true;
    } else if (const auto* nd = std::get_if<ExpectNoDisruption>(&e)) {
      int from = result_.ordinal_to_index.at(nd->from_ordinal);
      int to = result_.ordinal_to_index.at(nd->to_ordinal);
      v.passed = true;
      for (const auto& inst : result_.detections)
        if (inst.at >= from && inst.at <= to) v.passed = false;
    }
    result_.verdicts.push_back(v);
    line("verdict expect " + v.description + " -> " +
         (v.passed ? "pass" : "FAIL"));
    if (!v.passed) result_.passed = false;
  }

  line(std::string("result ") + (result_.passed ? "PASS" : "FAIL") +
       " scenario=" + scenario_.id + " arch=" + to_string(opt_.arch));
}

RunResult run_session(const Scenario& sc, const CulturePack& pack,
                      const SessionOptions& opt) {
  SessionEngine engine(sc, pack, opt);
  int ordinal = 0;
  for (const auto& ev : sc.events) engine.step(ev, ordinal++);
  engine.finalize();
  return engine.result();
}

}  // namespace facework
