#include "facework/planning.hpp"

#include <algorithm>

#include "facework/errors.hpp"

namespace facework {

namespace {

Event hypothetical(const InteractionState& state, const DialogueAct& act) {
  Event ev;
  ev.index = state.last_index + 1;
  ev.time = state.clock;  // same instant: timeouts are never the act's fault
  ev.payload = Say{act};
  ev.emitted = true;
  return ev;
}

struct Candidate {
  CommunicativeAct act;
  int gen_index = 0;
};

// Templates in list order; safe topics in declared order.  Wording gaps just
// drop the candidate (validation reports them separately).
std::vector<Candidate> candidates_for(RecoveryStrategyKind strategy,
                                      const RecoveryGoal& goal,
                                      const InteractionState& state,
                                      const CulturePack& pack) {
  std::vector<Candidate> out;
  if (strategy_is_nonverbal(strategy)) {
    try {
      out.push_back({realize_strategy(strategy, goal, state, pack, 0,
                                      std::nullopt),
                     0});
    } catch (const NoTemplate&) {
    }
    return out;
  }
  if (strategy == RecoveryStrategyKind::change_topic) {
    int gen = 0;
    for (const auto& topic :
         topic_candidates(pack, state.norms, goal.avoid_topics)) {
      try {
        out.push_back(
            {realize_strategy(strategy, goal, state, pack, 0, topic), gen});
      } catch (const NoTemplate&) {
      }
      ++gen;
    }
    return out;
  }
  auto tmpl = pack.templates.find(strategy);
  size_t n = tmpl == pack.templates.end() ? 0 : tmpl->second.size();
  for (size_t i = 0; i < n; ++i) {
    try {
      out.push_back({realize_strategy(strategy, goal, state, pack,
                                      static_cast<long long>(i), std::nullopt),
                     static_cast<int>(i)});
    } catch (const NoTemplate&) {
    } catch (const MissingSlot&) {
    }
  }
  return out;
}

ForecastCost cost_of(const InteractionState& state, const CommunicativeAct& act) {
  if (!act.say) return {};
  return forecast(state, *act.say);
}

bool cheaper(const ForecastCost& a, int ai, const ForecastCost& b, int bi) {
  if (a.necessary != b.necessary) return a.necessary < b.necessary;
  if (a.optional_ != b.optional_) return a.optional_ < b.optional_;
  return ai < bi;
}

InteractionState apply_act(const InteractionState& state,
                           const CommunicativeAct& act) {
  InteractionState next = state;
  if (act.say) next = apply_event(next, hypothetical(next, *act.say));
  for (const auto& remedy : act.physical_remedies) {
    Event ev;
    ev.index = next.last_index + 1;
    ev.time = next.clock;
    ev.payload = Remedy{next.agent_id(), remedy};
    ev.emitted = true;
    next = apply_event(next, ev);
  }
  return next;
}

std::string describe(RecoveryStrategyKind s, const ForecastCost& c, int gen) {
  return std::string(to_string(s)) + " pick=" + std::to_string(gen) +
         " cost=" + std::to_string(c.necessary) + "/" +
         std::to_string(c.optional_);
}

}  // namespace

std::vector<DisruptionInstance> forecast_instances(const InteractionState& state,
                                                   const DialogueAct& act) {
  DetectionConfig cfg;
  cfg.enhanced = true;
  std::vector<DisruptionInstance> out;
  for (auto& inst : detect_all(state, hypothetical(state, act), cfg))
    out.push_back(assess(std::move(inst), {}));
  return out;
}

ForecastCost forecast(const InteractionState& state, const DialogueAct& act) {
  ForecastCost cost;
  for (const auto& inst : forecast_instances(state, act)) {
    if (inst.status == RecoveryStatus::recovery_necessary) ++cost.necessary;
    if (inst.status == RecoveryStatus::recovery_optional) ++cost.optional_;
  }
  return cost;
}

Plan plan(const RecoveryGoal& goal, const InteractionState& state,
          const CulturePack& pack) {
  Plan out;
  InteractionState hyp = state;

  auto eval = [&](const std::vector<Candidate>& cands,
                  std::vector<ForecastCost>& costs) -> std::optional<size_t> {
    costs.clear();
    for (const auto& c : cands) costs.push_back(cost_of(hyp, c.act));
    for (size_t i = 0; i < cands.size(); ++i)
      if (costs[i].clean()) return i;
    return std::nullopt;
  };

  if (goal.chain.mode == ChainMode::alternatives) {
    // Preference list: first alternative that causes nothing new wins.
    std::optional<Candidate> best;
    ForecastCost best_cost;
    int best_rank = 0;
    int rank = 0;
    for (RecoveryStrategyKind s : goal.chain.steps) {
      auto cands = candidates_for(s, goal, hyp, pack);
      std::vector<ForecastCost> costs;
      auto clean = eval(cands, costs);
      if (clean) {
        out.rationale.push_back("alt " + describe(s, costs[*clean],
                                                  cands[*clean].gen_index));
        out.steps.push_back({cands[*clean].act, costs[*clean], false, {}});
        return out;
      }
      for (size_t i = 0; i < cands.size(); ++i) {
        if (!best || cheaper(costs[i], rank, best_cost, best_rank)) {
          best = cands[i];
          best_cost = costs[i];
          best_rank = rank;
        }
      }
      ++rank;
    }
    if (best && best_cost.necessary == 0) {
      out.rationale.push_back("alt fallback " +
                              describe(best->act.strategy, best_cost,
                                       best->gen_index));
      out.steps.push_back({best->act, best_cost, false, {}});
    } else {
      out.rationale.push_back("alt all-candidates-harmful: skipped");
    }
    return out;
  }

  for (RecoveryStrategyKind s : goal.chain.steps) {
    bool must = strategy_form(s) == StrategyForm::must;
    auto cands = candidates_for(s, goal, hyp, pack);
    if (cands.empty()) {
      PlanStep step;
      step.act.strategy = s;
      step.skipped = true;
      step.note = "no wording available";
      if (must) out.unsatisfiable_must_form = true;
      out.rationale.push_back(std::string(to_string(s)) +
                              (must ? " UNSATISFIABLE: no wording"
                                    : " skipped: no wording"));
      out.steps.push_back(std::move(step));
      continue;
    }
    std::vector<ForecastCost> costs;
    auto clean = eval(cands, costs);
    size_t pick = 0;
    if (clean) {
      pick = *clean;
    } else {
      // cheapest candidate, ties to earliest generated
      for (size_t i = 1; i < costs.size(); ++i)
        if (cheaper(costs[i], static_cast<int>(i), costs[pick],
                    static_cast<int>(pick)))
          pick = i;
      if (must) {
        if (costs[pick].necessary > 0) {
          out.unsatisfiable_must_form = true;
          out.rationale.push_back(std::string(to_string(s)) +
                                  " UNSATISFIABLE: best still harmful");
        }
      } else if (costs[pick].necessary > 0) {
        PlanStep step;
        step.act.strategy = s;
        step.cost = costs[pick];
        step.skipped = true;
        step.note = "every wording would cause repair-demanding trouble";
        out.rationale.push_back(std::string(to_string(s)) +
                                " skipped: all candidates harmful");
        out.steps.push_back(std::move(step));
        continue;
      }
    }
    out.rationale.push_back(
        describe(s, costs[pick], cands[pick].gen_index));
    out.steps.push_back({cands[pick].act, costs[pick], false, {}});
    hyp = apply_act(hyp, cands[pick].act);
  }
  return out;
}

PrefaceResult preface_if_dispreferred(const DialogueAct& act,
                                      const InteractionState& state,
                                      const CulturePack& pack) {
  PrefaceResult out{act, false};
  bool bare_flagged = false;
  for (const auto& inst : forecast_instances(state, act))
    if (inst.kind == DisruptionKind::S12_dispreferred_act) {
      bare_flagged = true;
      break;
    }
  if (!bare_flagged) return out;

  std::string token;
  try {
    token = render_template(pack, RecoveryStrategyKind::hesitation_preface, {},
                            0);
  } catch (const NoTemplate&) {
    return out;  // pack does not hedge; leave the act alone
  }

  DialogueAct hedged = act;
  hedged.mitigated = true;
  hedged.surface = token + act.surface;
  for (const auto& inst : forecast_instances(state, hedged))
    if (inst.kind == DisruptionKind::S12_dispreferred_act) return out;
  return {hedged, true};
}

}  // namespace facework
