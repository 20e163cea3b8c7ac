#include "facework/detection.hpp"

#include <algorithm>

namespace facework {

namespace {

// A deadline fires exactly once: on the first event strictly past it.
bool crossed(Tick deadline, const InteractionState& pre, const Event& ev) {
  return pre.clock <= deadline && deadline < ev.time;
}

DisruptionInstance make(DisruptionKind kind, std::string breacher,
                        std::vector<std::string> affected,
                        std::vector<int> evidence, std::string tag) {
  DisruptionInstance inst;
  inst.kind = kind;
  inst.breaching_actor = std::move(breacher);
  inst.affected = std::move(affected);
  inst.evidence = std::move(evidence);
  inst.at = inst.evidence.empty() ? 0 : inst.evidence.back();
  inst.tag = std::move(tag);
  return inst;
}

std::vector<std::string> others_present(const InteractionState& s,
                                        const std::string& except) {
  std::vector<std::string> out;
  for (const auto& p : s.cast)
    if (p.id != except && s.is_present(p.id)) out.push_back(p.id);
  return out;
}

std::vector<std::string> audience(const InteractionState& s,
                                  const DialogueAct& act) {
  return act.addressees.empty() ? others_present(s, act.speaker)
                                : act.addressees;
}

// Every new item is either kept from the old order or a compatible swap.
bool lists_compatible(const Catalog& cat, const std::vector<std::string>& old_items,
                      const std::vector<std::string>& new_items) {
  for (const auto& n : new_items) {
    bool ok = false;
    for (const auto& o : old_items) {
      // uncatalogued items are never compatible, but must not blow up here
      if (o == n || (cat.has(o) && cat.has(n) && compatible_change(cat, o, n))) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

Phase phase_of(const InteractionState& s, const std::string& client) {
  auto it = s.processes.find(client);
  return it == s.processes.end() ? Phase::idle : it->second.phase;
}

// Walking through the invisible line joining two people who are "with"
// each other only offends when they are actually near one another.
constexpr Cm kWithChordCm = 150;

}  // namespace

std::vector<DisruptionInstance> detect_functional(const InteractionState& pre,
                                                  const Event& ev,
                                                  const DetectionConfig& cfg) {
  std::vector<DisruptionInstance> out;

  // F1: a placed order is replaced by a new request.
  if (const auto* say = std::get_if<Say>(&ev.payload)) {
    const DialogueAct& act = say->act;
    const Participant* speaker = pre.find(act.speaker);
    if (!pre.masked(ev) && speaker && speaker->role == Role::client &&
        act.kind == ActKind::request && act.item) {
      auto it = pre.processes.find(act.speaker);
      FunctionalProcess proc =
          it == pre.processes.end() ? FunctionalProcess{} : it->second;
      auto tr = functional_transition(proc, act, pre.catalog, ev.index,
                                      Role::client);
      if (tr.process.last_change) {
        const ChangeMark& mark = *tr.process.last_change;
        if (cfg.enhanced ||
            mark.change_index - mark.original_index <= cfg.window) {
          auto inst = make(DisruptionKind::F1_order_change, act.speaker,
                           {pre.agent_id()},
                           {mark.original_index, mark.change_index},
                           "order_change");
          inst.flags.talk_based = true;
          inst.context.compatible_change =
              lists_compatible(pre.catalog, mark.old_items, mark.new_items);
          inst.utterance_topics = act.topics;
          out.push_back(std::move(inst));
        }
      }
    }
  }

  // F2: someone is standing at the counter without getting started.
  for (const auto& [id, stay] : pre.at_counter) {
    Tick deadline = stay.since + pre.norms.timeout_order_start_s;
    if (static_cast<int>(phase_of(pre, id)) >=
        static_cast<int>(Phase::ordering))
      continue;
    if (!pre.is_present(id) || !crossed(deadline, pre, ev)) continue;
    auto inst = make(DisruptionKind::F2_not_starting, id, {pre.agent_id()},
                     {stay.entry_index, ev.index}, "not_starting");
    inst.context.severity_within_tolerance =
        ev.time - deadline <= pre.norms.timeout_order_start_s;
    out.push_back(std::move(inst));
  }

  // F3: a question went unanswered past its deadline.
  for (const auto& pair : pre.pairs) {
    if (pair.closed || pair.voided) continue;
    if (pair.first_kind != ActKind::ask) continue;
    if (!crossed(pair.deadline, pre, ev)) continue;
    out.push_back(make(DisruptionKind::F3_not_proceeding, pair.to, {pair.from},
                       {pair.opened_at, ev.index}, "unanswered_question"));
  }

  // F4: leaving with something still owed.
  if (const auto* dep = std::get_if<Depart>(&ev.payload)) {
    const Participant* p = pre.find(dep->participant);
    if (p && p->role == Role::client) {
      auto it = pre.processes.find(dep->participant);
      FunctionalProcess proc =
          it == pre.processes.end() ? FunctionalProcess{} : it->second;
      if (functional_transition_depart(proc).process.abandoned)
        out.push_back(make(DisruptionKind::F4_abandonment, dep->participant,
                           {pre.agent_id()}, {ev.index}, "abandonment"));
    }
  }

  // F5: things get knocked over, dropped, bumped into.
  if (const auto* ph = std::get_if<Physical>(&ev.payload)) {
    std::vector<std::string> affected;
    if (ph->participant == pre.agent_id()) {
      // the mishap lands on whoever is being served
      for (const auto& p : pre.cast) {
        if (p.role != Role::client || !pre.is_present(p.id)) continue;
        Phase phase = phase_of(pre, p.id);
        if (phase == Phase::confirmed || phase == Phase::preparing ||
            phase == Phase::served || phase == Phase::billing) {
          affected.push_back(p.id);
          break;
        }
      }
      if (affected.empty())
        for (const auto& p : pre.cast)
          if (p.role == Role::client && pre.is_present(p.id)) {
            affected.push_back(p.id);
            break;
          }
    } else {
      affected.push_back(pre.agent_id());
    }
    auto inst = make(DisruptionKind::F5_performative_mistake, ph->participant,
                     std::move(affected), {ev.index}, to_string(ph->mishap));
    inst.flags.physical_mishap = true;
    out.push_back(std::move(inst));
  }

  return out;
}

namespace {

void detect_on_say(const InteractionState& pre, const Event& ev,
                   const DialogueAct& act,
                   std::vector<DisruptionInstance>& out) {
  // Masked talk has exactly one reading: it was not received.
  if (pre.masked(ev)) {
    auto inst = make(DisruptionKind::S10_repairables, act.speaker,
                     audience(pre, act), {ev.index}, "non_reception");
    inst.sub_kind = RepairableSubKind::non_reception;
    inst.flags.talk_based = true;
    inst.utterance_topics = act.topics;
    out.push_back(std::move(inst));
    return;
  }

  // S6a: wording that presumes a closer tie than actually holds.
  if (act.presupposed_tie) {
    std::vector<std::string> offended;
    for (const auto& a : act.addressees)
      if (tie_less(pre.tie_between(act.speaker, a), *act.presupposed_tie))
        offended.push_back(a);
    if (!offended.empty()) {
      auto inst = make(DisruptionKind::S6_common_definition, act.speaker,
                       std::move(offended), {ev.index}, "presupposed_tie");
      inst.flags.talk_based = true;
      inst.utterance_topics = act.topics;
      out.push_back(std::move(inst));
    }
  }
  // S6b: ordering something this place does not serve.
  if (act.kind == ActKind::request && act.item && !pre.catalog.has(*act.item)) {
    auto inst = make(DisruptionKind::S6_common_definition, act.speaker,
                     {pre.agent_id()}, {ev.index}, "unknown_item");
    inst.flags.talk_based = true;
    inst.utterance_topics = act.topics;
    out.push_back(std::move(inst));
  }

  // S7a: ordering out of turn.
  if (act.kind == ActKind::request && pre.norms.queue_policy == "fifo" &&
      !pre.queue.empty() && pre.queue.front() != act.speaker &&
      std::find(pre.queue.begin(), pre.queue.end(), act.speaker) !=
          pre.queue.end()) {
    auto inst = make(DisruptionKind::S7_tacit_norms, act.speaker,
                     {pre.queue.front()}, {ev.index}, "queue_skip");
    inst.flags.talk_based = true;
    inst.context.severity_within_tolerance = false;
    inst.utterance_topics = act.topics;
    out.push_back(std::move(inst));
  }
  // S7b: talking over the room.
  if (act.volume > pre.norms.volume_max) {
    auto inst = make(DisruptionKind::S7_tacit_norms, act.speaker,
                     audience(pre, act), {ev.index}, "volume");
    inst.flags.talk_based = true;
    inst.context.severity_within_tolerance =
        act.volume - pre.norms.volume_max <= 2;
    inst.utterance_topics = act.topics;
    out.push_back(std::move(inst));
  }

  const std::string& agent = pre.agent_id();

  // S9a: handing the item over while the request still awaits an answer.
  if (act.speaker == agent && act.kind == ActKind::inform && act.item) {
    std::vector<std::string> froms;
    int opened_at = -1;
    for (const auto& pair : pre.pairs) {
      if (pair.closed || pair.voided) continue;
      if (pair.to != agent || pair.first_kind != ActKind::request) continue;
      if (opened_at < 0) opened_at = pair.opened_at;
      if (std::find(froms.begin(), froms.end(), pair.from) == froms.end())
        froms.push_back(pair.from);
    }
    if (!froms.empty()) {
      auto inst = make(DisruptionKind::S9_conversational_norms, agent,
                       std::move(froms), {opened_at, ev.index},
                       "serve_without_accept");
      inst.flags.talk_based = true;
      out.push_back(std::move(inst));
    }
  }
  // S9b: one speaker holding the floor too long.
  if (pre.hold && pre.hold->speaker == act.speaker) {
    Tick held_before = pre.hold->last_say - pre.hold->started;
    Tick held_now = ev.time - pre.hold->started;
    if (held_before <= pre.norms.turn_hold_max_s &&
        held_now > pre.norms.turn_hold_max_s) {
      auto inst = make(DisruptionKind::S9_conversational_norms, act.speaker,
                       audience(pre, act), {pre.hold->start_index, ev.index},
                       "turn_hold");
      inst.flags.talk_based = true;
      inst.utterance_topics = act.topics;
      out.push_back(std::move(inst));
    }
  }

  // S10: answering past each other on an either/or question.
  if (act.kind == ActKind::answer && act.answer_polarity) {
    for (size_t idx : matching_open_pairs(pre, act)) {
      const auto& pair = pre.pairs[idx];
      if (pair.question_form != QuestionForm::alternative) continue;
      auto inst = make(DisruptionKind::S10_repairables, act.speaker,
                       {pair.from}, {pair.opened_at, ev.index},
                       "misunderstanding");
      inst.sub_kind = RepairableSubKind::misunderstanding;
      inst.flags.talk_based = true;
      inst.utterance_topics = act.topics;
      out.push_back(std::move(inst));
      break;
    }
  }
  // S10: a speaker rewording themselves.
  if (act.kind == ActKind::self_repair) {
    std::vector<int> evidence;
    auto prior = pre.last_say_index_by.find(act.speaker);
    if (prior != pre.last_say_index_by.end()) evidence.push_back(prior->second);
    evidence.push_back(ev.index);
    auto inst = make(DisruptionKind::S10_repairables, act.speaker,
                     audience(pre, act), std::move(evidence), "speech_error");
    inst.sub_kind = RepairableSubKind::speech_error;
    inst.flags.talk_based = true;
    inst.utterance_topics = act.topics;
    out.push_back(std::move(inst));
  }
  // S10: "those" when several things answer to the description.
  if (act.kind == ActKind::reference && act.referent) {
    int count = 0;
    for (const auto& obj : pre.objects)
      if (obj.category == *act.referent) ++count;
    if (count > 1) {
      auto inst = make(DisruptionKind::S10_repairables, act.speaker,
                       audience(pre, act), {ev.index}, "indexical");
      inst.sub_kind = RepairableSubKind::indexical;
      inst.flags.talk_based = true;
      inst.utterance_topics = act.topics;
      out.push_back(std::move(inst));
    }
  }

  // S11: topics the occasion keeps out.
  for (const auto& t : act.topics) {
    if (!pre.norms.membrane.count(t)) continue;
    auto inst = make(DisruptionKind::S11_membrane, act.speaker,
                     audience(pre, act), {ev.index}, t);
    inst.flags.talk_based = true;
    inst.utterance_topics = act.topics;
    out.push_back(std::move(inst));
    break;
  }

  // S12: dispreferred moves done without softening.
  if (!act.mitigated) {
    std::optional<std::string> tag;
    if (act.kind == ActKind::disagree) {
      tag = "blunt_disagreement";
    } else if (act.kind == ActKind::agree && pre.last_say &&
               pre.last_say->kind == ActKind::self_critique &&
               std::find(act.addressees.begin(), act.addressees.end(),
                         pre.last_say->speaker) != act.addressees.end()) {
      tag = "agree_with_self_critique";
    } else if (act.kind == ActKind::refuse) {
      for (size_t idx : matching_open_pairs(pre, act))
        if (pre.pairs[idx].first_kind == ActKind::request) {
          tag = "blunt_refusal";
          break;
        }
    }
    if (tag) {
      auto inst = make(DisruptionKind::S12_dispreferred_act, act.speaker,
                       audience(pre, act), {ev.index}, *tag);
      inst.flags.talk_based = true;
      inst.utterance_topics = act.topics;
      out.push_back(std::move(inst));
    }
  }
}

void detect_on_move(const InteractionState& pre, const Event& ev,
                    const Move& mv, std::vector<DisruptionInstance>& out) {
  if (!pre.is_present(mv.participant)) return;
  const std::string& agent = pre.agent_id();
  Vec2 to = mv.to;
  Vec2 from = to;
  auto old_it = pre.positions.find(mv.participant);
  if (old_it != pre.positions.end()) from = old_it->second;

  // S8a: ending up inside someone else's space.  Counter service distance
  // with the agent is part of the setting, so agent pairs are exempt.
  Cm thr = pre.norms.proxemic_violation_cm;
  std::vector<std::string> offended;
  if (mv.participant != agent) {
    for (const auto& p : pre.cast) {
      if (p.id == mv.participant || p.id == agent) continue;
      if (!pre.is_present(p.id)) continue;
      if (pre.same_with(mv.participant, p.id)) continue;
      auto pos = pre.positions.find(p.id);
      if (pos == pre.positions.end()) continue;
      if (dist2(to, pos->second) < thr * thr) offended.push_back(p.id);
    }
  }
  if (!offended.empty()) {
    out.push_back(make(DisruptionKind::S8_proxemic_norms, mv.participant,
                       std::move(offended), {ev.index}, "proximity"));
    return;
  }

  // S8b: cutting through the line between two people who are together.
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& p : pre.cast) {
    if (!p.with_group || p.id == mv.participant) continue;
    if (!pre.is_present(p.id) || !pre.positions.count(p.id)) continue;
    groups[*p.with_group].push_back(p.id);
  }
  const Participant* mover = pre.find(mv.participant);
  for (const auto& [group, members] : groups) {
    if (mover && mover->with_group && *mover->with_group == group) continue;
    for (size_t i = 0; i < members.size(); ++i) {
      for (size_t j = i + 1; j < members.size(); ++j) {
        Vec2 a = pre.positions.at(members[i]);
        Vec2 b = pre.positions.at(members[j]);
        if (dist2(a, b) > kWithChordCm * kWithChordCm) continue;
        if (!segments_cross(from, to, a, b)) continue;
        out.push_back(make(DisruptionKind::S8_proxemic_norms, mv.participant,
                           {members[i], members[j]}, {ev.index},
                           "with_crossing"));
        return;
      }
    }
  }
}

}  // namespace

std::vector<DisruptionInstance> detect_social(const InteractionState& pre,
                                              const Event& ev,
                                              const DetectionConfig& cfg) {
  (void)cfg;
  std::vector<DisruptionInstance> out;
  if (const auto* say = std::get_if<Say>(&ev.payload)) {
    if (pre.find(say->act.speaker)) detect_on_say(pre, ev, say->act, out);
  } else if (const auto* mv = std::get_if<Move>(&ev.payload)) {
    detect_on_move(pre, ev, *mv, out);
  }
  return out;
}

std::vector<DisruptionInstance> detect_all(const InteractionState& pre,
                                           const Event& ev,
                                           const DetectionConfig& cfg) {
  std::vector<DisruptionInstance> out = detect_functional(pre, ev, cfg);
  auto social = detect_social(pre, ev, cfg);
  out.insert(out.end(), social.begin(), social.end());
  return out;
}

DisruptionInstance assess(DisruptionInstance inst,
                          const EvidenceFlags& extra_flags) {
  inst.flags.talk_based |= extra_flags.talk_based;
  inst.flags.physical_mishap |= extra_flags.physical_mishap;
  inst.flags.third_party_mocks |= extra_flags.third_party_mocks;
  inst.flags.third_party_neutral |= extra_flags.third_party_neutral;
  inst.flags.explicit_excuse_given |= extra_flags.explicit_excuse_given;

  inst.intent = perceive_intentionality(inst.kind, inst.flags);
  inst.context.perceived = inst.intent.perceived;
  inst.context.sub_kind = inst.sub_kind;
  inst.status = classify_status(inst.kind, inst.context);
  return inst;
}

}  // namespace facework
