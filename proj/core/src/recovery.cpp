#include "facework/recovery.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "facework/errors.hpp"

namespace facework {

namespace {

bool is_client(const InteractionState& s, const std::string& id) {
  const Participant* p = s.find(id);
  return p && p->role == Role::client;
}

std::string first_present_client(const InteractionState& s) {
  for (const auto& p : s.cast)
    if (p.role == Role::client && s.is_present(p.id)) return p.id;
  return {};
}

// Who the repair talk is directed at.
std::vector<std::string> pick_addressees(const RecoveryGoal& goal,
                                         const InteractionState& state,
                                         RecoveryStrategyKind strategy) {
  const std::string& agent = state.agent_id();
  std::vector<std::string> out;
  auto add = [&](const std::string& id) {
    if (id.empty() || id == agent) return;
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  if (goal.breaching_actor_is_agent ||
      strategy == RecoveryStrategyKind::triangling) {
    // own fault (or smoothing someone else's): speak to the offended side
    for (const auto& a : goal.affected) add(a);
  } else {
    add(goal.breaching_actor);
  }
  if (out.empty()) add(first_present_client(state));
  return out;
}

// The client whose order the repair is about, for slot filling.
std::string slot_client(const RecoveryGoal& goal, const InteractionState& state) {
  if (is_client(state, goal.breaching_actor)) return goal.breaching_actor;
  for (const auto& a : goal.affected)
    if (is_client(state, a)) return a;
  return first_present_client(state);
}

std::map<std::string, std::string> make_slots(
    const RecoveryGoal& goal, const InteractionState& state,
    const std::vector<std::string>& addressees,
    const std::optional<std::string>& topic) {
  std::map<std::string, std::string> slots;
  if (!addressees.empty()) slots["addressee"] = addressees.front();
  std::string client = slot_client(goal, state);
  auto proc = state.processes.find(client);
  if (proc != state.processes.end() && !proc->second.order_items.empty()) {
    slots["item"] = proc->second.order_items.front();
    Cents due = proc->second.amount_due;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%02lld", due / 100, due % 100);
    slots["amount"] = buf;
  }
  if (topic) slots["topic"] = *topic;
  return slots;
}

// What cleaning up after a mishap amounts to: wipe the counter, and redo
// whatever was on the bench for the affected client.
std::vector<std::string> physical_remedies_for(const RecoveryGoal& goal,
                                               const InteractionState& state) {
  std::vector<std::string> out{"clean_counter"};
  for (const auto& a : goal.affected) {
    auto it = state.processes.find(a);
    if (it == state.processes.end()) continue;
    Phase ph = it->second.phase;
    if (!it->second.order_items.empty() &&
        (ph == Phase::confirmed || ph == Phase::preparing ||
         ph == Phase::served)) {
      out.push_back("remake_item");
      break;
    }
  }
  return out;
}

// The wording of a repeated question should match the original one.
void copy_original_question(DialogueAct& act, const RecoveryGoal& goal,
                            const InteractionState& state) {
  const std::string& agent = state.agent_id();
  for (const auto& pair : state.pairs) {
    if (pair.from != agent || pair.to != goal.breaching_actor) continue;
    if (pair.first_kind != ActKind::ask) continue;
    act.question_form = pair.question_form.value_or(QuestionForm::open_ended);
    act.alternatives = pair.alternatives;
  }
}

}  // namespace

RecoveryGoal map_strategy(const DisruptionInstance& inst,
                          const CulturePack& pack,
                          const InteractionState& state) {
  RecoveryGoal goal;
  goal.kind = inst.kind;
  goal.sub_kind = inst.sub_kind;
  goal.breaching_actor = inst.breaching_actor;
  goal.affected = inst.affected;
  goal.breaching_actor_is_agent = inst.breaching_actor == state.agent_id();
  goal.perceived = inst.intent.perceived;
  goal.status = inst.status;
  goal.disruption_at = inst.at;
  goal.chain = resolved_chain(pack, inst.kind, goal.breaching_actor_is_agent,
                              inst.intent.perceived, inst.sub_kind);
  goal.avoid_topics = state.norms.membrane;
  if (inst.kind == DisruptionKind::S6_common_definition ||
      inst.kind == DisruptionKind::S11_membrane)
    for (const auto& t : inst.utterance_topics) goal.avoid_topics.insert(t);
  return goal;
}

std::vector<std::string> topic_candidates(const CulturePack& pack,
                                          const OccasionNorms& norms,
                                          const std::set<std::string>& avoid) {
  std::vector<std::string> out;
  for (const auto& t : norms.safe_topics) {
    if (avoid.count(t)) continue;
    if (!render_topic_opener(pack, t, 0)) continue;
    out.push_back(t);
  }
  return out;
}

CommunicativeAct realize_strategy(RecoveryStrategyKind strategy,
                                  const RecoveryGoal& goal,
                                  const InteractionState& state,
                                  const CulturePack& pack, long long counter,
                                  const std::optional<std::string>& topic) {
  using K = RecoveryStrategyKind;
  CommunicativeAct out;
  out.strategy = strategy;

  if (strategy == K::treat_as_irrelevant) {
    out.note = "tactful blindness";
    return out;
  }
  if (strategy == K::remediate_physical) {
    out.physical_remedies = physical_remedies_for(goal, state);
    return out;
  }

  DialogueAct act;
  act.speaker = state.agent_id();
  act.addressees = pick_addressees(goal, state, strategy);

  switch (strategy) {
    case K::minimize: act.kind = ActKind::minimize; break;
    case K::apologize: act.kind = ActKind::apologize; break;
    case K::excuse: act.kind = ActKind::excuse; break;
    case K::justify: act.kind = ActKind::justify; break;
    case K::state_norm: act.kind = ActKind::state_norm; break;
    case K::boundary_statement: act.kind = ActKind::boundary_statement; break;
    case K::benevolent_joke: act.kind = ActKind::joke; break;
    case K::criticize: act.kind = ActKind::criticize; break;
    case K::self_repair: act.kind = ActKind::self_repair; break;
    case K::offer_compensation:
    case K::triangling:
    case K::ignore_and_continue:
    case K::hesitation_preface:
      act.kind = ActKind::inform;
      break;
    case K::initiate_process:
    case K::request_repeat:
    case K::clarify_referent:
      act.kind = ActKind::ask;
      act.question_form = QuestionForm::open_ended;
      break;
    case K::ask_to_proceed:
    case K::signal_misunderstanding:
      act.kind = ActKind::ask;
      act.question_form = QuestionForm::yes_no;
      break;
    case K::repeat_question:
      act.kind = ActKind::ask;
      act.question_form = QuestionForm::open_ended;
      copy_original_question(act, goal, state);
      break;
    case K::change_topic:
      act.kind = ActKind::change_topic;
      break;
    default:
      act.kind = ActKind::inform;
      break;
  }

  if (strategy == K::change_topic) {
    if (!topic) throw std::logic_error("change_topic needs a chosen topic");
    act.topics = {*topic};
    auto surface = render_topic_opener(pack, *topic, counter);
    if (!surface) throw NoTemplate("change_topic." + *topic);
    act.surface = *surface;
  } else {
    auto slots = make_slots(goal, state, act.addressees, topic);
    act.surface = render_template(pack, strategy, slots, counter);
  }

  out.say = std::move(act);
  return out;
}

CommunicativeAct map_reactive(const DisruptionInstance& inst,
                              const CulturePack& pack,
                              const InteractionState& state,
                              long long counter) {
  if (inst.status == RecoveryStatus::tolerated)
    throw std::logic_error("tolerated disruptions take no recovery");

  RecoveryGoal goal = map_strategy(inst, pack, state);

  // The speaker's own rewording already is the repair; nothing to add.
  if (inst.kind == DisruptionKind::S10_repairables &&
      inst.sub_kind == RepairableSubKind::speech_error &&
      !goal.breaching_actor_is_agent) {
    CommunicativeAct out;
    out.strategy = RecoveryStrategyKind::self_repair;
    out.note = "speaker self-repaired; no act needed";
    return out;
  }

  if (goal.chain.steps.empty())
    throw std::logic_error("empty recovery chain");
  RecoveryStrategyKind first = goal.chain.steps.front();

  std::optional<std::string> topic;
  if (first == RecoveryStrategyKind::change_topic) {
    auto candidates = topic_candidates(pack, state.norms, goal.avoid_topics);
    if (candidates.empty()) {
      CommunicativeAct out;
      out.strategy = first;
      out.note = "no usable safe topic";
      return out;
    }
    topic = candidates.front();
  }

  CommunicativeAct act =
      realize_strategy(first, goal, state, pack, counter, topic);

  // Own mishaps: the apology carries the clean-up along.
  if (inst.kind == DisruptionKind::F5_performative_mistake &&
      goal.breaching_actor_is_agent)
    act.physical_remedies = physical_remedies_for(goal, state);

  return act;
}

}  // namespace facework
