#include "facework/interaction.hpp"

#include <algorithm>
#include <numeric>

#include "facework/errors.hpp"

namespace facework {

long long dist2(const Vec2& a, const Vec2& b) {
  long long dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

namespace {
long long cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}
int sgn(long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
bool on_segment(const Vec2& p, const Vec2& q, const Vec2& r) {
  return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) &&
         std::min(p.y, r.y) <= q.y && q.y <= std::max(p.y, r.y);
}
}  // namespace

bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1,
                    const Vec2& q2) {
  int d1 = sgn(cross(q1, q2, p1));
  int d2 = sgn(cross(q1, q2, p2));
  int d3 = sgn(cross(p1, p2, q1));
  int d4 = sgn(cross(p1, p2, q2));
  if (d1 != d2 && d3 != d4 && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0)
    return true;
  // collinear touches count as crossing the line between two people
  if (d1 == 0 && on_segment(q1, p1, q2)) return true;
  if (d2 == 0 && on_segment(q1, p2, q2)) return true;
  if (d3 == 0 && on_segment(p1, q1, p2)) return true;
  if (d4 == 0 && on_segment(p1, q2, p2)) return true;
  return false;
}

bool tie_less(Tie a, Tie b) { return static_cast<int>(a) < static_cast<int>(b); }

const char* to_string(ActKind k) {
  switch (k) {
    case ActKind::request: return "request";
    case ActKind::accept: return "accept";
    case ActKind::ask: return "ask";
    case ActKind::answer: return "answer";
    case ActKind::inform: return "inform";
    case ActKind::apologize: return "apologize";
    case ActKind::excuse: return "excuse";
    case ActKind::justify: return "justify";
    case ActKind::minimize: return "minimize";
    case ActKind::self_critique: return "self_critique";
    case ActKind::disagree: return "disagree";
    case ActKind::agree: return "agree";
    case ActKind::refuse: return "refuse";
    case ActKind::self_repair: return "self_repair";
    case ActKind::reference: return "reference";
    case ActKind::greet: return "greet";
    case ActKind::depart_announce: return "depart_announce";
    case ActKind::change_topic: return "change_topic";
    case ActKind::state_norm: return "state_norm";
    case ActKind::joke: return "joke";
    case ActKind::criticize: return "criticize";
    case ActKind::boundary_statement: return "boundary_statement";
  }
  return "?";
}

std::optional<ActKind> act_kind_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(ActKind::boundary_statement); ++i) {
    auto k = static_cast<ActKind>(i);
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

const char* to_string(QuestionForm f) {
  switch (f) {
    case QuestionForm::yes_no: return "yes_no";
    case QuestionForm::alternative: return "alt";
    case QuestionForm::open_ended: return "open";
  }
  return "?";
}

const char* to_string(Mishap m) {
  switch (m) {
    case Mishap::spill: return "spill";
    case Mishap::drop: return "drop";
    case Mishap::bump: return "bump";
  }
  return "?";
}

const char* to_string(Phase p) {
  switch (p) {
    case Phase::idle: return "idle";
    case Phase::engaged: return "engaged";
    case Phase::ordering: return "ordering";
    case Phase::confirmed: return "confirmed";
    case Phase::preparing: return "preparing";
    case Phase::served: return "served";
    case Phase::billing: return "billing";
    case Phase::paid: return "paid";
    case Phase::closed: return "closed";
  }
  return "?";
}

bool compatible_change(const Catalog& cat, const std::string& from,
                       const std::string& to) {
  if (!cat.has(from)) throw UnknownItem(from);
  if (!cat.has(to)) throw UnknownItem(to);
  if (from == to) return true;
  auto key = std::minmax(from, to);
  return cat.compatible.count({key.first, key.second}) > 0;
}

const Participant* InteractionState::find(const std::string& id) const {
  for (const auto& p : cast)
    if (p.id == id) return &p;
  return nullptr;
}

const std::string& InteractionState::agent_id() const {
  for (const auto& p : cast)
    if (p.role == Role::agent) return p.id;
  throw std::logic_error("no agent in cast");
}

Tie InteractionState::tie_between(const std::string& a,
                                  const std::string& b) const {
  auto key = std::minmax(a, b);
  auto it = ties.find({key.first, key.second});
  return it == ties.end() ? Tie::strangers : it->second;
}

bool InteractionState::is_present(const std::string& id) const {
  auto it = present.find(id);
  return it != present.end() && it->second;
}

bool InteractionState::same_with(const std::string& a,
                                 const std::string& b) const {
  const Participant* pa = find(a);
  const Participant* pb = find(b);
  if (!pa || !pb || !pa->with_group || !pb->with_group) return false;
  return *pa->with_group == *pb->with_group;
}

bool InteractionState::masked(const Event& ev) const {
  if (!ev.script_ordinal) return false;  // engine speech is always audible
  for (const auto& n : noise)
    if (n.level >= norms.audibility_threshold && *ev.script_ordinal >= n.from &&
        *ev.script_ordinal <= n.to)
      return true;
  return false;
}

// ----- phase machine -----------------------------------------------------

namespace {

Cents order_total(const Catalog& cat, const std::vector<std::string>& items) {
  Cents sum = 0;
  for (const auto& it : items) {
    auto found = cat.prices.find(it);
    if (found != cat.prices.end()) sum += found->second;
  }
  return sum;
}

TransitionResult illegal(const FunctionalProcess& p, const std::string& what) {
  return {p, IllegalTransition{p.phase, what}};
}

TransitionResult ok(FunctionalProcess p) { return {std::move(p), std::nullopt}; }

// Order placement shared by requests and item-bearing answers.
TransitionResult place_or_extend(FunctionalProcess p, const std::string& item,
                                 const Catalog& cat, int index,
                                 bool may_change) {
  switch (p.phase) {
    case Phase::idle:
    case Phase::engaged:
      p.phase = Phase::ordering;
      p.order_items = {item};
      p.order_placed_at = index;
      p.amount_due = order_total(cat, p.order_items);
      return ok(std::move(p));
    case Phase::ordering:
      p.order_items.push_back(item);
      p.order_placed_at = index;
      p.amount_due = order_total(cat, p.order_items);
      return ok(std::move(p));
    case Phase::confirmed:
    case Phase::preparing:
      if (may_change) {
        ChangeMark mark{p.order_items, {item}, p.order_placed_at, index};
        p.last_change = mark;
        p.order_items = {item};
        p.order_placed_at = index;
        p.amount_due = order_total(cat, p.order_items);
        return ok(std::move(p));
      }
      // an answer naming one more item extends the agreed order
      p.order_items.push_back(item);
      p.order_placed_at = index;
      p.amount_due = order_total(cat, p.order_items);
      return ok(std::move(p));
    default:
      return illegal(p, "order");
  }
}

}  // namespace

TransitionResult functional_transition(const FunctionalProcess& process,
                                       const DialogueAct& act,
                                       const Catalog& catalog, int event_index,
                                       Role speaker_role) {
  FunctionalProcess p = process;
  p.last_change.reset();

  switch (act.kind) {
    case ActKind::greet:
      if (p.phase == Phase::idle) p.phase = Phase::engaged;
      return ok(std::move(p));

    case ActKind::request:
      if (!act.item) return ok(std::move(p));  // payment talk etc.
      if (!catalog.has(*act.item)) return ok(std::move(p));  // foreign item
      return place_or_extend(std::move(p), *act.item, catalog, event_index,
                             /*may_change=*/true);

    case ActKind::answer:
      if (!act.item || !catalog.has(*act.item)) return ok(std::move(p));
      return place_or_extend(std::move(p), *act.item, catalog, event_index,
                             /*may_change=*/false);

    case ActKind::accept:
      if (speaker_role != Role::agent) return ok(std::move(p));
      if (p.phase == Phase::ordering) {
        p.phase = Phase::confirmed;
        return ok(std::move(p));
      }
      if (p.phase == Phase::confirmed) return ok(std::move(p));
      return illegal(p, "accept");

    case ActKind::inform:
      if (speaker_role != Role::agent) return ok(std::move(p));
      if (act.amount) {  // presenting the bill
        switch (p.phase) {
          case Phase::confirmed:
          case Phase::preparing:
          case Phase::served:
            p.phase = Phase::billing;
            return ok(std::move(p));
          default:
            return illegal(p, "bill");
        }
      }
      if (act.item) {  // handing the item over
        switch (p.phase) {
          case Phase::ordering:
          case Phase::confirmed:
          case Phase::preparing:
          case Phase::served:
            p.phase = Phase::served;
            return ok(std::move(p));
          default:
            return illegal(p, "serve");
        }
      }
      return ok(std::move(p));

    default:
      return ok(std::move(p));
  }
}

TransitionResult functional_transition_pay(const FunctionalProcess& process,
                                           Cents amount) {
  FunctionalProcess p = process;
  p.last_change.reset();
  (void)amount;
  if (p.phase != Phase::billing) return illegal(p, "pay");
  p.phase = Phase::paid;
  return ok(std::move(p));
}

TransitionResult functional_transition_depart(const FunctionalProcess& process) {
  FunctionalProcess p = process;
  p.last_change.reset();
  if (static_cast<int>(p.phase) < static_cast<int>(Phase::paid) &&
      p.amount_due > 0)
    p.abandoned = true;
  p.phase = Phase::closed;
  return ok(std::move(p));
}

// ----- pairs ---------------------------------------------------------------

std::vector<AdjacencyPair> pending_pairs(const InteractionState& s) {
  std::vector<AdjacencyPair> out;
  for (const auto& p : s.pairs)
    if (!p.closed && !p.voided && p.deadline < s.clock) out.push_back(p);
  return out;
}

std::vector<size_t> matching_open_pairs(const InteractionState& s,
                                        const DialogueAct& act) {
  std::vector<size_t> out;
  for (size_t i = 0; i < s.pairs.size(); ++i) {
    const auto& p = s.pairs[i];
    if (p.closed || p.voided) continue;
    if (p.to != act.speaker) continue;
    if (std::find(act.addressees.begin(), act.addressees.end(), p.from) ==
        act.addressees.end())
      continue;
    if (!p.expected_second.count(act.kind)) continue;
    out.push_back(i);
  }
  return out;
}

// ----- the fold ------------------------------------------------------------

namespace {

void require_known(const InteractionState& s, const std::string& id) {
  if (!s.find(id))
    throw std::invalid_argument("unknown participant: " + id);
}

void update_zone(InteractionState& s, const std::string& id, const Event& ev) {
  const Participant* p = s.find(id);
  if (!p || p->role != Role::client) return;
  auto counter = s.landmarks.find("counter");
  if (counter == s.landmarks.end()) return;
  bool inside = s.is_present(id) &&
                dist2(s.positions.at(id), counter->second) <
                    kCounterZoneCm * kCounterZoneCm;
  bool tracked = s.at_counter.count(id) > 0;
  if (inside && !tracked) s.at_counter[id] = ZoneStay{ev.time, ev.index};
  if (!inside && tracked) s.at_counter.erase(id);
}

void apply_say(InteractionState& s, const Event& ev, const Say& say) {
  const DialogueAct& act = say.act;
  require_known(s, act.speaker);
  for (const auto& a : act.addressees) require_known(s, a);

  if (s.masked(ev)) return;  // nobody heard it: no uptake of any kind

  // close whatever this act answers
  for (size_t i : matching_open_pairs(s, act)) {
    s.pairs[i].closed = true;
    s.pairs[i].closed_at = ev.index;
  }

  // a served item silently closes the request it grants
  const Participant* speaker = s.find(act.speaker);
  if (speaker->role == Role::agent && act.kind == ActKind::inform && act.item) {
    for (auto& p : s.pairs) {
      if (p.closed || p.voided) continue;
      if (p.to == act.speaker && p.first_kind == ActKind::request) {
        p.closed = true;
        p.closed_nonverbally = true;
        p.closed_at = ev.index;
      }
    }
  }

  // open the pair this act projects
  if ((act.kind == ActKind::ask || act.kind == ActKind::request) &&
      !act.addressees.empty() && s.is_present(act.addressees.front())) {
    AdjacencyPair p;
    p.opened_at = ev.index;
    p.from = act.speaker;
    p.to = act.addressees.front();
    p.first_kind = act.kind;
    p.question_form = act.question_form;
    p.alternatives = act.alternatives;
    p.expected_second = act.kind == ActKind::ask
                            ? std::set<ActKind>{ActKind::answer}
                            : std::set<ActKind>{ActKind::accept, ActKind::refuse};
    p.deadline = ev.time + s.norms.timeout_answer_s;
    s.pairs.push_back(std::move(p));
  }

  // drive the functional process of whichever client this belongs to
  std::string client;
  if (speaker->role == Role::client) {
    client = act.speaker;
  } else {
    for (const auto& a : act.addressees) {
      const Participant* pa = s.find(a);
      if (pa && pa->role == Role::client) { client = a; break; }
    }
  }
  if (!client.empty()) {
    auto res = functional_transition(s.processes[client], act, s.catalog,
                                     ev.index, speaker->role);
    s.processes[client] = res.process;  // violations are detection's business
    if (static_cast<int>(s.processes[client].phase) >=
        static_cast<int>(Phase::ordering))
      s.at_counter.erase(client);
  }

  // turn-hold bookkeeping
  if (s.hold && s.hold->speaker == act.speaker) {
    s.hold->last_say = ev.time;
  } else {
    s.hold = TurnHold{act.speaker, ev.time, ev.time, ev.index};
  }

  for (const auto& t : act.topics) s.topic_history.push_back(t);
  s.last_say = act;
  s.last_say_index_by[act.speaker] = ev.index;
}

void apply_depart(InteractionState& s, const Event& ev, const std::string& id) {
  require_known(s, id);
  s.present[id] = false;
  s.queue.erase(std::remove(s.queue.begin(), s.queue.end(), id), s.queue.end());
  s.at_counter.erase(id);
  for (auto& p : s.pairs)
    if (!p.closed && (p.from == id || p.to == id)) p.voided = true;
  const Participant* part = s.find(id);
  if (part->role == Role::client)
    s.processes[id] = functional_transition_depart(s.processes[id]).process;
  (void)ev;
}

}  // namespace

InteractionState apply_event(const InteractionState& s, const Event& ev) {
  if (ev.index != s.last_index + 1)
    throw std::invalid_argument("stale event: index " +
                                std::to_string(ev.index) + " after " +
                                std::to_string(s.last_index));
  if (ev.time < s.clock)
    throw std::invalid_argument("stale event: time went backwards");

  InteractionState next = s;
  next.last_index = ev.index;
  next.clock = ev.time;

  if (const auto* say = std::get_if<Say>(&ev.payload)) {
    apply_say(next, ev, *say);
  } else if (const auto* mv = std::get_if<Move>(&ev.payload)) {
    require_known(next, mv->participant);
    next.positions[mv->participant] = mv->to;
    update_zone(next, mv->participant, ev);
  } else if (const auto* en = std::get_if<Enter>(&ev.payload)) {
    require_known(next, en->participant);
    next.present[en->participant] = true;
    next.positions[en->participant] = next.find(en->participant)->spawn;
    update_zone(next, en->participant, ev);
  } else if (const auto* de = std::get_if<Depart>(&ev.payload)) {
    apply_depart(next, ev, de->participant);
  } else if (const auto* qj = std::get_if<QueueJoin>(&ev.payload)) {
    require_known(next, qj->participant);
    if (std::find(next.queue.begin(), next.queue.end(), qj->participant) ==
        next.queue.end())
      next.queue.push_back(qj->participant);
  } else if (const auto* no = std::get_if<Noise>(&ev.payload)) {
    next.noise.push_back(NoiseSpan{no->level, no->span_from, no->span_to});
  } else if (const auto* pay = std::get_if<Pay>(&ev.payload)) {
    require_known(next, pay->participant);
    next.processes[pay->participant] =
        functional_transition_pay(next.processes[pay->participant], pay->amount)
            .process;
  } else if (const auto* rem = std::get_if<Remedy>(&ev.payload)) {
    require_known(next, rem->participant);
    if (rem->action == "remake_item") {
      // the spoiled order goes back on the bench
      for (auto& [id, proc] : next.processes) {
        if (!proc.order_items.empty() &&
            (proc.phase == Phase::served || proc.phase == Phase::confirmed ||
             proc.phase == Phase::preparing)) {
          proc.phase = Phase::preparing;
          break;
        }
      }
    }
  } else if (const auto* ph = std::get_if<Physical>(&ev.payload)) {
    require_known(next, ph->participant);
  } else if (const auto* re = std::get_if<BystanderReaction>(&ev.payload)) {
    require_known(next, re->participant);
  }

  return next;
}

}  // namespace facework
