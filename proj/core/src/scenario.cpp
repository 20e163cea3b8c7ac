#include "facework/scenario.hpp"

#include <algorithm>
#include <sstream>

#include "facework/errors.hpp"
#include "parse_util.hpp"

namespace facework {

using detail::TokenCursor;
using detail::escape_string;
using detail::format_hundredths;

const char* to_string(Role r) {
  switch (r) {
    case Role::agent: return "agent";
    case Role::client: return "client";
    case Role::bystander: return "bystander";
  }
  return "?";
}

const char* to_string(Tie t) {
  switch (t) {
    case Tie::strangers: return "strangers";
    case Tie::acquainted: return "acquainted";
    case Tie::close: return "close";
  }
  return "?";
}

const char* to_string(ReactionTone t) {
  return t == ReactionTone::mock ? "mock" : "neutral";
}

namespace {

void expect_keyword(TokenCursor& cur, const std::string& word) {
  if (!cur.accept_ident(word))
    throw ParseError(cur.peek().loc, "keyword '" + word + "'");
}

std::optional<Role> role_from(const std::string& s) {
  if (s == "agent") return Role::agent;
  if (s == "client") return Role::client;
  if (s == "bystander") return Role::bystander;
  return std::nullopt;
}

std::optional<Tie> tie_from(const std::string& s) {
  if (s == "strangers") return Tie::strangers;
  if (s == "acquainted") return Tie::acquainted;
  if (s == "close") return Tie::close;
  return std::nullopt;
}

Vec2 expect_point(TokenCursor& cur) {
  Vec2 v;
  v.x = cur.expect_hundredths("x coordinate (metres)");
  cur.expect_punct(",");
  v.y = cur.expect_hundredths("y coordinate (metres)");
  return v;
}

void require_participant(const Scenario& sc, const std::string& id,
                         const std::string& where) {
  for (const auto& p : sc.cast)
    if (p.id == id) return;
  throw SchemaError(where, "unknown participant: " + id);
}

DialogueAct parse_say(TokenCursor& cur, const Scenario& sc) {
  DialogueAct act;
  act.speaker = cur.expect_ident("speaker");
  require_participant(sc, act.speaker, "say");
  cur.expect_punct("->");
  while (true) {
    std::string a = cur.expect_ident("addressee");
    require_participant(sc, a, "say");
    act.addressees.push_back(a);
    if (!cur.accept_punct(",")) break;
  }
  expect_keyword(cur, "act");
  cur.expect_punct("=");
  std::string kind = cur.expect_ident("act kind");
  auto k = act_kind_from_string(kind);
  if (!k) throw SchemaError("say", "unknown act kind: " + kind);
  act.kind = *k;

  while (true) {
    if (cur.accept_ident("item")) {
      cur.expect_punct("=");
      act.item = cur.expect_ident("item name");
    } else if (cur.accept_ident("qform")) {
      cur.expect_punct("=");
      std::string f = cur.expect_ident("question form");
      if (f == "yes_no") {
        act.question_form = QuestionForm::yes_no;
      } else if (f == "open") {
        act.question_form = QuestionForm::open_ended;
      } else if (f == "alt") {
        act.question_form = QuestionForm::alternative;
        cur.expect_punct("(");
        while (true) {
          act.alternatives.push_back(cur.expect_ident("alternative"));
          if (!cur.accept_punct(",")) break;
        }
        cur.expect_punct(")");
      } else {
        throw SchemaError("say", "unknown question form: " + f);
      }
    } else if (cur.accept_ident("polarity")) {
      cur.expect_punct("=");
      std::string p = cur.expect_ident("yes or no");
      if (p == "yes") act.answer_polarity = Polarity::yes;
      else if (p == "no") act.answer_polarity = Polarity::no;
      else throw SchemaError("say", "polarity must be yes or no");
    } else if (cur.accept_ident("referent")) {
      cur.expect_punct("=");
      act.referent = cur.expect_ident("referent category");
    } else if (cur.accept_ident("tie")) {
      cur.expect_punct("=");
      std::string t = cur.expect_ident("tie level");
      auto tie = tie_from(t);
      if (!tie) throw SchemaError("say", "unknown tie level: " + t);
      act.presupposed_tie = tie;
    } else if (cur.accept_ident("topics")) {
      cur.expect_punct("=");
      cur.expect_punct("[");
      if (!cur.accept_punct("]")) {
        while (true) {
          act.topics.push_back(cur.expect_ident("topic"));
          if (cur.accept_punct("]")) break;
          cur.expect_punct(",");
        }
      }
    } else if (cur.accept_ident("vol")) {
      cur.expect_punct("=");
      act.volume = static_cast<int>(cur.expect_int("volume 0..10"));
      if (act.volume < 0 || act.volume > 10)
        throw SchemaError("say", "volume outside 0..10");
    } else if (cur.accept_ident("amount")) {
      cur.expect_punct("=");
      act.amount = cur.expect_hundredths("amount");
    } else if (cur.accept_ident("mitigated")) {
      act.mitigated = true;
    } else if (cur.peek().kind == detail::TokKind::string) {
      act.surface = cur.expect_string("surface wording");
    } else {
      break;
    }
  }

  if (act.kind == ActKind::ask && !act.question_form)
    throw SchemaError("say", "ask needs qform=");
  if (act.kind == ActKind::answer && !act.answer_polarity && !act.item)
    throw SchemaError("say", "answer needs polarity= or item=");
  if (act.kind == ActKind::request && !act.item)
    throw SchemaError("say", "request needs item=");
  return act;
}

EventPayload parse_event_payload(TokenCursor& cur, const Scenario& sc) {
  std::string form = cur.expect_ident("event form");
  if (form == "say") return Say{parse_say(cur, sc)};
  if (form == "move") {
    Move mv;
    mv.participant = cur.expect_ident("participant");
    require_participant(sc, mv.participant, "move");
    mv.to.x = cur.expect_hundredths("x coordinate (metres)");
    mv.to.y = cur.expect_hundredths("y coordinate (metres)");
    return mv;
  }
  if (form == "physical") {
    Physical ph;
    ph.participant = cur.expect_ident("participant");
    require_participant(sc, ph.participant, "physical");
    std::string m = cur.expect_ident("mishap kind");
    if (m == "spill") ph.mishap = Mishap::spill;
    else if (m == "drop") ph.mishap = Mishap::drop;
    else if (m == "bump") ph.mishap = Mishap::bump;
    else throw SchemaError("physical", "unknown mishap: " + m);
    ph.object = cur.expect_ident("object");
    return ph;
  }
  if (form == "noise") {
    Noise n;
    expect_keyword(cur, "level");
    cur.expect_punct("=");
    n.level = static_cast<int>(cur.expect_int("noise level 0..10"));
    if (n.level < 0 || n.level > 10)
      throw SchemaError("noise", "level outside 0..10");
    expect_keyword(cur, "span");
    cur.expect_punct("=");
    n.span_from = static_cast<int>(cur.expect_int("span start ordinal"));
    cur.expect_punct("..");
    n.span_to = static_cast<int>(cur.expect_int("span end ordinal"));
    if (n.span_from > n.span_to)
      throw SchemaError("noise", "span start after span end");
    return n;
  }
  if (form == "enter") {
    Enter e{cur.expect_ident("participant")};
    require_participant(sc, e.participant, "enter");
    return e;
  }
  if (form == "depart") {
    Depart d{cur.expect_ident("participant")};
    require_participant(sc, d.participant, "depart");
    return d;
  }
  if (form == "queue") {
    QueueJoin q{cur.expect_ident("participant")};
    require_participant(sc, q.participant, "queue");
    return q;
  }
  if (form == "react") {
    BystanderReaction r;
    r.participant = cur.expect_ident("participant");
    require_participant(sc, r.participant, "react");
    std::string t = cur.expect_ident("tone (mock|neutral)");
    if (t == "mock") r.tone = ReactionTone::mock;
    else if (t == "neutral") r.tone = ReactionTone::neutral;
    else throw SchemaError("react", "unknown tone: " + t);
    return r;
  }
  if (form == "pay") {
    Pay p;
    p.participant = cur.expect_ident("participant");
    require_participant(sc, p.participant, "pay");
    expect_keyword(cur, "amount");
    cur.expect_punct("=");
    p.amount = cur.expect_hundredths("amount");
    return p;
  }
  if (form == "remedy") {
    Remedy r;
    r.participant = cur.expect_ident("participant");
    require_participant(sc, r.participant, "remedy");
    r.action = cur.expect_ident("remedy action");
    return r;
  }
  throw SchemaError("event", "unknown event form: " + form);
}

ArchFilter parse_arch_opt(TokenCursor& cur) {
  if (!cur.accept_ident("arch")) return ArchFilter::both;
  cur.expect_punct("=");
  std::string a = cur.expect_ident("A or B");
  if (a == "A") return ArchFilter::A;
  if (a == "B") return ArchFilter::B;
  throw SchemaError("expect", "arch must be A or B");
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  TokenCursor cur(detail::tokenize(text));
  Scenario sc;
  cur.skip_newlines();
  expect_keyword(cur, "scenario");
  sc.id = cur.expect_ident("scenario id");
  cur.expect_end_of_line();

  bool saw_event = false;
  Tick last_time = 0;

  while (true) {
    cur.skip_newlines();
    if (cur.at_end()) break;
    std::string head = cur.expect_ident("scenario statement");

    if (head == "occasion") {
      sc.occasion = cur.expect_ident("occasion id");
    } else if (head == "pack") {
      sc.pack_id = cur.expect_ident("pack id");
    } else if (head == "landmark") {
      std::string id = cur.expect_ident("landmark id");
      if (sc.landmarks.count(id))
        throw SchemaError("landmark", "duplicate landmark: " + id);
      Vec2 at;
      at.x = cur.expect_hundredths("x coordinate (metres)");
      at.y = cur.expect_hundredths("y coordinate (metres)");
      sc.landmarks[id] = at;
    } else if (head == "object") {
      EnvironmentObject obj;
      obj.id = cur.expect_ident("object id");
      for (const auto& o : sc.objects)
        if (o.id == obj.id)
          throw SchemaError("object", "duplicate object: " + obj.id);
      expect_keyword(cur, "kind");
      cur.expect_punct("=");
      obj.category = cur.expect_ident("object kind");
      expect_keyword(cur, "at");
      cur.expect_punct("=");
      obj.at = expect_point(cur);
      sc.objects.push_back(std::move(obj));
    } else if (head == "participant") {
      Participant p;
      p.id = cur.expect_ident("participant id");
      for (const auto& existing : sc.cast)
        if (existing.id == p.id)
          throw SchemaError("participant", "duplicate participant: " + p.id);
      expect_keyword(cur, "role");
      cur.expect_punct("=");
      std::string role = cur.expect_ident("role");
      auto r = role_from(role);
      if (!r) throw SchemaError("participant", "unknown role: " + role);
      p.role = *r;
      while (true) {
        if (cur.accept_ident("with")) {
          cur.expect_punct("=");
          p.with_group = cur.expect_ident("with group");
        } else if (cur.accept_ident("at")) {
          cur.expect_punct("=");
          p.spawn = expect_point(cur);
        } else {
          break;
        }
      }
      sc.cast.push_back(std::move(p));
    } else if (head == "tie") {
      std::string a = cur.expect_ident("participant");
      std::string b = cur.expect_ident("participant");
      require_participant(sc, a, "tie");
      require_participant(sc, b, "tie");
      std::string level = cur.expect_ident("tie level");
      auto tie = tie_from(level);
      if (!tie) throw SchemaError("tie", "unknown tie level: " + level);
      auto key = std::minmax(a, b);
      sc.ties[{key.first, key.second}] = *tie;
    } else if (head == "item") {
      std::string id = cur.expect_ident("item id");
      if (sc.catalog.prices.count(id))
        throw SchemaError("item", "duplicate item: " + id);
      expect_keyword(cur, "price");
      cur.expect_punct("=");
      sc.catalog.prices[id] = cur.expect_hundredths("price");
      if (cur.accept_ident("compat")) {
        cur.expect_punct("=");
        while (true) {
          std::string other = cur.expect_ident("compatible item");
          auto key = std::minmax(id, other);
          sc.catalog.compatible.insert({key.first, key.second});
          if (!cur.accept_punct(",")) break;
        }
      }
    } else if (head == "event") {
      expect_keyword(cur, "t");
      cur.expect_punct("=");
      Tick t = cur.expect_int("event time (seconds)");
      if (saw_event && t < last_time)
        throw SchemaError("event", "event times must not decrease");
      saw_event = true;
      last_time = t;
      sc.events.push_back({t, parse_event_payload(cur, sc)});
    } else if (head == "expect") {
      std::string what = cur.expect_ident("expectation form");
      if (what == "disruption") {
        ExpectDisruption e;
        std::string kind = cur.expect_ident("disruption kind");
        auto k = disruption_kind_from_string(kind);
        if (!k) throw SchemaError("expect", "unknown disruption kind: " + kind);
        e.kind = *k;
        expect_keyword(cur, "at");
        cur.expect_punct("=");
        e.at_ordinal = static_cast<int>(cur.expect_int("event ordinal"));
        e.arch = parse_arch_opt(cur);
        sc.expectations.emplace_back(e);
      } else if (what == "recovery") {
        ExpectRecovery e;
        std::string strat = cur.expect_ident("strategy id");
        auto s = strategy_kind_from_string(strat);
        if (!s) throw SchemaError("expect", "unknown strategy: " + strat);
        e.strategy = *s;
        expect_keyword(cur, "by");
        cur.expect_punct("=");
        e.by = cur.expect_ident("participant");
        require_participant(sc, e.by, "expect recovery");
        e.arch = parse_arch_opt(cur);
        sc.expectations.emplace_back(e);
      } else if (what == "no_disruption") {
        ExpectNoDisruption e;
        e.from_ordinal = static_cast<int>(cur.expect_int("span start"));
        cur.expect_punct("..");
        e.to_ordinal = static_cast<int>(cur.expect_int("span end"));
        if (e.from_ordinal > e.to_ordinal)
          throw SchemaError("expect", "span start after span end");
        e.arch = parse_arch_opt(cur);
        sc.expectations.emplace_back(e);
      } else {
        throw SchemaError("expect", "unknown expectation form: " + what);
      }
    } else {
      throw SchemaError(head, "unknown scenario statement");
    }
    cur.expect_end_of_line();
  }

  // whole-script checks
  if (sc.occasion.empty()) throw SchemaError("occasion", "occasion missing");
  int agents = 0;
  for (const auto& p : sc.cast)
    if (p.role == Role::agent) ++agents;
  if (agents != 1)
    throw SchemaError("participant", "exactly one agent required");
  if (!sc.landmarks.count("counter"))
    throw SchemaError("landmark", "landmark counter required");
  int n = static_cast<int>(sc.events.size());
  for (const auto& ev : sc.events)
    if (const auto* noise = std::get_if<Noise>(&ev.payload))
      if (noise->span_to >= n)
        throw SchemaError("noise", "span ordinal out of range");
  for (const auto& e : sc.expectations) {
    if (const auto* d = std::get_if<ExpectDisruption>(&e)) {
      if (d->at_ordinal < 0 || d->at_ordinal >= n)
        throw SchemaError("expect", "ordinal out of range");
    } else if (const auto* nd = std::get_if<ExpectNoDisruption>(&e)) {
      if (nd->from_ordinal < 0 || nd->to_ordinal >= n)
        throw SchemaError("expect", "span ordinal out of range");
    }
  }
  return sc;
}

namespace {

std::string render_point(const Vec2& v) {
  return format_hundredths(v.x) + "," + format_hundredths(v.y);
}

std::string render_say(const Say& say) {
  const DialogueAct& act = say.act;
  std::ostringstream os;
  os << "say " << act.speaker << " -> ";
  for (size_t i = 0; i < act.addressees.size(); ++i) {
    if (i) os << ",";
    os << act.addressees[i];
  }
  os << " act=" << to_string(act.kind);
  if (act.item) os << " item=" << *act.item;
  if (act.question_form) {
    os << " qform=";
    if (*act.question_form == QuestionForm::alternative) {
      os << "alt(";
      for (size_t i = 0; i < act.alternatives.size(); ++i) {
        if (i) os << ",";
        os << act.alternatives[i];
      }
      os << ")";
    } else {
      os << to_string(*act.question_form);
    }
  }
  if (act.answer_polarity)
    os << " polarity=" << (*act.answer_polarity == Polarity::yes ? "yes" : "no");
  if (act.referent) os << " referent=" << *act.referent;
  if (act.presupposed_tie) os << " tie=" << to_string(*act.presupposed_tie);
  if (!act.topics.empty()) {
    os << " topics=[";
    for (size_t i = 0; i < act.topics.size(); ++i) {
      if (i) os << ",";
      os << act.topics[i];
    }
    os << "]";
  }
  if (act.volume != 5) os << " vol=" << act.volume;
  if (act.amount) os << " amount=" << format_hundredths(*act.amount);
  if (act.mitigated) os << " mitigated";
  if (!act.surface.empty()) os << " " << escape_string(act.surface);
  return os.str();
}

}  // namespace

std::string render_event_payload(const EventPayload& payload) {
  std::ostringstream os;
  if (const auto* say = std::get_if<Say>(&payload)) {
    return render_say(*say);
  } else if (const auto* mv = std::get_if<Move>(&payload)) {
    os << "move " << mv->participant << " " << format_hundredths(mv->to.x)
       << " " << format_hundredths(mv->to.y);
  } else if (const auto* ph = std::get_if<Physical>(&payload)) {
    os << "physical " << ph->participant << " " << to_string(ph->mishap) << " "
       << ph->object;
  } else if (const auto* no = std::get_if<Noise>(&payload)) {
    os << "noise level=" << no->level << " span=" << no->span_from << ".."
       << no->span_to;
  } else if (const auto* en = std::get_if<Enter>(&payload)) {
    os << "enter " << en->participant;
  } else if (const auto* de = std::get_if<Depart>(&payload)) {
    os << "depart " << de->participant;
  } else if (const auto* qj = std::get_if<QueueJoin>(&payload)) {
    os << "queue " << qj->participant;
  } else if (const auto* re = std::get_if<BystanderReaction>(&payload)) {
    os << "react " << re->participant << " " << to_string(re->tone);
  } else if (const auto* pay = std::get_if<Pay>(&payload)) {
    os << "pay " << pay->participant
       << " amount=" << format_hundredths(pay->amount);
  } else if (const auto* rem = std::get_if<Remedy>(&payload)) {
    os << "remedy " << rem->participant << " " << rem->action;
  }
  return os.str();
}

std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream os;
  os << "scenario " << sc.id << "\n";
  os << "occasion " << sc.occasion << "\n";
  os << "pack " << sc.pack_id << "\n";
  for (const auto& [id, at] : sc.landmarks)
    os << "landmark " << id << " " << format_hundredths(at.x) << " "
       << format_hundredths(at.y) << "\n";
  for (const auto& obj : sc.objects)
    os << "object " << obj.id << " kind=" << obj.category
       << " at=" << render_point(obj.at) << "\n";
  for (const auto& p : sc.cast) {
    os << "participant " << p.id << " role=" << to_string(p.role);
    if (p.with_group) os << " with=" << *p.with_group;
    os << " at=" << render_point(p.spawn) << "\n";
  }
  for (const auto& [key, tie] : sc.ties)
    os << "tie " << key.first << " " << key.second << " " << to_string(tie)
       << "\n";
  for (const auto& [id, price] : sc.catalog.prices) {
    os << "item " << id << " price=" << format_hundredths(price);
    std::string sep = " compat=";
    for (const auto& pair : sc.catalog.compatible) {
      if (pair.first != id) continue;
      os << sep << pair.second;
      sep = ",";
    }
    os << "\n";
  }
  for (const auto& ev : sc.events)
    os << "event t=" << ev.time << " " << render_event_payload(ev.payload)
       << "\n";
  for (const auto& e : sc.expectations) {
    if (const auto* d = std::get_if<ExpectDisruption>(&e)) {
      os << "expect disruption " << to_string(d->kind) << " at=" << d->at_ordinal;
      if (d->arch != ArchFilter::both)
        os << " arch=" << (d->arch == ArchFilter::A ? "A" : "B");
    } else if (const auto* r = std::get_if<ExpectRecovery>(&e)) {
      os << "expect recovery " << to_string(r->strategy) << " by=" << r->by;
      if (r->arch != ArchFilter::both)
        os << " arch=" << (r->arch == ArchFilter::A ? "A" : "B");
    } else if (const auto* nd = std::get_if<ExpectNoDisruption>(&e)) {
      os << "expect no_disruption " << nd->from_ordinal << ".." << nd->to_ordinal;
      if (nd->arch != ArchFilter::both)
        os << " arch=" << (nd->arch == ArchFilter::A ? "A" : "B");
    }
    os << "\n";
  }
  return os.str();
}

ScriptEvent parse_script_event(const std::string& text, const Scenario& sc) {
  detail::TokenCursor cur(detail::tokenize(text));
  cur.skip_newlines();
  std::string head = cur.expect_ident("'event'");
  if (head != "event")
    throw ParseError(cur.peek().loc, "'event' statement");
  expect_keyword(cur, "t");
  cur.expect_punct("=");
  Tick t = cur.expect_int("event time (seconds)");
  ScriptEvent ev{t, parse_event_payload(cur, sc)};
  cur.expect_end_of_line();
  return ev;
}

}  // namespace facework
