#include "facework/culture.hpp"

#include <algorithm>
#include <sstream>

#include "parse_util.hpp"

namespace facework {

using detail::TokenCursor;
using detail::TokKind;

namespace {

// ----- occasion setting schema -------------------------------------------

void check_range(const std::string& key, long long v, long long lo,
                 long long hi) {
  if (v < lo || v > hi)
    throw SchemaError(key, "value out of range");
}

std::vector<std::string> parse_ident_list(TokenCursor& cur) {
  std::vector<std::string> out;
  cur.expect_punct("[");
  if (!cur.accept_punct("]")) {
    out.push_back(cur.expect_ident("identifier"));
    while (cur.accept_punct(",")) out.push_back(cur.expect_ident("identifier"));
    cur.expect_punct("]");
  }
  return out;
}

void apply_setting(OccasionNorms& n, const std::string& key, TokenCursor& cur) {
  if (key == "membrane") {
    for (const auto& t : parse_ident_list(cur)) n.membrane.insert(t);
  } else if (key == "safe_topics") {
    n.safe_topics = parse_ident_list(cur);
  } else if (key == "queue_policy") {
    std::string v = cur.expect_ident("queue policy");
    if (v != "fifo") throw SchemaError(key, "unsupported policy: " + v);
    n.queue_policy = v;
  } else if (key == "proxemic_violation_m") {
    long long v = cur.expect_hundredths("number");  // metres -> centimetres
    if (v <= 0) throw SchemaError(key, "must be positive");
    n.proxemic_violation_cm = v;
  } else if (key == "volume_max") {
    long long v = cur.expect_int("whole number");
    check_range(key, v, 0, 10);
    n.volume_max = static_cast<int>(v);
  } else if (key == "audibility_threshold") {
    long long v = cur.expect_int("whole number");
    check_range(key, v, 0, 10);
    n.audibility_threshold = static_cast<int>(v);
  } else if (key == "timeout_order_start_s") {
    long long v = cur.expect_int("whole number");
    if (v <= 0) throw SchemaError(key, "must be positive");
    n.timeout_order_start_s = v;
  } else if (key == "timeout_answer_s") {
    long long v = cur.expect_int("whole number");
    if (v <= 0) throw SchemaError(key, "must be positive");
    n.timeout_answer_s = v;
  } else if (key == "turn_hold_max_s") {
    long long v = cur.expect_int("whole number");
    if (v <= 0) throw SchemaError(key, "must be positive");
    n.turn_hold_max_s = v;
  } else {
    throw SchemaError(key, "unknown occasion setting");
  }
}

std::vector<std::string> parse_string_list(TokenCursor& cur) {
  std::vector<std::string> out;
  cur.expect_punct("[");
  out.push_back(cur.expect_string("string"));
  while (cur.accept_punct(",")) out.push_back(cur.expect_string("string"));
  cur.expect_punct("]");
  return out;
}

}  // namespace

CulturePack parse_culture_pack(const std::string& text) {
  TokenCursor cur(detail::tokenize(text));
  CulturePack pack;

  cur.skip_newlines();
  if (!cur.accept_ident("culture"))
    throw ParseError(cur.peek().loc, "'culture' declaration");
  pack.id = cur.expect_string("culture name string");
  cur.expect_end_of_line();

  while (!cur.at_end()) {
    cur.skip_newlines();
    if (cur.at_end()) break;

    if (cur.accept_ident("occasion")) {
      std::string id = cur.expect_ident("occasion id");
      if (pack.occasions.count(id))
        throw SchemaError(id, "duplicate occasion");
      OccasionNorms norms;
      norms.occasion_id = id;
      cur.expect_punct("{");
      cur.expect_end_of_line();
      while (!cur.accept_punct("}")) {
        std::string key = cur.expect_ident("setting key or '}'");
        cur.expect_punct("=");
        apply_setting(norms, key, cur);
        cur.expect_end_of_line();
      }
      cur.expect_end_of_line();
      for (const auto& t : norms.safe_topics)
        if (norms.membrane.count(t))
          throw SchemaError("safe_topics",
                            "topic also listed in membrane: " + t);
      pack.occasions.emplace(id, std::move(norms));
      continue;
    }

    if (cur.accept_ident("template")) {
      std::string name = cur.expect_ident("strategy id");
      std::optional<std::string> topic;
      if (cur.accept_punct(".")) topic = cur.expect_ident("topic");
      cur.expect_punct("=");
      auto strings = parse_string_list(cur);
      cur.expect_end_of_line();
      if (topic) {
        if (name != "change_topic")
          throw SchemaError(name, "only change_topic templates take a topic");
        if (pack.topic_openers.count(*topic))
          throw SchemaError(*topic, "duplicate topic opener");
        pack.topic_openers.emplace(*topic, std::move(strings));
      } else {
        auto kind = strategy_kind_from_string(name);
        if (!kind) throw SchemaError(name, "unknown strategy id");
        if (pack.templates.count(*kind))
          throw SchemaError(name, "duplicate template");
        pack.templates.emplace(*kind, std::move(strings));
      }
      continue;
    }

    if (cur.accept_ident("strategy")) {
      std::string kind_id = cur.expect_ident("disruption kind");
      auto kind = disruption_kind_from_string(kind_id);
      if (!kind) throw SchemaError(kind_id, "unknown disruption kind");
      cur.expect_punct(".");
      std::string side = cur.expect_ident("'self' or 'other'");
      if (side != "self" && side != "other")
        throw SchemaError(side, "side must be self or other");
      bool self = side == "self";
      cur.expect_punct("->");
      StrategyChain chain;
      chain.mode =
          default_strategy_chain(*kind, self, Intent::ambiguous).mode;
      for (const auto& id : parse_ident_list(cur)) {
        auto s = strategy_kind_from_string(id);
        if (!s) throw SchemaError(id, "unknown strategy id");
        chain.steps.push_back(*s);
      }
      if (chain.steps.empty())
        throw SchemaError(kind_id, "empty strategy chain");
      cur.expect_end_of_line();
      if (pack.strategy_overrides.count({*kind, self}))
        throw SchemaError(kind_id + "." + side, "duplicate strategy override");
      pack.strategy_overrides.emplace(std::make_pair(*kind, self),
                                      std::move(chain));
      continue;
    }

    throw ParseError(cur.peek().loc,
                     "'occasion', 'template' or 'strategy' declaration");
  }
  return pack;
}

StrategyChain resolved_chain(const CulturePack& pack, DisruptionKind kind,
                             bool breaching_actor_is_agent, Intent perceived,
                             std::optional<RepairableSubKind> sub_kind) {
  auto it = pack.strategy_overrides.find({kind, breaching_actor_is_agent});
  if (it != pack.strategy_overrides.end()) return it->second;
  return default_strategy_chain(kind, breaching_actor_is_agent, perceived,
                                sub_kind);
}

std::set<RecoveryStrategyKind> reachable_strategies(const CulturePack& pack) {
  std::set<RecoveryStrategyKind> out;
  const Intent intents[] = {Intent::intended, Intent::unintended,
                            Intent::ambiguous};
  const RepairableSubKind subs[] = {
      RepairableSubKind::non_reception, RepairableSubKind::misunderstanding,
      RepairableSubKind::speech_error, RepairableSubKind::indexical};
  for (DisruptionKind k : all_disruption_kinds()) {
    for (bool self : {false, true}) {
      for (Intent i : intents) {
        if (k == DisruptionKind::S10_repairables) {
          for (auto sub : subs)
            for (auto s : resolved_chain(pack, k, self, i, sub).steps)
              out.insert(s);
        } else {
          for (auto s : resolved_chain(pack, k, self, i, std::nullopt).steps)
            out.insert(s);
        }
      }
    }
  }
  return out;
}

std::vector<Diagnostic> validate_pack(const CulturePack& pack) {
  std::vector<Diagnostic> out;
  auto err = [&](const std::string& m) {
    out.push_back({Severity::error, {}, m});
  };
  auto warn = [&](const std::string& m) {
    out.push_back({Severity::warning, {}, m});
  };

  if (pack.occasions.empty()) err("pack declares no occasions");

  auto reachable = reachable_strategies(pack);
  for (auto s : reachable) {
    if (strategy_is_nonverbal(s)) continue;
    if (s == RecoveryStrategyKind::change_topic) {
      // each safe topic needs wording, either a dedicated opener or the
      // generic template with a {topic} slot
      bool generic = pack.templates.count(RecoveryStrategyKind::change_topic) > 0;
      for (const auto& [oid, norms] : pack.occasions)
        for (const auto& t : norms.safe_topics)
          if (!generic && !pack.topic_openers.count(t))
            err("no wording to open safe topic '" + t + "' (occasion " + oid +
                ")");
      continue;
    }
    auto it = pack.templates.find(s);
    if (it == pack.templates.end() || it->second.empty())
      err(std::string("reachable strategy has no template: ") + to_string(s));
  }

  for (const auto& [key, tmpls] : pack.templates) {
    (void)tmpls;
    if (!reachable.count(key) && key != RecoveryStrategyKind::change_topic)
      warn(std::string("template never referenced: ") + to_string(key));
  }
  for (const auto& [topic, tmpls] : pack.topic_openers) {
    (void)tmpls;
    bool used = false;
    for (const auto& [oid, norms] : pack.occasions) {
      (void)oid;
      if (std::find(norms.safe_topics.begin(), norms.safe_topics.end(),
                    topic) != norms.safe_topics.end())
        used = true;
    }
    if (!used) warn("topic opener never referenced: " + topic);
  }

  // a step one cannot skip must not be buried behind skippable ones
  for (const auto& [key, chain] : pack.strategy_overrides) {
    for (size_t i = 1; i < chain.steps.size(); ++i)
      if (strategy_form(chain.steps[i]) == StrategyForm::must)
        err(std::string("must-form step not first in override for ") +
            to_string(key.first));
  }
  return out;
}

std::string render_template(const CulturePack& pack, RecoveryStrategyKind s,
                            const std::map<std::string, std::string>& slots,
                            long long counter) {
  auto it = pack.templates.find(s);
  if (it == pack.templates.end() || it->second.empty())
    throw NoTemplate(to_string(s));
  const auto& list = it->second;
  long long n = static_cast<long long>(list.size());
  const std::string& raw = list[static_cast<size_t>(((counter % n) + n) % n)];

  std::string out;
  for (size_t i = 0; i < raw.size();) {
    if (raw[i] == '{') {
      size_t close = raw.find('}', i);
      if (close == std::string::npos) {
        out += raw[i++];
        continue;
      }
      std::string name = raw.substr(i + 1, close - i - 1);
      auto sit = slots.find(name);
      if (sit == slots.end()) throw MissingSlot(name);
      out += sit->second;
      i = close + 1;
    } else {
      out += raw[i++];
    }
  }
  return out;
}

std::optional<std::string> render_topic_opener(const CulturePack& pack,
                                               const std::string& topic,
                                               long long counter) {
  auto it = pack.topic_openers.find(topic);
  if (it != pack.topic_openers.end() && !it->second.empty()) {
    const auto& list = it->second;
    long long n = static_cast<long long>(list.size());
    return list[static_cast<size_t>(((counter % n) + n) % n)];
  }
  if (pack.templates.count(RecoveryStrategyKind::change_topic))
    return render_template(pack, RecoveryStrategyKind::change_topic,
                           {{"topic", topic}}, counter);
  return std::nullopt;
}

// ----- serialization -------------------------------------------------------

std::string serialize_pack(const CulturePack& pack) {
  std::ostringstream os;
  os << "culture " << detail::escape_string(pack.id) << "\n";

  for (const auto& [id, n] : pack.occasions) {
    os << "\noccasion " << id << " {\n";
    auto idents = [&](const auto& items) {
      std::string s = "[";
      bool first = true;
      for (const auto& t : items) {
        if (!first) s += ", ";
        s += t;
        first = false;
      }
      return s + "]";
    };
    os << "  membrane = " << idents(n.membrane) << "\n";
    os << "  proxemic_violation_m = "
       << detail::format_hundredths(n.proxemic_violation_cm) << "\n";
    os << "  volume_max = " << n.volume_max << "\n";
    os << "  audibility_threshold = " << n.audibility_threshold << "\n";
    os << "  queue_policy = " << n.queue_policy << "\n";
    os << "  timeout_order_start_s = " << n.timeout_order_start_s << "\n";
    os << "  timeout_answer_s = " << n.timeout_answer_s << "\n";
    os << "  turn_hold_max_s = " << n.turn_hold_max_s << "\n";
    os << "  safe_topics = " << idents(n.safe_topics) << "\n";
    os << "}\n";
  }

  auto strings = [&](const std::vector<std::string>& items) {
    std::string s = "[";
    bool first = true;
    for (const auto& t : items) {
      if (!first) s += ", ";
      s += detail::escape_string(t);
      first = false;
    }
    return s + "]";
  };

  if (!pack.templates.empty() || !pack.topic_openers.empty()) os << "\n";
  for (const auto& [kind, tmpls] : pack.templates)
    os << "template " << to_string(kind) << " = " << strings(tmpls) << "\n";
  for (const auto& [topic, tmpls] : pack.topic_openers)
    os << "template change_topic." << topic << " = " << strings(tmpls) << "\n";

  if (!pack.strategy_overrides.empty()) os << "\n";
  for (const auto& [key, chain] : pack.strategy_overrides) {
    os << "strategy " << to_string(key.first) << "."
       << (key.second ? "self" : "other") << " -> [";
    for (size_t i = 0; i < chain.steps.size(); ++i) {
      if (i) os << ", ";
      os << to_string(chain.steps[i]);
    }
    os << "]\n";
  }
  return os.str();
}

// ----- built-in pack -------------------------------------------------------

namespace {
const char* kDefaultPackText = R"PACK(# Default service-counter culture: thresholds and wording for a casual bar.
culture "generic"

occasion casual_bar {
  membrane = [salary, religion, politics, evacuation, gender, social_class]
  proxemic_violation_m = 0.5
  volume_max = 7
  audibility_threshold = 6
  queue_policy = fifo
  timeout_order_start_s = 20
  timeout_answer_s = 6
  turn_hold_max_s = 45
  safe_topics = [busy_day, weather, sports]
}

template minimize = ["Never mind, it is not a problem.", "Don't worry. There are days like that."]
template apologize = ["I am sorry.", "I am so sorry, that was my fault."]
template excuse = ["It is very busy right now."]
template offer_compensation = ["Let me offer you a better price for the trouble."]
template initiate_process = ["What would you like?"]
template repeat_question = ["Let me ask you again."]
template ask_to_proceed = ["Have you already paid?"]
template state_norm = ["I understand but even those who were there before you are in a hurry."]
template boundary_statement = ["Excuse me, but there are many people waiting for me."]
template request_repeat = ["I am sorry, could you repeat that, please?"]
template signal_misunderstanding = ["Do you prefer brown sugar then?", "Both of them?"]
template self_repair = ["I mean the other one, sorry."]
template clarify_referent = ["Which one do you mean?"]
template ignore_and_continue = ["So, anything else for you?"]
template benevolent_joke = ["Ha, we all have days like this one."]
template criticize = ["That is not something we discuss here."]
template triangling = ["By the way, your order will be ready in a moment."]
template hesitation_preface = ["Hm, "]
template change_topic.busy_day = ["I guess this is a busy day for you."]
template change_topic.weather = ["They say it will stay above 30C for another couple of days."]
template change_topic.sports = ["Did you watch the game yesterday?"]

strategy F1.other -> [minimize, change_topic]
strategy S6.other -> [change_topic]
)PACK";
}  // namespace

const std::string& default_pack_text() {
  static const std::string text = kDefaultPackText;
  return text;
}

const CulturePack& default_pack() {
  static const CulturePack pack = parse_culture_pack(default_pack_text());
  return pack;
}

}  // namespace facework
