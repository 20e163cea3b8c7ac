#include "facework/repl.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "facework/errors.hpp"

namespace facework {

Scenario default_repl_scenario(const std::string& occasion,
                               const std::string& pack_id) {
  Scenario sc;
  sc.id = "repl";
  sc.occasion = occasion;
  sc.pack_id = pack_id;
  sc.landmarks["counter"] = {0, 0};
  sc.cast.push_back({"agent", Role::agent, std::nullopt, {0, 80}});
  sc.cast.push_back({"client1", Role::client, std::nullopt, {300, 300}});
  sc.cast.push_back({"client2", Role::client, std::nullopt, {500, 500}});
  sc.ties[{"client1", "client2"}] = Tie::strangers;
  sc.catalog.prices = {{"espresso", 110},        {"caffe_macchiato", 130},
                       {"latte", 200},           {"coffee", 250},
                       {"coffee_with_milk", 280}, {"water", 80}};
  sc.catalog.compatible.insert({"caffe_macchiato", "espresso"});
  sc.catalog.compatible.insert({"coffee", "coffee_with_milk"});
  return sc;
}

namespace {

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void print_state(std::ostream& out, const InteractionState& st) {
  out << "state clock=" << st.clock << " last_index=" << st.last_index
      << "\n";
  for (const auto& p : st.cast) {
    out << "  " << p.id << " role=" << to_string(p.role)
        << " present=" << (st.is_present(p.id) ? "yes" : "no");
    auto pos = st.positions.find(p.id);
    if (pos != st.positions.end())
      out << " at=" << pos->second.x << "," << pos->second.y;
    auto proc = st.processes.find(p.id);
    if (proc != st.processes.end()) {
      out << " phase=" << to_string(proc->second.phase);
      if (!proc->second.order_items.empty()) {
        out << " order=";
        for (size_t i = 0; i < proc->second.order_items.size(); ++i)
          out << (i ? "," : "") << proc->second.order_items[i];
      }
      if (proc->second.amount_due > 0)
        out << " due_cents=" << proc->second.amount_due;
    }
    out << "\n";
  }
  int open = 0;
  for (const auto& pr : st.pairs)
    if (!pr.closed && !pr.voided) ++open;
  out << "  open_pairs=" << open << " topics=" << st.topic_history.size()
      << "\n";
}

}  // namespace

int run_repl(std::istream& in, std::ostream& out, const CulturePack& pack,
             const ReplOptions& opt) {
  Scenario sc = default_repl_scenario(opt.occasion, pack.id);
  SessionOptions sopt;
  sopt.arch = opt.arch;
  sopt.trace = opt.trace;
  SessionEngine engine(sc, pack, sopt);

  out << "shell pack=" << pack.id << " occasion=" << opt.occasion
      << " arch=" << to_string(opt.arch)
      << "  (event t=<s> <form> ..., :state, :trace on|off, :quit)\n";
  for (const auto& l : engine.result().lines) out << l << "\n";

  int ordinal = 0;
  Tick last_time = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    std::string cmd = trimmed(raw);
    if (cmd.empty() || cmd[0] == '#') continue;
    if (cmd == ":quit" || cmd == ":q") break;
    if (cmd == ":state") {
      print_state(out, engine.state());
      continue;
    }
    if (cmd == ":trace on") {
      engine.set_trace(true);
      out << "trace on\n";
      continue;
    }
    if (cmd == ":trace off") {
      engine.set_trace(false);
      out << "trace off\n";
      continue;
    }
    if (cmd[0] == ':') {
      out << "error: unknown command " << cmd << "\n";
      continue;
    }
    try {
      ScriptEvent ev = parse_script_event(cmd, sc);
      if (ev.time < last_time) {
        out << "error: event times must not decrease (last t=" << last_time
            << ")\n";
        continue;
      }
      last_time = ev.time;
      sc.events.push_back(ev);
      for (const auto& l : engine.step(ev, ordinal)) out << l << "\n";
      ++ordinal;
    } catch (const ParseError& e) {
      out << "error: " << e.what() << "\n";
    } catch (const SchemaError& e) {
      out << "error: " << e.what() << "\n";
    } catch (const UnknownItem& e) {
      out << "error: " << e.what() << "\n";
    }
  }

  size_t before = engine.result().lines.size();
  engine.finalize();
  const auto& lines = engine.result().lines;
  for (size_t i = before; i < lines.size(); ++i) out << lines[i] << "\n";

  if (!opt.record_path.empty()) {
    std::ofstream rec(opt.record_path);
    if (!rec) {
      out << "error: cannot write " << opt.record_path << "\n";
      return 1;
    }
    rec << serialize_scenario(sc);
    out << "recorded " << sc.events.size() << " events to " << opt.record_path
        << "\n";
  }
  return 0;
}

}  // namespace facework
