// Command line front end: run scenario scripts, validate culture packs,
// drive the interactive shell, print capability advisories, run suites.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "facework/advisor.hpp"
#include "facework/culture.hpp"
#include "facework/errors.hpp"
#include "facework/repl.hpp"
#include "facework/session.hpp"

namespace fs = std::filesystem;
using namespace facework;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Arch parse_arch(const std::string& s) {
  if (s == "A" || s == "a") return Arch::A;
  if (s == "B" || s == "b") return Arch::B;
  throw std::runtime_error("--arch must be A or B, got " + s);
}

CulturePack load_pack(const std::string& path) {
  if (path.empty()) return default_pack();
  CulturePack pack = parse_culture_pack(slurp(path));
  for (const auto& d : validate_pack(pack))
    if (d.severity == Severity::error)
      throw std::runtime_error(path + ": " + d.message);
  return pack;
}

// A scenario names its pack; a suite resolves the name to a file next to the
// scenario, in a packs/ sibling, or under the suite root.
CulturePack resolve_suite_pack(const Scenario& sc, const fs::path& scn_path,
                               const fs::path& root,
                               const std::string& forced) {
  if (!forced.empty()) return load_pack(forced);
  if (sc.pack_id == "generic") return default_pack();
  std::vector<fs::path> tries = {
      scn_path.parent_path() / (sc.pack_id + ".pack"),
      scn_path.parent_path() / "packs" / (sc.pack_id + ".pack"),
      root / "packs" / (sc.pack_id + ".pack"),
      root / (sc.pack_id + ".pack"),
  };
  for (const auto& p : tries)
    if (fs::exists(p)) return load_pack(p.string());
  throw std::runtime_error("pack '" + sc.pack_id + "' for " +
                           scn_path.string() + " not found");
}

int cmd_run(const std::string& scn_path, const std::string& pack_path,
            const std::string& arch_s, bool trace, int window,
            const std::string& out_path) {
  Scenario sc = parse_scenario(slurp(scn_path));
  CulturePack pack = load_pack(pack_path);
  SessionOptions opt;
  opt.arch = parse_arch(arch_s);
  opt.trace = trace;
  opt.window = window;
  RunResult res = run_session(sc, pack, opt);
  std::cout << res.transcript();
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << res.transcript();
  }
  return res.passed ? 0 : 1;
}

int cmd_validate(const std::string& pack_path) {
  CulturePack pack = parse_culture_pack(slurp(pack_path));
  auto diags = validate_pack(pack);
  bool bad = false;
  for (const auto& d : diags) {
    bool err = d.severity == Severity::error;
    bad = bad || err;
    std::cout << (err ? "error: " : "warning: ") << d.message << "\n";
  }
  if (!bad)
    std::cout << "ok pack=" << pack.id << " occasions=" << pack.occasions.size()
              << " templates=" << pack.templates.size() << "\n";
  return bad ? 1 : 0;
}

int cmd_advise(const std::string& answers_path,
               const std::string& profile_path) {
  AdvisorAnswers answers = parse_answers(slurp(answers_path));
  CompetenceProfile profile = parse_profile(slurp(profile_path));
  std::cout << advise(answers, profile);
  return 0;
}

int cmd_suite(const std::string& dir, const std::string& forced_pack) {
  fs::path root(dir);
  if (!fs::is_directory(root))
    throw std::runtime_error(dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file() && entry.path().extension() == ".scn")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.string() < b.string();
            });
  if (files.empty()) throw std::runtime_error("no .scn files under " + dir);

  int total = 0, failed = 0;
  // per-scenario detection counts by kind, from the planning runs
  std::vector<std::pair<std::string, std::map<DisruptionKind, int>>> matrix;
  for (const auto& file : files) {
    Scenario sc = parse_scenario(slurp(file.string()));
    CulturePack pack = resolve_suite_pack(sc, file, root, forced_pack);
    for (Arch arch : {Arch::A, Arch::B}) {
      SessionOptions opt;
      opt.arch = arch;
      RunResult res = run_session(sc, pack, opt);
      ++total;
      if (!res.passed) ++failed;
      std::cout << res.lines.back() << "\n";
      if (arch == Arch::B) {
        std::map<DisruptionKind, int> counts;
        for (const auto& inst : res.detections) ++counts[inst.kind];
        matrix.emplace_back(sc.id, counts);
      }
    }
  }

  size_t width = 8;
  for (const auto& row : matrix) width = std::max(width, row.first.size());
  std::cout << "\ndetections by kind (planning runs)\n";
  std::cout << std::left << std::setw(static_cast<int>(width) + 2)
            << "scenario";
  for (auto kind : all_disruption_kinds())
    std::cout << std::right << std::setw(4) << to_string(kind);
  std::cout << "\n";
  for (const auto& row : matrix) {
    std::cout << std::left << std::setw(static_cast<int>(width) + 2)
              << row.first;
    for (auto kind : all_disruption_kinds()) {
      auto it = row.second.find(kind);
      std::cout << std::right << std::setw(4)
                << (it == row.second.end() ? 0 : it->second);
    }
    std::cout << "\n";
  }

  std::cout << "\nsuite total=" << total << " passed=" << (total - failed)
            << " failed=" << failed << "\n";
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rule-based detection and repair of interaction disruptions"};
  app.require_subcommand(1);

  std::string scn_path, pack_path, arch_s = "A", out_path, occasion =
      "casual_bar", record_path, answers_path, profile_path, suite_dir;
  bool trace = false;
  int window = 8;

  auto* run = app.add_subcommand("run", "replay a scenario script");
  run->add_option("scenario", scn_path, "scenario file")->required();
  run->add_option("--pack", pack_path, "culture pack file (default: built-in)");
  run->add_option("--arch", arch_s, "A reactive / B planning");
  run->add_flag("--trace", trace, "show planner rationale");
  run->add_option("--window", window, "order-change lookback (reactive)");
  run->add_option("--out", out_path, "also write transcript here");

  auto* validate = app.add_subcommand("validate", "check a culture pack");
  validate->add_option("pack", pack_path, "culture pack file")->required();

  auto* repl = app.add_subcommand("repl", "interactive shell");
  repl->add_option("--pack", pack_path, "culture pack file (default: built-in)");
  repl->add_option("--occasion", occasion, "occasion id in the pack");
  std::string repl_arch = "B";
  repl->add_option("--arch", repl_arch, "A reactive / B planning");
  repl->add_option("--record", record_path, "write the session as a scenario");
  repl->add_flag("--trace", trace, "show planner rationale");

  auto* advise_cmd = app.add_subcommand("advise", "capability advisory");
  advise_cmd->add_option("--answers", answers_path, "q1..q14 answer file")
      ->required();
  advise_cmd->add_option("--profile", profile_path, "competence profile file")
      ->required();

  auto* suite = app.add_subcommand("suite", "run every scenario in a tree");
  suite->add_option("dir", suite_dir, "directory with .scn files")->required();
  std::string suite_pack;
  suite->add_option("--pack", suite_pack, "force one pack for all scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(scn_path, pack_path, arch_s, trace, window, out_path);
    if (validate->parsed()) return cmd_validate(pack_path);
    if (repl->parsed()) {
      ReplOptions opt;
      opt.arch = parse_arch(repl_arch);
      opt.occasion = occasion;
      opt.record_path = record_path;
      opt.trace = trace;
      CulturePack pack = load_pack(pack_path);
      return run_repl(std::cin, std::cout, pack, opt);
    }
    if (advise_cmd->parsed()) return cmd_advise(answers_path, profile_path);
    if (suite->parsed()) return cmd_suite(suite_dir, suite_pack);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
