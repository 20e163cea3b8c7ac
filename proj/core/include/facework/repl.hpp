#pragma once
// Interactive shell: type script events one line at a time, watch the engine
// detect and repair as it goes.  Optionally records the session as a scenario
// file whose replay reproduces the same engine transcript.

#include <iosfwd>
#include <string>

#include "facework/session.hpp"

namespace facework {

struct ReplOptions {
  Arch arch = Arch::B;
  std::string occasion;
  std::string record_path;  // empty: do not record
  bool trace = false;
};

// The stage every shell session starts from: one agent behind the counter,
// two unacquainted clients, a small drinks menu.
Scenario default_repl_scenario(const std::string& occasion,
                               const std::string& pack_id);

// Reads commands from `in` until :quit or EOF.  Returns 0.
int run_repl(std::istream& in, std::ostream& out, const CulturePack& pack,
             const ReplOptions& opt);

}  // namespace facework
