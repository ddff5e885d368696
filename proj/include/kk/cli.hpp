#pragma once

#include <string>
#include <vector>

#include "kk/report.hpp"

namespace kk {

/// Parsed CLI invocation. `verb` is the top-level subcommand; `action` the
/// nested one for magnus/abelian/fp; `args` the positional arguments.
struct Command {
  std::string verb;
  std::string action;
  std::vector<std::string> args;

  std::string group_file;
  std::string normal_elems;
  std::string mod_elems;
  std::string h_elems;
  std::string a_elems;
  int p = 0;
  std::string s_list;
  long long window = 0;
  unsigned seed = 1;
  std::string format = "text";
  std::string out_file;

  std::vector<std::string> echo;  // argv echo for the report header
};

/// Thrown when help output was requested; carries the rendered help text.
struct HelpRequest {
  std::string text;
};

/// Validates argv (argv[0] is the program name) into a Command.
/// Throws UsageError with the offending token, or HelpRequest.
Command parse_command(const std::vector<std::string>& argv);

/// Dispatches the command and collects the verification report. Module
/// errors become failed assertions; UsageError/IoError propagate.
Report run(const Command& cmd);

/// Full exit-code contract: 0 all assertions pass, 1 assertion failure,
/// 2 usage or input error. Writes the report to stdout (and --out).
int cli_main(const std::vector<std::string>& argv);

}  // namespace kk
