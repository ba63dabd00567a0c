#pragma once

#include "sympoly/decomposition.hpp"
#include "sympoly/polyfile.hpp"

#include <iosfwd>

namespace sympoly {

enum ExitCode : int { exit_ok = 0, exit_empty = 1, exit_input = 2, exit_verification = 3 };

/// Everything a subcommand produces.  `report` is the primary output (stdout
/// or the -o file); `warnings` goes to stderr.
struct CommandResult {
  int exit_code = exit_ok;
  std::string report;
  std::string warnings;
  std::optional<std::string> dot;
};

struct ConvertOptions {
  Levels levels;
  bool adjacencies = false;
  std::optional<FaceIndexSet> stabilize;  // 0-based file rows whose set stabilizer replaces the group
  bool expand = false;
  std::size_t jobs = 1;
};

CommandResult cmd_automorphisms(const PolyFile& input);
CommandResult cmd_convert(const PolyFile& input, const ConvertOptions& options);
CommandResult cmd_count(const PolyFile& input, bool symmetric, std::size_t jobs = 1);
CommandResult cmd_ehrhart(const PolyFile& input, std::size_t period_bound = 64);
CommandResult cmd_volume(const PolyFile& input);
CommandResult cmd_ilp(const PolyFile& input, std::size_t enumeration_limit = 1000000);

/// "1-24,30 31" -> {0..23, 29, 30}.  Throws InputError on malformed lists.
FaceIndexSet parse_row_list(std::string_view text);

/// Whole command line as run by the executable.  Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sympoly
