#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "artin/solver.hpp"

namespace artin {

/// One `key: value` line of a problem file, with the 1-based position of the
/// value for error reporting.
struct ProblemEntry {
  std::string key;
  std::string value;
  int line = 0;
  int column = 0;
};

/// Line-oriented problem description:
///
///   # comment
///   field: Q                      Q or GF(p); falls back to the default field
///   series_vars: x, y
///   unknowns: z
///   equation: z^2 - x^2           repeatable; `equations:` takes a list
///   approx: x + x^4 + O(m^20)     one series per unknown, comma separated
///   precision: 20
///   target_order: 3
///
/// plus command-specific keys (see the README). Unknown keys and repeated
/// single-valued keys are parse errors.
struct ProblemFile {
  Field field;
  std::vector<std::string> series_vars;
  std::vector<std::string> unknowns;
  std::vector<ProblemEntry> entries;

  const ProblemEntry* find(std::string_view key) const;
  std::vector<const ProblemEntry*> all(std::string_view key) const;
};

/// `default_field` applies when the file has no `field:` line (empty = Q).
ProblemFile parse_problem(std::string_view text, const std::string& default_field = "");

/// Command-line overrides; they take precedence over the file.
struct RunOptions {
  std::optional<unsigned> precision;
  std::optional<unsigned> target_order;
  std::optional<Strategy> strategy;
  std::optional<std::uint64_t> seed;
};

struct RunReport {
  std::string command;
  int exit_code = 0;
  std::string status;  // "ok", "certified", or the error kind
  std::string json;    // deterministic machine-readable report
  std::string text;    // human-readable report
  double seconds = 0;  // wall time, kept out of `json`
  std::string error;   // message when the command failed
  int line = 0;        // source position of a parse error, else 0
  int column = 0;
};

/// elkik, colon, groebner, prepare, divide, refine, solve, bounds, probe.
/// Never throws for library failures: they become the report status and exit
/// code (0 success, 2 hypothesis/precondition, 3 parse, 4 capacity, 1 other).
RunReport run_command(const std::string& command, const ProblemFile& problem,
                      const RunOptions& options = {});
/// Parses the file first; parse errors are reported like any other failure.
RunReport run_command_text(const std::string& command, std::string_view problem_text,
                           const std::string& default_field = "", const RunOptions& options = {});

const std::vector<std::string>& command_names();

/// Re-parses a JSON report: every series object must re-parse from its text
/// to its coefficient list, and a certified refinement must still make every
/// echoed equation vanish to the stated precision within the target order.
/// Returns an empty string when valid, otherwise the first problem found.
std::string revalidate_report(std::string_view json);

}  // namespace artin
