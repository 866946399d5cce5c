#ifndef FRACLAW_CLI_HPP_
#define FRACLAW_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fraclaw/config.hpp"

namespace fraclaw {

enum class Command { kernel, solve, rescale, verify, sweep };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

struct RunManifest {
  Command command = Command::verify;
  std::string config_path;  // empty: built-in defaults
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool check_only = false;
};

/// One line of summary.txt. Informational lines never affect the exit status.
struct CheckLine {
  std::string name;
  bool passed;
  double measured;
  double bound;
  bool informational = false;
};

std::string format_check(const CheckLine& c);

/// Loads the manifest's config (with FRACLAW_* overrides), runs the command
/// and writes CSVs, summary.txt and plot.gp into out_dir. Returns 0 when every
/// check passes, 1 when a check fails and 2 when the computation stopped with
/// an error; progress and errors go to `log`.
int run(const RunManifest& manifest, std::ostream& log);

/// Options resolved from the manifest's config file and the environment.
RunOptions load_options(const RunManifest& manifest);

}  // namespace fraclaw

#endif  // FRACLAW_CLI_HPP_
