#ifndef FRACLAW_CONFIG_HPP_
#define FRACLAW_CONFIG_HPP_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fraclaw/solver.hpp"

namespace fraclaw {

/// Everything a run needs beyond the solver itself.
struct RunOptions {
  SolverConfig solver;
  InitialProfile initial;
  std::vector<double> lambda_list{1.0, 2.0, 4.0, 8.0};
  std::vector<double> snapshot_times{1.0, 2.0, 4.0, 8.0, 16.0};
  double radius = 10.0;  // R for local derivative norms and tails
  std::vector<double> tail_radii{5.0, 10.0, 20.0};
  /// Non-fatal remarks, e.g. a supercritical exponent.
  std::vector<std::string> warnings;
};

/// Key-value grammar, one entry per line:
///
///   # comment
///   q = 1.3
///   alpha = 0.5
///   snapshot_times = 1, 2, 4, 8, 16
///   initial { kind = gaussian  mass = 1  width = 1 }
///
/// The initial block may also span lines, and initial.kind style dotted keys
/// are accepted. Unknown keys and duplicates are errors.
std::map<std::string, std::string> parse_entries(const std::string& text);

/// Builds validated options from entries. Missing keys take the defaults
/// listed in the README. Throws InvalidParameter naming the broken condition.
RunOptions build_options(const std::map<std::string, std::string>& entries);

/// parse_entries followed by build_options.
RunOptions parse_config(const std::string& text);

/// Replaces entries by FRACLAW_<KEY> variables (dots become underscores,
/// upper case), e.g. FRACLAW_DT or FRACLAW_INITIAL_MASS.
void apply_env_overrides(std::map<std::string, std::string>& entries,
                         const std::function<const char*(const char*)>& getenv);

/// Every key the grammar accepts.
const std::vector<std::string>& config_keys();

/// Canonical text form; parse_config(format_config(o)) reproduces o.
std::string format_config(const RunOptions& options);

/// Number formatting shared by every CSV: 17 significant digits.
std::string format_number(double v);

/// Writes a header line and rows, newline terminated.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace fraclaw

#endif  // FRACLAW_CONFIG_HPP_
