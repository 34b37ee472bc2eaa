#ifndef DEGDIFF_CLI_HPP
#define DEGDIFF_CLI_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "degdiff/newton.hpp"
#include "degdiff/problem.hpp"

namespace degdiff::cli {

enum class Command { solve, evaluate, validate, continuum };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command command);

/// Parse error carrying the 1-based line number (0 when not line specific).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Settings read from a `key = value` config file. Lists are written as
/// `[v1, v2, ...]`; `#` starts a comment.
struct RunConfig {
  Command command = Command::solve;

  std::optional<double> u_minus;
  std::optional<double> u_plus;
  std::vector<double> breakpoints;  // interior breakpoints u_1..u_n, ascending
  std::vector<double> coefficients; // a_0..a_n from the lowest state upwards

  SolveOptions solve_options;
  std::size_t samples = 2001;

  std::vector<double> eval_t;
  std::vector<double> eval_x;

  double T = 1.0;
  std::vector<double> dx = {0.02, 0.01};

  std::string diffusion_table;
  std::vector<double> diffusion_u;
  std::vector<double> diffusion_a;
  std::vector<std::size_t> N = {2, 4, 8, 16, 32};

  std::map<std::string, std::size_t> keys;  // key -> line where it was set

  bool has(const std::string& key) const { return keys.contains(key); }
  /// Partition spanning [min(u_minus, u_plus), max(u_minus, u_plus)].
  PhasePartition partition() const;
};

/// Throws ConfigError on malformed lines, unknown or duplicate keys, bad
/// values, and a coefficients/breakpoints count mismatch.
RunConfig parse_config(std::string_view text);

/// Throws ConfigError when keys required by config.command are missing.
void check_command(const RunConfig& config);

/// Shortest decimal that round-trips the double.
std::string format_number(double value);

struct RunOutput {
  int status = 0;
  std::map<std::string, std::string> files;  // file name -> CSV content
  std::string summary;
};

/// Executes the command without touching the filesystem. status is 0 on
/// success and 1 on problem-validation failure or non-convergence.
RunOutput execute(const RunConfig& config, unsigned threads = 1);

/// execute() plus writing `<prefix><name>` for each file; nothing is left
/// behind on failure. Returns the process exit status.
int run(const RunConfig& config, const std::string& prefix, std::ostream& log, unsigned threads = 1);

/// Reads a two-column `u,a` CSV (optional header) into samples.
std::vector<std::pair<double, double>> read_diffusion_table(const std::string& path);

}  // namespace degdiff::cli

#endif  // DEGDIFF_CLI_HPP
