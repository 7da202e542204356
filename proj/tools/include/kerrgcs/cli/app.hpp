#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kerrgcs/cli/config.hpp"
#include "kerrgcs/cli/output.hpp"

namespace kerrgcs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitGuard = 3;

struct CommandInfo {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
};

/// All subcommands with their parameters (shared ones included).
const std::vector<CommandInfo>& commands();
const CommandInfo& command_info(const std::string& name);

/// Extra output file produced by a subcommand.
struct Artifact {
  std::string path;
  std::string bytes;
};

struct Report {
  Table table;
  std::vector<std::string> results;  ///< summary lines for the CSV header
  std::vector<PlotSeries> plot;
  std::string plot_title, x_label, y_label;
  std::vector<Artifact> artifacts;
  bool checks_failed = false;
};

/// Runs one resolved subcommand; writes nothing.
Report execute(const ResolvedConfig& config);

/// Comment lines heading every CSV: program, resolved config, results.
std::vector<std::string> csv_comments(const ResolvedConfig& config, const std::vector<std::string>& results);

/// Full command line handling: parse, resolve flags > config file > defaults,
/// execute, write outputs. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kerrgcs::cli
