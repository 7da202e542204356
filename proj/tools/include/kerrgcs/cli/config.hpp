#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kerrgcs/special.hpp"

namespace kerrgcs::cli {

/// Bad flag, config-file entry or parameter combination (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParamSpec {
  std::string name;
  std::string default_value;  ///< empty: unset unless given
  std::string help;
  bool flag = false;          ///< boolean switch, value "true"/"false"
  bool echoed = true;         ///< written to the CSV header
};

enum class Source { Default, File, Flag };

/// Parameters of one subcommand after applying flags > config file > defaults.
class ResolvedConfig {
 public:
  ResolvedConfig(std::string command, const std::vector<ParamSpec>& specs);

  /// Overrides the value if `source` ranks at least as high as the current one.
  void set(std::string_view name, std::string value, Source source);
  bool knows(std::string_view name) const;

  const std::string& command() const noexcept { return command_; }
  bool has(std::string_view name) const;
  bool user_set(std::string_view name) const;
  const std::string& raw(std::string_view name) const;

  double real(std::string_view name) const;
  std::uint64_t count(std::string_view name) const;
  bool flag(std::string_view name) const;
  cplx complex(std::string_view name) const;
  std::vector<double> reals(std::string_view name) const;
  std::vector<std::uint64_t> counts(std::string_view name) const;
  std::vector<cplx> complexes(std::string_view name) const;

  /// "key = value" for every set, echoed parameter, in declaration order.
  std::vector<std::string> echo() const;

 private:
  struct Entry {
    ParamSpec spec;
    std::string value;
    Source source;
  };
  const Entry& entry(std::string_view name) const;
  Entry& entry(std::string_view name);

  std::string command_;
  std::vector<Entry> entries_;
};

/// Real literal with optional π factor: "0.5", "-2e-3", "pi", "4pi", "3*pi/2".
double parse_real(std::string_view text);
/// Non-negative integer literal.
std::uint64_t parse_count(std::string_view text);
/// "1.5", "2i", "0.3-1.2i", "-i".
cplx parse_complex(std::string_view text);
/// "true"/"false"/"1"/"0"/"yes"/"no"/"on"/"off".
bool parse_bool(std::string_view text);

/// Splits a comma-separated list, trimming blanks; empty items are rejected.
std::vector<std::string> split_list(std::string_view text);

/// Flat key=value text: '#' starts a comment, blank lines ignored, '_' in keys
/// read as '-'. Duplicate keys and lines without '=' are ConfigErrors.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text,
                                                                   const std::string& origin = "config");
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

}  // namespace kerrgcs::cli
