#include "kerrgcs/cli/app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "kerrgcs/errors.hpp"

namespace kerrgcs::cli {

namespace {

struct BoundCommand {
  const CommandInfo* info = nullptr;
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

std::string option_names(const std::string& name) {
  return name.size() == 1 ? "-" + name + ",--" + name : "--" + name;
}

ResolvedConfig resolve(const BoundCommand& cmd) {
  ResolvedConfig cfg(cmd.info->name, cmd.info->params);
  if (cmd.options.at("config")->count() > 0) {
    for (const auto& [key, value] : read_config_file(cmd.values.at("config"))) {
      if (key == "config" || !cfg.knows(key)) {
        throw ConfigError("config file key '" + key + "' is not a parameter of '" + cmd.info->name + "'");
      }
      cfg.set(key, value, Source::File);
    }
  }
  for (const ParamSpec& p : cmd.info->params) {
    if (cmd.options.at(p.name)->count() == 0) continue;
    cfg.set(p.name, p.flag ? "true" : cmd.values.at(p.name), Source::Flag);
  }
  return cfg;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << bytes;
  if (!f) throw ConfigError("error writing '" + path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quench dynamics of coherent states in Kerr / Bose-Hubbard lattices", "kerrgcs"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string("kerrgcs ") + KERRGCS_VERSION);

  std::vector<std::unique_ptr<BoundCommand>> bound;
  for (const CommandInfo& info : commands()) {
    auto cmd = std::make_unique<BoundCommand>();
    cmd->info = &info;
    cmd->app = app.add_subcommand(info.name, info.description);
    for (const ParamSpec& p : info.params) {
      CLI::Option* opt = nullptr;
      if (p.flag) {
        opt = cmd->app->add_flag(option_names(p.name), p.help);
      } else {
        opt = cmd->app->add_option(option_names(p.name), cmd->values[p.name], p.help);
        if (!p.default_value.empty()) opt->default_str(p.default_value);
      }
      cmd->options[p.name] = opt;
    }
    bound.push_back(std::move(cmd));
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const BoundCommand* active = nullptr;
  for (const auto& cmd : bound)
    if (cmd->app->parsed()) active = cmd.get();

  try {
    const ResolvedConfig cfg = resolve(*active);
    const Report report = execute(cfg);
    if (cfg.has("svg") && report.plot.empty()) throw ConfigError("'" + cfg.command() + "' has no SVG plot");

    std::ostringstream csv;
    write_csv(csv, csv_comments(cfg, report.results), report.table);
    const std::string& out_path = cfg.raw("out");
    if (out_path == "-") {
      out << csv.str();
    } else {
      write_file(out_path, csv.str());
      for (const auto& line : report.results) err << line << '\n';
    }
    if (cfg.has("svg")) {
      std::ostringstream svg;
      write_svg_plot(svg, report.plot_title, report.x_label, report.y_label, report.plot);
      write_file(cfg.raw("svg"), svg.str());
    }
    for (const Artifact& a : report.artifacts) write_file(a.path, a.bytes);
    if (report.checks_failed) {
      err << "kerrgcs: some checks failed\n";
      return kExitCheckFailed;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "kerrgcs: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << "kerrgcs: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const GuardError& e) {
    err << "kerrgcs: guard tripped: " << e.what() << '\n';
    return kExitGuard;
  } catch (const OverflowError& e) {
    err << "kerrgcs: guard tripped: dimension guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    err << "kerrgcs: error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace kerrgcs::cli
