// Command-line front end: axibilayer <run|converge|compare|residuals|export3d>
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "axibilayer/cli_io.hpp"
#include "axibilayer/errors.hpp"

using namespace axibilayer;

int main(int argc, char** argv) {
  CLI::App app{"Gradient flow of two-phase axisymmetric membranes"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  bool quiet = false;
  using Command = int (*)(const RunConfig&, std::ostream*);
  Command command = nullptr;

  const std::pair<const char*, const char*> names[] = {
      {"run", "evolve the configured shape, write time series and snapshots"},
      {"converge", "convergence ladder against the exact sphere solution"},
      {"compare", "junction drift of the two C1 junction treatments"},
      {"residuals", "run the flow, then evaluate the junction conditions"},
      {"export3d", "triangulate a snapshot or shape as an OBJ surface"},
  };
  const Command commands[] = {command_run, command_converge, command_compare,
                              command_residuals, command_export3d};
  for (int k = 0; k < 5; ++k) {
    auto* sub = app.add_subcommand(names[k].first, names[k].second);
    sub->add_option("--config", config_path, "key=value configuration file");
    sub->add_option("--override", overrides, "key=value, applied after the file")
        ->take_all();
    sub->add_flag("--quiet", quiet, "no progress output");
    sub->callback([&command, c = commands[k]] { command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_config;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : parse_config(config_path);
    if (const char* env = std::getenv("AXIBILAYER_OUT"); env && *env)
      config.output_dir = env;
    for (const auto& o : overrides) apply_override(config, o);
    config.validate();
    return command(config, quiet ? nullptr : &std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
