// Experiment runner for the stochastic primal-dual solver.
//
//   spd run <config>       run all seeds, write CSV traces and a summary
//   spd validate <config>  parse and validate a config without running
//   spd version            print the version
//
// Exit status: 0 on success, 1 on config errors, 2 on runtime aborts.

#include "spd/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr const char* kVersion = "spd 1.0.0";

int do_validate(const std::string& path) {
  const spd::ExperimentConfig config = spd::load_config(path);
  config.build();  // generator-side validation (PSD checks, qualification, ...)
  config.distribution();
  std::cout << "ok\n";
  return 0;
}

int do_run(const std::string& path) {
  const spd::ExperimentConfig config = spd::load_config(path);
  const spd::ExecutionReport report = spd::execute(config);
  for (const auto& file : report.files_written) std::cout << file << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic primal-dual forward-backward experiment runner"};
  app.require_subcommand(1);

  std::string run_config, validate_config;
  CLI::App* cmd_run = app.add_subcommand("run", "run the experiment described by a config file");
  cmd_run->add_option("config", run_config, "path to the config file")->required();
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "parse and validate a config file");
  cmd_validate->add_option("config", validate_config, "path to the config file")->required();
  CLI::App* cmd_version = app.add_subcommand("version", "print the version");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_version->parsed()) {
      std::cout << kVersion << '\n';
      return 0;
    }
    if (cmd_validate->parsed()) return do_validate(validate_config);
    return do_run(run_config);
  } catch (const spd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
