// Command-line front end: transition rates, distance sweeps, telegraph
// Monte Carlo and the cross-method verification suite.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "jumpstat/cli.hpp"
#include "jumpstat/types.hpp"

namespace {

struct PendingOptions {
  std::string config_path;
  std::string preset;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common_options(CLI::App* cmd, PendingOptions& pending) {
  cmd->add_option("--config", pending.config_path, "key = value config file");
  cmd->add_option("--preset", pending.preset,
                  "parameter preset: optimal-effect or custom");
  auto track = [&pending, cmd](const std::string& key, const std::string& flag,
                               const std::string& help) {
    cmd->add_option_function<std::string>(
        flag,
        [&pending, key](const std::string& v) {
          pending.overrides.emplace_back(key, v);
        },
        help);
  };
  track("scheme", "--scheme", "d3 or four-level");
  track("atoms", "--atoms", "number of atoms (1-3)");
  track("a1", "--a1", "Einstein coefficient A1 [A3]");
  track("a2", "--a2", "Einstein coefficient A2 [A3]");
  track("a3", "--a3", "Einstein coefficient A3 (unit anchor)");
  track("a4", "--a4", "Einstein coefficient A4 [A3]");
  track("rabi", "--rabi", "Rabi frequency Omega3 [A3]");
  track("w", "--w", "incoherent driving rate W [A3]");
  track("detuning", "--detuning", "laser detuning Delta3 [A3]");
  track("lambda1", "--lambda1", "wavelength ratio lambda1/lambda3");
  track("lambda2", "--lambda2", "wavelength ratio lambda2/lambda3");
  track("lambda4", "--lambda4", "wavelength ratio lambda4/lambda3");
  track("coupling", "--coupling", "all or strong-only");
  track("r", "--r", "inter-atomic distance [lambda3]");
  track("r-min", "--r-min", "sweep start distance [lambda3]");
  track("r-max", "--r-max", "sweep end distance [lambda3]");
  track("points", "--points", "number of sweep points");
  track("window", "--window", "multi-jump window T_W [1/A3]");
  track("methods", "--methods",
        "comma list: projection,simplified,closed_exact,closed_first_order");
  track("t-end", "--t-end", "Monte Carlo duration [1/A3]");
  track("seed", "--seed", "Monte Carlo PRNG seed");
  track("max-events", "--max-events", "Monte Carlo transition cap");
  track("output", "--output", "output file (default stdout)");
  track("gnuplot", "--gnuplot", "write a gnuplot script stub here");
}

jumpstat::SweepConfig resolve(const PendingOptions& pending) {
  jumpstat::SweepConfig config;
  if (!pending.preset.empty()) jumpstat::apply_preset(config, pending.preset);
  if (!pending.config_path.empty())
    jumpstat::load_config_file(config, pending.config_path);
  for (const auto& [key, value] : pending.overrides)
    jumpstat::apply_config_entry(config, key, value);
  return config;
}

int run_with_output(const jumpstat::SweepConfig& config,
                    int (*fn)(const jumpstat::SweepConfig&, std::ostream&)) {
  if (config.output_path.empty()) return fn(config, std::cout);
  std::ofstream out(config.output_path);
  if (!out)
    throw jumpstat::ConfigError("cannot write " + config.output_path);
  return fn(config, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transition rates and jump statistics of cooperative "
               "fluorescence telegraph processes"};
  app.require_subcommand(1);

  PendingOptions rates_opts, sweep_opts, sim_opts;
  auto* rates_cmd =
      app.add_subcommand("rates", "rate matrix per method at one distance");
  add_common_options(rates_cmd, rates_opts);
  auto* sweep_cmd =
      app.add_subcommand("sweep", "multi-jump rates over a distance range");
  add_common_options(sweep_cmd, sweep_opts);
  auto* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo telegraph statistics");
  add_common_options(sim_cmd, sim_opts);
  app.add_subcommand("verify", "run the cross-method verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (rates_cmd->parsed())
      return run_with_output(resolve(rates_opts), jumpstat::cmd_rates);
    if (sweep_cmd->parsed())
      return run_with_output(resolve(sweep_opts), jumpstat::cmd_sweep);
    if (sim_cmd->parsed())
      return run_with_output(resolve(sim_opts), jumpstat::cmd_simulate);
    return jumpstat::cmd_verify(std::cout);
  } catch (const jumpstat::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
