#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include "jumpstat/coupling.hpp"
#include "jumpstat/model.hpp"

namespace jumpstat {

inline constexpr const char* kVersion = "0.1.0";

enum class RateMethod { Projection, Simplified, ClosedExact, ClosedFirstOrder };

struct MonteCarloConfig {
  double t_end = 0.0;
  std::uint64_t seed = 1;
  std::int64_t max_events = -1;
};

/// Everything a CLI run needs; filled from a key=value config file plus
/// flag overrides.
struct SweepConfig {
  SchemeKind scheme = SchemeKind::FourLevel;
  int n_atoms = 3;
  double a1 = 2e-4, a2 = 1.0, a3 = 1.0, a4 = 1.0;
  double rabi = 0.0;
  double w = 6e-4;
  double detuning = 0.0;
  double lambda1 = 3.5, lambda2 = 1.25, lambda3 = 1.0, lambda4 = 0.92;
  CouplingPolicy coupling_policy = CouplingPolicy::AllTransitions;

  double r = 1.0;  ///< single distance for `rates` / `simulate`
  double r_min = 1.0, r_max = 10.0;
  int n_points = 200;
  double window = 0.01;  ///< T_W

  std::set<RateMethod> methods = {RateMethod::ClosedExact, RateMethod::Projection};
  std::optional<MonteCarloConfig> monte_carlo;
  std::string output_path;   ///< empty = stdout
  std::string gnuplot_path;  ///< optional plot-script stub

  void validate() const;  ///< throws ConfigError
  LevelScheme level_scheme() const;
  EnsembleSpec ensemble(double distance) const;
  /// Echo every value as "# key = value" header lines.
  void echo(std::ostream& out) const;
};

/// Named parameter presets. "optimal-effect" sets Delta_3 = 0 and
/// Omega_3 = 0.5 sqrt(sqrt 5 - 1) A_3 with documented illustrative weak
/// rates; "custom" leaves the defaults untouched.
void apply_preset(SweepConfig& config, const std::string& name);

/// Merge `key = value` lines into the config; '#' starts a comment.
void load_config_file(SweepConfig& config, const std::string& path);
void apply_config_entry(SweepConfig& config, const std::string& key,
                        const std::string& value);

int cmd_rates(const SweepConfig& config, std::ostream& out);
int cmd_sweep(const SweepConfig& config, std::ostream& out);
int cmd_simulate(const SweepConfig& config, std::ostream& out);
int cmd_verify(std::ostream& out);

}  // namespace jumpstat
