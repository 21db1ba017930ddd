#include "jumpstat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "jumpstat/liouville.hpp"
#include "jumpstat/rates.hpp"
#include "jumpstat/telegraph.hpp"
#include "jumpstat/verify.hpp"

namespace jumpstat {

namespace {

std::string method_name(RateMethod m) {
  switch (m) {
    case RateMethod::Projection: return "projection";
    case RateMethod::Simplified: return "simplified";
    case RateMethod::ClosedExact: return "closed_exact";
    case RateMethod::ClosedFirstOrder: return "closed_first_order";
  }
  return "?";
}

RateMethod method_from_name(const std::string& name) {
  if (name == "projection") return RateMethod::Projection;
  if (name == "simplified") return RateMethod::Simplified;
  if (name == "closed_exact") return RateMethod::ClosedExact;
  if (name == "closed_first_order") return RateMethod::ClosedFirstOrder;
  throw ConfigError("unknown rate method: " + name);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

RateMatrix compute_rates(const SweepConfig& config, RateMethod method,
                         double distance, bool independent) {
  const EnsembleSpec spec = config.ensemble(distance);
  CouplingSet couplings;
  if (!independent)
    couplings = build_coupling_set(spec.geometry, spec.scheme,
                                   config.coupling_policy);
  switch (method) {
    case RateMethod::Projection: {
      const auto [strong, weak] = split_strong_weak(spec, couplings);
      return rates_by_projection(weak.op, quasi_steady_states(spec, strong.op));
    }
    case RateMethod::Simplified: {
      const auto [strong, weak] = split_strong_weak(spec, couplings);
      return rates_by_simplified_scheme(channels_for(spec, couplings),
                                        quasi_steady_states(spec, strong.op));
    }
    case RateMethod::ClosedExact:
    case RateMethod::ClosedFirstOrder: {
      const Complex c3 =
          spec.n_atoms > 1 ? couplings.get(0, 1, 3) : Complex(0.0, 0.0);
      const auto cf = closed_form_rates(spec, c3, spec.scheme.detuning);
      return method == RateMethod::ClosedExact ? cf.exact : cf.first_order;
    }
  }
  throw ConfigError("unknown rate method");
}

}  // namespace

void SweepConfig::validate() const {
  level_scheme().validate();
  if (n_atoms < 1 || n_atoms > 3) throw ConfigError("atoms must be 1, 2 or 3");
  if (r <= 0.0) throw ConfigError("distance r must be positive");
  if (r_min <= 0.0) throw ConfigError("r-min must be positive");
  if (r_max < r_min) throw ConfigError("r-max must be >= r-min");
  if (n_points < 2) throw ConfigError("points must be >= 2");
  if (window <= 0.0) throw ConfigError("window T_W must be positive");
  if (methods.empty()) throw ConfigError("at least one method required");
}

LevelScheme SweepConfig::level_scheme() const {
  LevelScheme s;
  s.kind = scheme;
  s.rabi = rabi;
  s.detuning = detuning;
  if (scheme == SchemeKind::DThreeLevel) {
    s.einstein = {{1, a1}, {2, a2}, {3, a3}};
    s.wavelengths = {{1, lambda1}, {2, lambda2}, {3, lambda3}};
  } else {
    s.einstein = {{1, a1}, {2, a2}, {3, a3}, {4, a4}};
    s.incoherent_w = w;
    s.wavelengths =
        {{1, lambda1}, {2, lambda2}, {3, lambda3}, {4, lambda4}};
  }
  return s;
}

EnsembleSpec SweepConfig::ensemble(double distance) const {
  EnsembleSpec spec;
  spec.scheme = level_scheme();
  spec.n_atoms = n_atoms;
  spec.geometry = Geometry::equilateral(distance, n_atoms);
  return spec;
}

void SweepConfig::echo(std::ostream& out) const {
  out << "# scheme = "
      << (scheme == SchemeKind::DThreeLevel ? "d3" : "four-level") << '\n'
      << "# atoms = " << n_atoms << '\n'
      << "# a1 = " << a1 << "\n# a2 = " << a2 << "\n# a3 = " << a3 << '\n';
  if (scheme == SchemeKind::FourLevel)
    out << "# a4 = " << a4 << "\n# w = " << w << '\n';
  out << "# rabi = " << rabi << '\n'
      << "# detuning = " << detuning << '\n'
      << "# lambda1 = " << lambda1 << "\n# lambda2 = " << lambda2
      << "\n# lambda3 = " << lambda3 << '\n';
  if (scheme == SchemeKind::FourLevel) out << "# lambda4 = " << lambda4 << '\n';
  out << "# coupling = "
      << (coupling_policy == CouplingPolicy::AllTransitions ? "all"
                                                            : "strong-only")
      << '\n'
      << "# r = " << r << "\n# r-min = " << r_min << "\n# r-max = " << r_max
      << "\n# points = " << n_points << "\n# window = " << window << '\n';
  std::string ms;
  for (RateMethod m : methods) {
    if (!ms.empty()) ms += ",";
    ms += method_name(m);
  }
  out << "# methods = " << ms << '\n';
  if (monte_carlo)
    out << "# t-end = " << monte_carlo->t_end
        << "\n# seed = " << monte_carlo->seed << '\n';
}

void apply_preset(SweepConfig& config, const std::string& name) {
  if (name == "custom") return;
  if (name == "optimal-effect") {
    // Drive at the stationary point of the triple-jump response; the
    // weak rates are illustrative defaults, not experimental values.
    config.scheme = SchemeKind::FourLevel;
    config.n_atoms = 3;
    config.detuning = 0.0;
    config.rabi = 0.5 * std::sqrt(std::sqrt(5.0) - 1.0);
    config.a1 = 2e-4;
    config.a2 = 1.0;
    config.a3 = 1.0;
    config.a4 = 1.0;
    config.w = 6e-4;
    return;
  }
  throw ConfigError("unknown preset: " + name);
}

void apply_config_entry(SweepConfig& config, const std::string& raw_key,
                        const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  auto as_double = [&] {
    try {
      return std::stod(value);
    } catch (...) {
      throw ConfigError("invalid number for " + key + ": " + value);
    }
  };
  auto as_int = [&] { return static_cast<int>(std::llround(as_double())); };
  if (key == "preset") {
    apply_preset(config, value);
  } else if (key == "scheme") {
    if (value == "d3" || value == "d-three-level")
      config.scheme = SchemeKind::DThreeLevel;
    else if (value == "four-level")
      config.scheme = SchemeKind::FourLevel;
    else
      throw ConfigError("scheme must be d3 or four-level");
  } else if (key == "atoms") {
    config.n_atoms = as_int();
  } else if (key == "a1") {
    config.a1 = as_double();
  } else if (key == "a2") {
    config.a2 = as_double();
  } else if (key == "a3") {
    config.a3 = as_double();
  } else if (key == "a4") {
    config.a4 = as_double();
  } else if (key == "rabi") {
    config.rabi = as_double();
  } else if (key == "w") {
    config.w = as_double();
  } else if (key == "detuning") {
    config.detuning = as_double();
  } else if (key == "lambda1") {
    config.lambda1 = as_double();
  } else if (key == "lambda2") {
    config.lambda2 = as_double();
  } else if (key == "lambda3") {
    config.lambda3 = as_double();
  } else if (key == "lambda4") {
    config.lambda4 = as_double();
  } else if (key == "coupling") {
    if (value == "all")
      config.coupling_policy = CouplingPolicy::AllTransitions;
    else if (value == "strong-only")
      config.coupling_policy = CouplingPolicy::StrongOnly;
    else
      throw ConfigError("coupling must be all or strong-only");
  } else if (key == "r") {
    config.r = as_double();
  } else if (key == "r-min") {
    config.r_min = as_double();
  } else if (key == "r-max") {
    config.r_max = as_double();
  } else if (key == "points") {
    config.n_points = as_int();
  } else if (key == "window") {
    config.window = as_double();
  } else if (key == "methods") {
    config.methods.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
      config.methods.insert(method_from_name(trim(item)));
  } else if (key == "t-end") {
    if (!config.monte_carlo) config.monte_carlo = MonteCarloConfig{};
    config.monte_carlo->t_end = as_double();
  } else if (key == "seed") {
    if (!config.monte_carlo) config.monte_carlo = MonteCarloConfig{};
    config.monte_carlo->seed = static_cast<std::uint64_t>(std::stoull(value));
  } else if (key == "max-events") {
    if (!config.monte_carlo) config.monte_carlo = MonteCarloConfig{};
    config.monte_carlo->max_events = std::stoll(value);
  } else if (key == "output") {
    config.output_path = value;
  } else if (key == "gnuplot") {
    config.gnuplot_path = value;
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

void load_config_file(SweepConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line is not key = value: " + line);
    apply_config_entry(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

namespace {

void print_header(const SweepConfig& config, std::ostream& out) {
  out << "# jumpstat v" << kVersion << '\n';
  config.echo(out);
}

}  // namespace

int cmd_rates(const SweepConfig& config, std::ostream& out) {
  config.validate();
  print_header(config, out);
  out << "r,i,j,method,rate,rel_dev_independent\n";
  out << std::setprecision(15);
  for (RateMethod method : config.methods) {
    const RateMatrix rates = compute_rates(config, method, config.r, false);
    const RateMatrix indep = compute_rates(config, method, config.r, true);
    auto emit = [&](int i, int j, double value, double base) {
      const double dev =
          base != 0.0 ? std::abs(value - base) / base
                      : (value == 0.0 ? 0.0
                                      : std::numeric_limits<double>::infinity());
      out << config.r << ',' << i << ',' << j << ',' << method_name(method)
          << ',' << value << ',' << dev << '\n';
    };
    for (int k = 0; k + 1 < rates.n_levels; ++k)
      emit(k, k + 1, rates.up(k), indep.up(k));
    for (int k = 0; k + 1 < rates.n_levels; ++k)
      emit(k + 1, k, rates.down(k), indep.down(k));
  }
  return 0;
}

int cmd_sweep(const SweepConfig& config, std::ostream& out) {
  config.validate();
  if (config.scheme != SchemeKind::FourLevel || config.n_atoms != 3)
    throw ConfigError("sweep needs the three-atom four-level system");
  print_header(config, out);
  out << "r,ndj_exact,ndj_first_order,ndj_independent,"
         "ntj_exact,ntj_first_order,ntj_independent\n";
  out << std::setprecision(15);
  const EnsembleSpec ref = config.ensemble(config.r_min);
  const auto indep = closed_form_rates(ref, Complex(0.0, 0.0), config.detuning);
  const double ndj_indep = analytic_djr(indep.exact, config.window);
  const double ntj_indep = analytic_tjr(indep.exact, config.window);
  for (int i = 0; i < config.n_points; ++i) {
    const double r = config.r_min +
                     i * (config.r_max - config.r_min) / (config.n_points - 1);
    const EnsembleSpec spec = config.ensemble(r);
    const auto couplings = build_coupling_set(spec.geometry, spec.scheme,
                                              config.coupling_policy);
    const auto cf =
        closed_form_rates(spec, couplings.get(0, 1, 3), config.detuning);
    out << r << ',' << analytic_djr(cf.exact, config.window) << ','
        << analytic_djr(cf.first_order, config.window) << ',' << ndj_indep
        << ',' << analytic_tjr(cf.exact, config.window) << ','
        << analytic_tjr(cf.first_order, config.window) << ',' << ntj_indep
        << '\n';
  }
  if (!config.gnuplot_path.empty()) {
    std::ofstream gp(config.gnuplot_path);
    if (!gp) throw ConfigError("cannot write " + config.gnuplot_path);
    gp << "# gnuplot stub for a jumpstat sweep data file\n"
          "set datafile separator ','\n"
          "set xlabel 'r [lambda_3]'\n"
          "set ylabel 'rate [A_3]'\n"
          "plot 'sweep.csv' using 1:2 with lines title 'n_DJ exact', \\\n"
          "     'sweep.csv' using 1:4 with lines title 'n_DJ independent', \\\n"
          "     'sweep.csv' using 1:5 with lines title 'n_TJ exact', \\\n"
          "     'sweep.csv' using 1:7 with lines title 'n_TJ independent'\n";
  }
  return 0;
}

int cmd_simulate(const SweepConfig& config, std::ostream& out) {
  config.validate();
  if (!config.monte_carlo)
    throw ConfigError("simulate needs t-end (and optionally seed)");
  if (config.monte_carlo->t_end <= 0.0)
    throw ConfigError("t-end must be positive");
  print_header(config, out);

  const RateMethod method =
      config.scheme == SchemeKind::FourLevel && config.n_atoms == 3
          ? RateMethod::ClosedExact
          : RateMethod::Projection;
  const RateMatrix rates = compute_rates(config, method, config.r, false);
  const double max_rate = std::max(rates.up.maxCoeff(), rates.down.maxCoeff());
  if (max_rate * config.window > 0.1)
    out << "# warning: window is large (max rate * T_W = "
        << max_rate * config.window << " > 0.1)\n";

  const auto stats = simulate_and_count(
      rates, config.monte_carlo->t_end, config.window,
      config.monte_carlo->seed, CountingRule::NetChangeConsecutiveGaps,
      config.monte_carlo->max_events);
  out << "rate_method = " << method_name(method) << '\n';
  export_statistics(stats, out);
  if (rates.n_levels == 4) {
    out << "djr_analytic = " << analytic_djr(rates, config.window) << '\n'
        << "tjr_analytic = " << analytic_tjr(rates, config.window) << '\n';
  }
  return 0;
}

int cmd_verify(std::ostream& out) {
  const auto results = run_verification_suite();
  return report_verification(results, out) ? 0 : 1;
}

}  // namespace jumpstat
