#include "jumpstat/telegraph.hpp"

#include <cmath>
#include <ostream>
#include <random>

namespace jumpstat {

namespace {

void check_four_levels(const RateMatrix& rates) {
  if (rates.n_levels != 4)
    throw ConfigError("multi-jump formulas apply to the 4-level chain (3 atoms)");
}

double chain_denominator(const RateMatrix& rates) {
  const double p01 = rates.up(0), p12 = rates.up(1), p23 = rates.up(2);
  const double p10 = rates.down(0), p21 = rates.down(1), p32 = rates.down(2);
  return p21 * p32 * (p01 + p10) + p01 * p12 * (p23 + p32);
}

/// Portable uniform in (0, 1): top 53 bits of the mt19937_64 output.
double uniform53(std::mt19937_64& rng) {
  double u;
  do {
    u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  } while (u <= 0.0);
  return u;
}

/// Single continuous-time step: returns (holding time, next level).
struct Stepper {
  const RateMatrix& rates;
  std::mt19937_64 rng;
  bool absorbing = false;

  std::pair<double, int> step(int level) {
    double rate_up = 0.0, rate_down = 0.0;
    if (level + 1 < rates.n_levels) rate_up = rates.up(level);
    if (level > 0) rate_down = rates.down(level - 1);
    const double total = rate_up + rate_down;
    if (total <= 0.0) {
      absorbing = true;
      return {std::numeric_limits<double>::infinity(), level};
    }
    const double dt = -std::log(uniform53(rng)) / total;  // inverse CDF
    const int next = uniform53(rng) * total < rate_up ? level + 1 : level - 1;
    return {dt, next};
  }
};

/// Streaming multi-jump counter over consecutive transitions. Windows
/// slide: every consecutive pair/triple is examined.
struct JumpCounter {
  double window;
  CountingRule rule;
  std::int64_t n_double = 0;
  std::int64_t n_triple = 0;

  // Last three transitions, most recent first: gap preceding each
  // transition and its level change.
  double gap0 = 0.0, gap1 = 0.0;
  int delta0 = 0, delta1 = 0, delta2 = 0;
  std::int64_t seen = 0;

  void push(double gap, int delta) {
    gap1 = gap0;
    delta2 = delta1;
    delta1 = delta0;
    gap0 = gap;
    delta0 = delta;
    ++seen;
    if (seen >= 2 && gap0 < window) {
      if (rule == CountingRule::AnyPair || std::abs(delta0 + delta1) == 2)
        ++n_double;
    }
    if (seen >= 3) {
      const bool in_window = rule == CountingRule::NetChangeSpan
                                 ? (gap0 + gap1 < window)
                                 : (gap0 < window && gap1 < window);
      if (in_window &&
          (rule == CountingRule::AnyPair || std::abs(delta0 + delta1 + delta2) == 3))
        ++n_triple;
    }
  }
};

}  // namespace

double analytic_djr(const RateMatrix& rates, double window) {
  check_four_levels(rates);
  if (window <= 0.0) throw ConfigError("window T_W must be positive");
  const double den = chain_denominator(rates);
  if (den <= 0.0) throw ModelError("degenerate birth-death chain");
  const double p01 = rates.up(0), p12 = rates.up(1), p23 = rates.up(2);
  const double p10 = rates.down(0), p21 = rates.down(1), p32 = rates.down(2);
  return 2.0 * p01 * p12 * p21 * p32 * (p10 + p23) / den * window;
}

double analytic_tjr(const RateMatrix& rates, double window) {
  check_four_levels(rates);
  if (window <= 0.0) throw ConfigError("window T_W must be positive");
  const double den = chain_denominator(rates);
  if (den <= 0.0) throw ModelError("degenerate birth-death chain");
  const double p01 = rates.up(0), p12 = rates.up(1), p23 = rates.up(2);
  const double p10 = rates.down(0), p21 = rates.down(1), p32 = rates.down(2);
  return 2.0 * p01 * p10 * p12 * p21 * p23 * p32 / den * window * window;
}

TelegraphTrajectory simulate(const RateMatrix& rates, double t_end,
                             std::uint64_t seed, int start_level) {
  if (t_end <= 0.0) throw ConfigError("t_end must be positive");
  if (start_level < 0 || start_level >= rates.n_levels)
    throw ConfigError("start level outside the chain");
  TelegraphTrajectory traj;
  traj.t_end = t_end;
  traj.seed = seed;
  traj.start_level = start_level;
  Stepper stepper{rates, std::mt19937_64(seed)};
  double t = 0.0;
  int level = start_level;
  while (true) {
    const auto [dt, next] = stepper.step(level);
    if (stepper.absorbing) {
      traj.absorbing_reached = true;
      break;
    }
    t += dt;
    if (t > t_end) break;
    level = next;
    traj.events.emplace_back(t, level);
  }
  return traj;
}

JumpStatistics count_multijumps(const TelegraphTrajectory& traj, double window,
                                CountingRule rule) {
  if (window <= 0.0) throw ConfigError("window T_W must be positive");
  JumpStatistics out;
  out.window = window;
  out.t_total = traj.t_end;
  JumpCounter counter{window, rule};
  double prev_time = 0.0;
  int prev_level = traj.start_level;
  double mean_gap = traj.events.empty()
                        ? std::numeric_limits<double>::infinity()
                        : traj.t_end / static_cast<double>(traj.events.size());
  for (const auto& [t, level] : traj.events) {
    counter.push(t - prev_time, level - prev_level);
    prev_time = t;
    prev_level = level;
  }
  out.n_double = counter.n_double;
  out.n_triple = counter.n_triple;
  out.djr = out.n_double / out.t_total;
  out.tjr = out.n_triple / out.t_total;
  out.djr_stderr = std::sqrt(static_cast<double>(out.n_double)) / out.t_total;
  out.tjr_stderr = std::sqrt(static_cast<double>(out.n_triple)) / out.t_total;
  if (window > 0.1 * mean_gap)
    out.warning = "window is not small against the mean holding time";
  return out;
}

JumpStatistics simulate_and_count(const RateMatrix& rates, double t_end,
                                  double window, std::uint64_t seed,
                                  CountingRule rule, std::int64_t max_events,
                                  int start_level) {
  if (t_end <= 0.0) throw ConfigError("t_end must be positive");
  if (window <= 0.0) throw ConfigError("window T_W must be positive");
  Stepper stepper{rates, std::mt19937_64(seed)};
  JumpCounter counter{window, rule};
  double t = 0.0;
  int level = start_level;
  std::int64_t n_events = 0;
  double total_gap = 0.0;
  while (t < t_end && (max_events < 0 || n_events < max_events)) {
    const auto [dt, next] = stepper.step(level);
    if (stepper.absorbing) break;
    t += dt;
    if (t > t_end) {
      t = t_end;
      break;
    }
    counter.push(dt, next - level);
    total_gap += dt;
    level = next;
    ++n_events;
  }
  JumpStatistics out;
  out.window = window;
  out.t_total = t;
  out.n_double = counter.n_double;
  out.n_triple = counter.n_triple;
  out.djr = out.n_double / out.t_total;
  out.tjr = out.n_triple / out.t_total;
  out.djr_stderr = std::sqrt(static_cast<double>(out.n_double)) / out.t_total;
  out.tjr_stderr = std::sqrt(static_cast<double>(out.n_triple)) / out.t_total;
  if (n_events > 0 && window > 0.1 * total_gap / static_cast<double>(n_events))
    out.warning = "window is not small against the mean holding time";
  return out;
}

void export_trajectory(const TelegraphTrajectory& traj, std::ostream& out) {
  out << "# time level (seed " << traj.seed << ", start " << traj.start_level
      << ")\n";
  out << 0.0 << ' ' << traj.start_level << '\n';
  for (const auto& [t, level] : traj.events) out << t << ' ' << level << '\n';
}

void export_statistics(const JumpStatistics& stats, std::ostream& out) {
  out << "n_double = " << stats.n_double << '\n'
      << "n_triple = " << stats.n_triple << '\n'
      << "t_total = " << stats.t_total << '\n'
      << "window = " << stats.window << '\n'
      << "djr = " << stats.djr << '\n'
      << "djr_stderr = " << stats.djr_stderr << '\n'
      << "tjr = " << stats.tjr << '\n'
      << "tjr_stderr = " << stats.tjr_stderr << '\n';
  if (!stats.warning.empty()) out << "warning = " << stats.warning << '\n';
}

}  // namespace jumpstat
