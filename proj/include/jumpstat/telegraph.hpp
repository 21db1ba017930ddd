#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "jumpstat/rates.hpp"
#include "jumpstat/types.hpp"

namespace jumpstat {

/// Sampled intensity telegraph process: each event is (time, new level).
struct TelegraphTrajectory {
  std::vector<std::pair<double, int>> events;
  double t_end = 0.0;
  std::uint64_t seed = 0;
  int start_level = 0;
  bool absorbing_reached = false;
};

/// How multi-jump events are identified within the window T_W.
enum class CountingRule {
  /// Each consecutive gap < T_W and net level change +-2 (+-3). This is
  /// the rule whose small-window limit matches the analytic formulas.
  NetChangeConsecutiveGaps,
  /// Net change +-2 (+-3) with the whole span < T_W (triples only differ
  /// from the gap rule; yields half the analytic triple-jump rate).
  NetChangeSpan,
  /// Any consecutive pair/triple inside the window regardless of net
  /// direction.
  AnyPair,
};

struct JumpStatistics {
  std::int64_t n_double = 0;
  std::int64_t n_triple = 0;
  double t_total = 0.0;
  double window = 0.0;  ///< T_W
  double djr = 0.0;     ///< n_double / t_total
  double tjr = 0.0;
  double djr_stderr = 0.0;  ///< Poisson standard errors
  double tjr_stderr = 0.0;
  std::string warning;
};

/// Double-jump rate of the 4-level birth-death chain:
///   n_DJ = 2 p01 p12 p21 p32 (p10 + p23) / D * T_W,
///   D = p21 p32 (p01 + p10) + p01 p12 (p23 + p32).
/// Throws ModelError when the chain is degenerate (zero denominator).
double analytic_djr(const RateMatrix& rates, double window);

/// Triple-jump rate: n_TJ = 2 p01 p10 p12 p21 p23 p32 / D * T_W^2.
double analytic_tjr(const RateMatrix& rates, double window);

/// Exact continuous-time Markov chain sample (mt19937_64 bit stream,
/// uniforms from the top 53 bits, exponentials by inverse CDF).
TelegraphTrajectory simulate(const RateMatrix& rates, double t_end,
                             std::uint64_t seed, int start_level = 0);

JumpStatistics count_multijumps(const TelegraphTrajectory& traj, double window,
                                CountingRule rule = CountingRule::NetChangeConsecutiveGaps);

/// Streaming simulate + count without storing the trajectory; used for
/// long Monte Carlo validation runs. `max_events` bounds the run
/// together with t_end (whichever is hit first).
JumpStatistics simulate_and_count(const RateMatrix& rates, double t_end,
                                  double window, std::uint64_t seed,
                                  CountingRule rule = CountingRule::NetChangeConsecutiveGaps,
                                  std::int64_t max_events = -1,
                                  int start_level = 0);

/// Two-column "time level" text export with a comment header.
void export_trajectory(const TelegraphTrajectory& traj, std::ostream& out);
/// Key-value text block.
void export_statistics(const JumpStatistics& stats, std::ostream& out);

}  // namespace jumpstat
