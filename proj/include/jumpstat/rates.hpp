#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "jumpstat/liouville.hpp"
#include "jumpstat/model.hpp"
#include "jumpstat/types.hpp"

namespace jumpstat {

/// Stationary component of the strong dynamics for one configuration of
/// shelved atoms (the atoms in `dark_atoms` sit in the dark level, the
/// rest occupy the laser-driven {|1>, |3>} manifold).
struct SubsetComponent {
  std::vector<int> dark_atoms;
  int bright_count = 0;
  Matrix rho;  ///< unit trace, supported on the core block
};

/// Quasi-steady state of one intensity period plus its dual.
struct QuasiSteadyState {
  int k = 0;           ///< intensity index (number of bright atoms)
  std::string label;   ///< "S0", "S1", ...
  Matrix rho_ss;       ///< uniform mixture over the dark-subset components
  Matrix dual;         ///< left null vector with Tr(dual^dag rho_ss,j) = delta_kj
};

struct QuasiSteadyStates {
  std::vector<SubsetComponent> components;
  std::vector<QuasiSteadyState> classes;  ///< ordered k = 0..n
};

/// Null vectors of the strong generator, one per dark subset, assembled
/// into per-intensity-class states and biorthogonal duals.
/// Requires scheme.rabi > 0. Throws AmbiguityError when a block kernel
/// is degenerate or the dual computation fails to converge.
QuasiSteadyStates quasi_steady_states(const EnsembleSpec& spec,
                                      const SparseMatrix& strong_generator);

/// Transition rates of the intensity birth-death chain.
struct RateMatrix {
  int n_levels = 0;                  ///< intensity periods = n_atoms + 1
  RealVector up;                     ///< up[i]   = p_{i,i+1}
  RealVector down;                   ///< down[i] = p_{i+1,i}
  double max_off_birth_death = 0.0;  ///< largest |alpha_ij| with |i-j| > 1

  double rate(int i, int j) const;  ///< 0 for |i-j| != 1
};

/// alpha_ij = Re Tr(dual_j^dag L_weak rho_ss,i), assembled into a
/// RateMatrix. Rates in [-1e-10, 0) are clamped to zero; anything more
/// negative raises ModelError.
RateMatrix rates_by_projection(const SparseMatrix& weak_generator,
                               const QuasiSteadyStates& qss);

/// One weak decay route between symmetrized states of adjacent
/// intensity periods.
struct DecayChannel {
  std::string from_state;
  std::string to_state;
  int from_class = 0;
  int to_class = 0;
  double rate = 0.0;       ///< collective decay weight of the route
  Vector from_vec;         ///< source state in the product basis
};

/// Complete channel enumeration from the per-subset symmetrized states
/// and the weak part of the reset map; channels below 1e-14 * A_3 are
/// dropped.
std::vector<DecayChannel> channels_for(const EnsembleSpec& spec,
                                       const CouplingSet& couplings);

/// p_ij = sum over channels i->j of rate x population of the source
/// state in rho_ss,i.
RateMatrix rates_by_simplified_scheme(const std::vector<DecayChannel>& channels,
                                      const QuasiSteadyStates& qss);

struct ClosedFormRates {
  RateMatrix exact;
  RateMatrix first_order;  ///< linearization in C_3 (detuning terms included)
};

/// Closed-form rates for 1-3 four-level atoms with equal pairwise C_3
/// (equilateral geometry). Upward rates p_{k,k+1} = (n-k) A_1 are exact;
/// downward rates use the exact detuned expressions with
/// B = |C_3|^2 + 2 A_3 Re C_3 - 4 Delta_3 Im C_3.
/// Throws ConfigError for D schemes or non-equilateral geometry.
ClosedFormRates closed_form_rates(const EnsembleSpec& spec, Complex c3,
                                  double delta3);

/// Closed-form populations of the fully bright three-atom quasi-steady
/// state (Delta_3 = 0): keys g, s113, b113, c113, s133, b133, c133, e3.
std::map<std::string, double> rho_ss3_populations(double a3, double omega3,
                                                  Complex c3);

struct PerturbativeResult {
  Matrix rho;
  double residual_norm = 0.0;
  bool window_ok = true;
  std::string warning;
};

/// First-order slow evolution over dt starting from the quasi-steady
/// state whose subspace carries rho0:
///   rho_ss,i + dt * sum_j alpha_ij rho_ss,j + pseudo-inverse residual.
/// The timescale window (dt * strong_scale >= window_strong_min and
/// dt * weak_scale <= window_weak_max) produces a warning, not an error.
PerturbativeResult perturbative_evolution(const EnsembleSpec& spec,
                                          const CouplingSet& couplings,
                                          const Matrix& rho0, double dt,
                                          double window_strong_min = 10.0,
                                          double window_weak_max = 0.1);

/// Plain-text rate table: one "i j rate method" row per transition.
void export_rate_table(const RateMatrix& rates, const std::string& method,
                       std::ostream& out);

}  // namespace jumpstat
