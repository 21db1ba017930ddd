#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "jumpstat/types.hpp"

namespace jumpstat {

struct LevelScheme;  // defined in model.hpp

/// How the dipole orientation angle theta_kl is determined per atom pair.
enum class DipoleAnglePolicy {
  Perpendicular,  ///< theta_kl = pi/2 for every pair (the paper's optimum)
  Explicit,       ///< theta_kl looked up in a user-supplied table
};

/// Which radiative transitions contribute dipole-dipole couplings.
enum class CouplingPolicy {
  AllTransitions,  ///< couplings for every radiative transition j
  StrongOnly,      ///< only the strong transition j = 3 couples
};

/// Atom positions (units of lambda_3) plus the dipole-angle convention.
struct Geometry {
  std::vector<Eigen::Vector3d> positions;
  DipoleAnglePolicy angle_policy = DipoleAnglePolicy::Perpendicular;
  /// Pair (k, l) with k < l -> theta_kl; consulted only under Explicit.
  std::map<std::pair<int, int>, double> explicit_angles;

  /// n_atoms points with equal pairwise distance r (point, segment, triangle).
  static Geometry equilateral(double r, int n_atoms);

  int n_atoms() const { return static_cast<int>(positions.size()); }
  double pair_distance(int k, int l) const;
  double pair_angle(int k, int l) const;
  /// True when built by equilateral() or when all pairwise distances agree.
  bool is_equilateral(double rel_tol = 1e-12) const;
};

/// Angle table for Explicit policy derived from a common dipole direction:
/// theta_kl is the angle between `dipole` and the line joining atoms k and l.
std::map<std::pair<int, int>, double> angles_from_dipole(
    const std::vector<Eigen::Vector3d>& positions, const Eigen::Vector3d& dipole);

/// Complex pair couplings C_kl^(j) and the dimensionless arguments a_kl^(j).
struct CouplingSet {
  std::map<std::pair<int, int>, std::map<int, Complex>> c;
  std::map<std::pair<int, int>, std::map<int, double>> a;

  Complex get(int k, int l, int j) const;
  double argument(int k, int l, int j) const;
};

/// C(A_j, a, theta) = (3 A_j / 2) e^{ia} [ (1/(ia))(1 - cos^2 t)
///                     + (1/a^2 - 1/(ia^3))(1 - 3 cos^2 t) ].
/// Throws ConfigError for a <= 0 (coincident atoms unsupported).
Complex coupling_parameter(double a_j, double a, double theta);

/// Couplings for every pair and every radiative transition of the scheme.
/// Under StrongOnly all couplings except j = 3 are set to zero.
CouplingSet build_coupling_set(const Geometry& geometry, const LevelScheme& scheme,
                               CouplingPolicy policy = CouplingPolicy::AllTransitions);

}  // namespace jumpstat
