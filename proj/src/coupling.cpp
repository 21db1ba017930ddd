#include "jumpstat/coupling.hpp"

#include <cmath>
#include <numbers>

#include "jumpstat/model.hpp"

namespace jumpstat {

Geometry Geometry::equilateral(double r, int n_atoms) {
  if (r <= 0.0) throw ConfigError("equilateral distance must be positive");
  if (n_atoms < 1 || n_atoms > 3)
    throw ConfigError("equilateral preset supports 1-3 atoms");
  Geometry g;
  g.angle_policy = DipoleAnglePolicy::Perpendicular;
  g.positions.emplace_back(0.0, 0.0, 0.0);
  if (n_atoms >= 2) g.positions.emplace_back(r, 0.0, 0.0);
  if (n_atoms >= 3)
    g.positions.emplace_back(0.5 * r, 0.5 * std::sqrt(3.0) * r, 0.0);
  return g;
}

double Geometry::pair_distance(int k, int l) const {
  const double r = (positions.at(k) - positions.at(l)).norm();
  if (r <= 0.0) throw ConfigError("coincident atoms: pair distance must be positive");
  return r;
}

double Geometry::pair_angle(int k, int l) const {
  if (angle_policy == DipoleAnglePolicy::Perpendicular)
    return std::numbers::pi / 2.0;
  const auto key = std::make_pair(std::min(k, l), std::max(k, l));
  const auto it = explicit_angles.find(key);
  if (it == explicit_angles.end())
    throw ConfigError("missing explicit dipole angle for atom pair");
  return it->second;
}

bool Geometry::is_equilateral(double rel_tol) const {
  const int n = n_atoms();
  if (n <= 2) return true;
  const double r0 = pair_distance(0, 1);
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      if (std::abs(pair_distance(k, l) - r0) > rel_tol * r0) return false;
  return true;
}

std::map<std::pair<int, int>, double> angles_from_dipole(
    const std::vector<Eigen::Vector3d>& positions, const Eigen::Vector3d& dipole) {
  if (dipole.norm() <= 0.0) throw ConfigError("dipole direction must be nonzero");
  std::map<std::pair<int, int>, double> out;
  const Eigen::Vector3d d = dipole.normalized();
  const int n = static_cast<int>(positions.size());
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      const Eigen::Vector3d sep = positions[l] - positions[k];
      if (sep.norm() <= 0.0) throw ConfigError("coincident atoms in angle table");
      const double c = std::clamp(d.dot(sep.normalized()), -1.0, 1.0);
      out[{k, l}] = std::acos(c);
    }
  }
  return out;
}

Complex CouplingSet::get(int k, int l, int j) const {
  const auto key = std::make_pair(std::min(k, l), std::max(k, l));
  const auto it = c.find(key);
  if (it == c.end()) return Complex(0.0, 0.0);
  const auto jt = it->second.find(j);
  return jt == it->second.end() ? Complex(0.0, 0.0) : jt->second;
}

double CouplingSet::argument(int k, int l, int j) const {
  const auto key = std::make_pair(std::min(k, l), std::max(k, l));
  return a.at(key).at(j);
}

Complex coupling_parameter(double a_j, double a, double theta) {
  if (a <= 0.0) throw ConfigError("coupling argument a must be positive");
  const Complex i(0.0, 1.0);
  const double c2 = std::cos(theta) * std::cos(theta);
  const Complex radial = (1.0 / (i * a)) * (1.0 - c2) +
                         (1.0 / (a * a) - 1.0 / (i * a * a * a)) * (1.0 - 3.0 * c2);
  return 1.5 * a_j * std::exp(i * a) * radial;
}

CouplingSet build_coupling_set(const Geometry& geometry, const LevelScheme& scheme,
                               CouplingPolicy policy) {
  CouplingSet set;
  const int n = geometry.n_atoms();
  const auto transitions = scheme.transitions();
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      const double r = geometry.pair_distance(k, l);
      const double theta = geometry.pair_angle(k, l);
      for (const auto& t : transitions) {
        if (t.wavelength <= 0.0)
          throw ConfigError("missing wavelength for transition j=" +
                            std::to_string(t.j));
        const double a = 2.0 * std::numbers::pi * r / t.wavelength;
        set.a[{k, l}][t.j] = a;
        const bool active = policy == CouplingPolicy::AllTransitions || t.j == 3;
        set.c[{k, l}][t.j] =
            active ? coupling_parameter(t.rate, a, theta) : Complex(0.0, 0.0);
      }
    }
  }
  return set;
}

}  // namespace jumpstat
