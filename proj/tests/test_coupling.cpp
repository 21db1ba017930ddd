#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jumpstat/coupling.hpp"
#include "jumpstat/model.hpp"

using namespace jumpstat;

namespace {

LevelScheme four_level() {
  LevelScheme s;
  s.kind = SchemeKind::FourLevel;
  s.einstein = {{1, 2e-4}, {2, 1.0}, {3, 1.0}, {4, 1.3}};
  s.rabi = 0.7;
  s.incoherent_w = 6e-4;
  s.wavelengths = {{1, 3.5}, {2, 1.25}, {3, 1.0}, {4, 0.92}};
  return s;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("far-field decay") {
  const Complex c = coupling_parameter(1.0, 1e6, kPi / 2.0);
  CHECK(std::abs(c) < 1e-5);
}

TEST_CASE("near-field limit at perpendicular dipoles") {
  const double a = 1e-3;
  const Complex c = coupling_parameter(1.0, a, kPi / 2.0);
  CHECK(c.real() == doctest::Approx(1.0 - a * a / 5.0).epsilon(1e-10));
  CHECK(std::abs(c.real() - 1.0) < 1e-5);  // Re C -> A_j as a -> 0+
}

TEST_CASE("regression fixture at a = 2 pi (independently computed)") {
  const Complex c = coupling_parameter(1.0, 2.0 * kPi, kPi / 2.0);
  CHECK(c.real() == doctest::Approx(0.03799544386587666).epsilon(1e-13));
  CHECK(c.imag() == doctest::Approx(-0.23268525193161810).epsilon(1e-13));
}

TEST_CASE("domain error for nonpositive separation") {
  CHECK_THROWS_AS(coupling_parameter(1.0, 0.0, kPi / 2.0), ConfigError);
  CHECK_THROWS_AS(coupling_parameter(1.0, -1.0, kPi / 2.0), ConfigError);
}

TEST_CASE("far-field bound |C| <= K / a") {
  // leading 1/a term of the formula at theta = pi/2: K = 3 A_j / 2
  for (double a : {1.0, 2.0, 5.0, 17.0, 120.0}) {
    const Complex c = coupling_parameter(1.0, a, kPi / 2.0);
    CHECK(std::abs(c) <= 1.5 / a * (1.0 + 2.0 / a));
  }
}

TEST_CASE("pair symmetry and equilateral degeneracy") {
  const auto geom = Geometry::equilateral(1.0, 3);
  const auto set = build_coupling_set(geom, four_level());
  for (int j = 1; j <= 4; ++j) {
    CHECK(set.get(0, 1, j) == set.get(1, 0, j));
    CHECK(std::abs(set.get(0, 1, j) - set.get(0, 2, j)) < 1e-15);
    CHECK(std::abs(set.get(0, 1, j) - set.get(1, 2, j)) < 1e-15);
  }
}

TEST_CASE("decoupling at large distance") {
  const auto geom = Geometry::equilateral(1e7, 2);
  const auto set = build_coupling_set(geom, four_level());
  for (int j = 1; j <= 4; ++j) CHECK(std::abs(set.get(0, 1, j)) < 1e-5);
}

TEST_CASE("strong-only policy zeroes the weak couplings") {
  const auto geom = Geometry::equilateral(0.8, 2);
  const auto set =
      build_coupling_set(geom, four_level(), CouplingPolicy::StrongOnly);
  CHECK(std::abs(set.get(0, 1, 3)) > 0.0);
  for (int j : {1, 2, 4}) CHECK(set.get(0, 1, j) == Complex(0.0, 0.0));
}

TEST_CASE("angles recovered from a dipole direction") {
  // atoms on the z axis, dipoles along x -> theta = pi/2
  std::vector<Eigen::Vector3d> pos = {{0, 0, 0}, {0, 0, 2.5}};
  const auto table = angles_from_dipole(pos, Eigen::Vector3d(1, 0, 0));
  CHECK(table.at({0, 1}) == doctest::Approx(kPi / 2.0));

  Geometry geom;
  geom.positions = pos;
  geom.angle_policy = DipoleAnglePolicy::Explicit;
  geom.explicit_angles = table;
  const auto set = build_coupling_set(geom, four_level());
  CHECK(set.argument(0, 1, 3) == doctest::Approx(2.0 * kPi * 2.5));
  const Complex direct = coupling_parameter(1.0, 2.0 * kPi * 2.5, kPi / 2.0);
  CHECK(std::abs(set.get(0, 1, 3) - direct) < 1e-15);
}

TEST_CASE("missing wavelength is a configuration error") {
  auto scheme = four_level();
  scheme.wavelengths.erase(2);
  const auto geom = Geometry::equilateral(1.0, 2);
  CHECK_THROWS_AS(build_coupling_set(geom, scheme), ConfigError);
}

TEST_CASE("collective damping positive semidefinite for r >= 0.05 lambda") {
  for (double r : {0.05, 0.07, 0.1, 0.2, 0.5, 1.0, 4.0}) {
    const double re_c =
        coupling_parameter(1.0, 2.0 * kPi * r, kPi / 2.0).real();
    Eigen::Matrix3d damp = Eigen::Matrix3d::Constant(re_c);
    damp.diagonal().setConstant(1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(damp);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  }
}
