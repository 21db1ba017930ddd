#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "jumpstat/liouville.hpp"

using namespace jumpstat;

namespace {

EnsembleSpec make_spec(SchemeKind kind, int n_atoms, double r = 1.0) {
  EnsembleSpec spec;
  spec.scheme.kind = kind;
  if (kind == SchemeKind::DThreeLevel) {
    spec.scheme.einstein = {{1, 1e-4}, {2, 2.5e-4}, {3, 1.0}};
    spec.scheme.wavelengths = {{1, 2.0}, {2, 1.5}, {3, 1.0}};
  } else {
    spec.scheme.einstein = {{1, 2e-4}, {2, 1.0}, {3, 1.0}, {4, 1.3}};
    spec.scheme.incoherent_w = 6e-4;
    spec.scheme.wavelengths = {{1, 3.5}, {2, 1.25}, {3, 1.0}, {4, 0.92}};
  }
  spec.scheme.rabi = 0.9;
  spec.n_atoms = n_atoms;
  spec.geometry = Geometry::equilateral(r, n_atoms);
  return spec;
}

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return 0.5 * (m + m.adjoint());
}

}  // namespace

TEST_CASE("single D conditional Hamiltonian with only the strong decay") {
  auto spec = make_spec(SchemeKind::DThreeLevel, 1);
  spec.scheme.einstein[1] = 0.0;
  spec.scheme.einstein[2] = 0.0;
  spec.scheme.rabi = 1.0;
  CouplingSet none;
  const Matrix h = build_hcond(spec, none);
  Matrix expect = Matrix::Zero(3, 3);
  expect(2, 2) = Complex(0.0, -0.5);       // (1/2i)|3><3|
  expect(0, 2) = expect(2, 0) = 0.5;       // (1/2)(|1><3| + |3><1|)
  CHECK((h - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("decoupled conditional Hamiltonian has tensor-product structure") {
  const auto spec = make_spec(SchemeKind::DThreeLevel, 2);
  CouplingSet none;
  const Matrix h2 = build_hcond(spec, none);
  const auto spec1 = make_spec(SchemeKind::DThreeLevel, 1);
  const Matrix h1 = build_hcond(spec1, none);
  Matrix expect = Matrix::Zero(9, 9);
  const Matrix eye = Matrix::Identity(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      expect.block(r * 3, c * 3, 3, 3) += h1(r, c) * eye;   // atom 0
      expect.block(r * 3, c * 3, 3, 3) += (r == c) * h1;    // atom 1
    }
  CHECK((h2 - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("anti-Hermitian part of H_cond only damps") {
  for (double r : {0.1, 0.5, 1.0, 3.0}) {
    const auto spec = make_spec(SchemeKind::FourLevel, 2, r);
    const auto couplings = build_coupling_set(spec.geometry, spec.scheme);
    const Matrix h = build_hcond(spec, couplings);
    // h = H_herm - (i/2) Gamma, so Gamma = i (h - h^dag)
    const Matrix anti = Complex(0.0, 1.0) * (h - h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(anti);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);  // decay rates >= 0
  }
}

TEST_CASE("reset of a single excited D atom") {
  const auto spec = make_spec(SchemeKind::DThreeLevel, 1);
  CouplingSet none;
  const auto reset = build_reset(spec, none);
  Matrix rho = Matrix::Zero(3, 3);
  rho(2, 2) = 1.0;  // |3><3|
  const Matrix out = reset.apply(rho);
  CHECK(std::abs(out(1, 1) - 2.5e-4) < 1e-18);  // A2 |2><2|
  CHECK(std::abs(out(0, 0) - 1.0) < 1e-15);     // A3 |1><1|
  CHECK(out.cwiseAbs().sum() == doctest::Approx(1.0 + 2.5e-4));
}

TEST_CASE("reset of the ground state vanishes") {
  const auto spec = make_spec(SchemeKind::FourLevel, 2);
  const auto couplings = build_coupling_set(spec.geometry, spec.scheme);
  const auto reset = build_reset(spec, couplings);
  Matrix rho = Matrix::Zero(16, 16);
  rho(0, 0) = 1.0;
  CHECK(reset.apply(rho).cwiseAbs().maxCoeff() < 1e-18);
}

TEST_CASE("two-atom reset distributes with collective weights A +- Re C") {
  const auto spec = make_spec(SchemeKind::DThreeLevel, 2, 0.6);
  const auto couplings = build_coupling_set(spec.geometry, spec.scheme);
  const auto reset = build_reset(spec, couplings);
  // |e3> = |33>: both atoms excited, product index 2*3+2 = 8
  Matrix rho = Matrix::Zero(9, 9);
  rho(8, 8) = 1.0;
  const Matrix out = reset.apply(rho);
  // s23 = (|23>+|32>)/sqrt2 (indices 5 and 7), a23 the difference
  Vector s = Vector::Zero(9), a = Vector::Zero(9);
  s(5) = s(7) = 1.0 / std::sqrt(2.0);
  a(5) = 1.0 / std::sqrt(2.0);
  a(7) = -1.0 / std::sqrt(2.0);
  const double a2 = 2.5e-4;
  const double re_c2 = couplings.get(0, 1, 2).real();
  CHECK(s.dot(out * s).real() == doctest::Approx(a2 + re_c2).epsilon(1e-12));
  CHECK(a.dot(out * a).real() == doctest::Approx(a2 - re_c2).epsilon(1e-12));
}

TEST_CASE("incoherent driving pumps the ground state") {
  const auto spec = make_spec(SchemeKind::FourLevel, 1);
  const auto rw = build_incoherent(spec);
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = 1.0;
  const Matrix out = rw.apply(rho);
  CHECK(out(3, 3).real() == doctest::Approx(6e-4));  // W |4><4| gain
  CHECK(std::abs(out.trace()) < 1e-18);
}

TEST_CASE("incoherent driving rejected for D schemes and zero for W = 0") {
  CHECK_THROWS_AS(build_incoherent(make_spec(SchemeKind::DThreeLevel, 1)),
                  ConfigError);
  auto spec = make_spec(SchemeKind::FourLevel, 1);
  spec.scheme.incoherent_w = 0.0;
  CHECK(build_incoherent(spec).op.norm() == 0.0);
}

TEST_CASE("L0 + L1 = Full and trace/Hermiticity preservation") {
  std::mt19937_64 rng(7);
  for (auto kind : {SchemeKind::DThreeLevel, SchemeKind::FourLevel}) {
    for (int n : {1, 2}) {
      const auto spec = make_spec(kind, n, 0.8);
      const auto couplings = build_coupling_set(spec.geometry, spec.scheme);
      const auto full = build_full_generator(spec, couplings);
      const auto [l0, l1] = split_generator(spec, couplings);
      CHECK(SparseMatrix(full.op - l0.op - l1.op).norm() < 1e-12);
      const auto [ls, lw] = split_strong_weak(spec, couplings);
      CHECK(SparseMatrix(full.op - ls.op - lw.op).norm() < 1e-12);
      for (int t = 0; t < 20; ++t) {
        Matrix rho = random_hermitian(spec.dim(), rng);
        rho /= rho.norm();
        const Matrix out = full.apply(rho);
        CHECK(std::abs(out.trace()) < 1e-10);
        CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("weak generator applied to the bright single-D state") {
  // L1 rho_ss,1 term by term: -A2 pop3 |3><3| feeds |2><2| and p01-type
  // terms vanish since the atom is not shelved.
  const auto spec = make_spec(SchemeKind::DThreeLevel, 1);
  CouplingSet none;
  const auto [l0, l1] = split_generator(spec, none);
  const double om = spec.scheme.rabi, a3 = 1.0;
  const double den = a3 * a3 + 2.0 * om * om;
  Matrix rho = Matrix::Zero(3, 3);
  rho(0, 0) = (a3 * a3 + om * om) / den;
  rho(2, 2) = om * om / den;
  rho(0, 2) = Complex(0.0, a3 * om / den);
  rho(2, 0) = Complex(0.0, -a3 * om / den);
  const Matrix out = l1.apply(rho);
  const double a2 = 2.5e-4;
  CHECK(out(1, 1).real() == doctest::Approx(a2 * om * om / den));  // gain of |2>
  CHECK(out(2, 2).real() == doctest::Approx(-a2 * om * om / den));  // loss of |3>
}

TEST_CASE("independent atoms: spectrum is the Minkowski sum") {
  const auto spec1 = make_spec(SchemeKind::DThreeLevel, 1);
  const auto spec2 = make_spec(SchemeKind::DThreeLevel, 2);
  CouplingSet none;
  const auto [l0a, l1a] = split_generator(spec1, none);
  const auto [l0b, l1b] = split_generator(spec2, none);
  const Eigen::ComplexEigenSolver<Matrix> e1((Matrix(l0a.op)));
  const Eigen::ComplexEigenSolver<Matrix> e2((Matrix(l0b.op)));
  std::vector<Complex> expect;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      expect.push_back(e1.eigenvalues()(i) + e1.eigenvalues()(j));
  // every two-atom eigenvalue appears in the pairwise-sum list
  for (int k = 0; k < e2.eigenvalues().size(); ++k) {
    double best = 1e9;
    for (const Complex& s : expect)
      best = std::min(best, std::abs(s - e2.eigenvalues()(k)));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("restriction to an invariant block") {
  const auto spec = make_spec(SchemeKind::DThreeLevel, 1);
  CouplingSet none;
  const auto [l0, l1] = split_generator(spec, none);
  const auto blk = restrict_to_subspace(l0, {0, 2});
  CHECK(blk.op.rows() == 4);
  const auto spec3 = make_spec(SchemeKind::FourLevel, 3);
  const auto couplings = build_coupling_set(spec3.geometry, spec3.scheme);
  const auto [l0f, l1f] = split_generator(spec3, couplings);
  std::vector<int> s3;
  for (int idx = 0; idx < 64; ++idx)
    if (bright_count(spec3, idx) == 3) s3.push_back(idx);
  // S3 is invariant under L0 but |4> couples it 27-dimensionally
  CHECK(restrict_to_subspace(l0f, s3).op.rows() == 27 * 27);
  // the full generator leaks out of S1 of the single D system
  const auto full = build_full_generator(spec, none);
  CHECK_THROWS_AS(restrict_to_subspace(full, {0, 2}), InvariantViolation);
}

TEST_CASE("generator matches the exponential propagator") {
  // sanity anchor: evolving the bright single-D state for a long time
  // under the full generator reaches the unique stationary state
  const auto spec = make_spec(SchemeKind::DThreeLevel, 1);
  CouplingSet none;
  const auto full = build_full_generator(spec, none);
  const Matrix l = Matrix(full.op);
  // the slow shelving/unshelving scale is ~2e-4, so equilibration
  // needs t >> 5e3
  const Matrix prop = (l * 2e5).exp();
  Vector v = Vector::Zero(9);
  v(0) = 1.0;  // |1><1|
  const Vector ss = prop * v;
  const Vector ss2 = (l * 4e5).exp() * v;
  CHECK((ss - ss2).norm() < 1e-10);
  CHECK(std::abs((full.op * ss).norm()) < 1e-10);
}

TEST_CASE("debug dump emits sparse triplets") {
  const auto spec = make_spec(SchemeKind::DThreeLevel, 1);
  CouplingSet none;
  const auto full = build_full_generator(spec, none);
  std::ostringstream os;
  dump_superoperator(full, os);
  CHECK(os.str().find(' ') != std::string::npos);
  int lines = 0;
  for (char c : os.str())
    if (c == '\n') ++lines;
  CHECK(lines == full.op.nonZeros());
}
