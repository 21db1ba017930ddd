#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jumpstat/model.hpp"

using namespace jumpstat;

namespace {

EnsembleSpec make_spec(SchemeKind kind, int n_atoms) {
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
  spec.geometry = Geometry::equilateral(1.0, n_atoms);
  return spec;
}

Matrix gram(const std::vector<BasisState>& basis, int dim) {
  Matrix m(dim, static_cast<int>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i)
    m.col(static_cast<int>(i)) = basis[i].to_vector(dim);
  return m.adjoint() * m;
}

}  // namespace

TEST_CASE("product basis sizes") {
  CHECK(build_product_basis(make_spec(SchemeKind::DThreeLevel, 1)).size() == 3);
  CHECK(build_product_basis(make_spec(SchemeKind::DThreeLevel, 2)).size() == 9);
  CHECK(build_product_basis(make_spec(SchemeKind::FourLevel, 3)).size() == 64);
}

TEST_CASE("single-atom product labels") {
  const auto basis = build_product_basis(make_spec(SchemeKind::DThreeLevel, 1));
  CHECK(basis[0].label == "|1>");
  CHECK(basis[1].label == "|2>");
  CHECK(basis[2].label == "|3>");
}

TEST_CASE("two-atom symmetric pair state") {
  const auto spec = make_spec(SchemeKind::DThreeLevel, 2);
  const auto basis = build_symmetrized_basis(spec);
  const int dim = spec.dim();
  bool found = false;
  for (const auto& b : basis) {
    if (b.label != "s12") continue;
    found = true;
    const Vector v = b.to_vector(dim);
    // (|12> + |21>)/sqrt(2): product indices 0*3+1 and 1*3+0
    CHECK(std::abs(v(1) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(v(3) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
  }
  CHECK(found);
}

TEST_CASE("three-atom s133 state") {
  const auto spec = make_spec(SchemeKind::DThreeLevel, 3);
  const auto basis = build_symmetrized_basis(spec);
  const int dim = spec.dim();
  bool found = false;
  for (const auto& b : basis) {
    if (b.label != "s133") continue;
    found = true;
    const Vector v = b.to_vector(dim);
    // (|133> + |331> + |313>)/sqrt(3), digits base 3 of {0,2,2}
    const double amp = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(v(0 * 9 + 2 * 3 + 2) - amp) < 1e-12);
    CHECK(std::abs(v(2 * 9 + 2 * 3 + 0) - amp) < 1e-12);
    CHECK(std::abs(v(2 * 9 + 0 * 3 + 2) - amp) < 1e-12);
  }
  CHECK(found);
}

TEST_CASE("symmetrized bases are complete and orthonormal") {
  for (auto kind : {SchemeKind::DThreeLevel, SchemeKind::FourLevel}) {
    for (int n : {2, 3}) {
      const auto spec = make_spec(kind, n);
      const auto basis = build_symmetrized_basis(spec);
      const int dim = spec.dim();
      CHECK(static_cast<int>(basis.size()) == dim);
      const Matrix g = gram(basis, dim);
      CHECK((g - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("symmetrized basis rejects a single atom") {
  CHECK_THROWS_AS(build_symmetrized_basis(make_spec(SchemeKind::DThreeLevel, 1)),
                  ConfigError);
}

TEST_CASE("intensity subspaces of a single D system") {
  const auto subs = intensity_subspaces(make_spec(SchemeKind::DThreeLevel, 1));
  REQUIRE(subs.size() == 2);
  CHECK(subs[0].first == "S0");
  CHECK(subs[0].second == std::vector<int>{1});           // |2>
  CHECK(subs[1].second == std::vector<int>{0, 2});        // |1>, |3>
}

TEST_CASE("intensity subspace dimensions") {
  const auto d2 = intensity_subspaces(make_spec(SchemeKind::DThreeLevel, 2));
  CHECK(d2[0].second.size() == 1);
  CHECK(d2[1].second.size() == 4);
  CHECK(d2[2].second.size() == 4);
  const auto f3 = intensity_subspaces(make_spec(SchemeKind::FourLevel, 3));
  CHECK(f3[0].second.size() == 1);
  CHECK(f3[1].second.size() == 9);
  CHECK(f3[2].second.size() == 27);
  CHECK(f3[3].second.size() == 27);
  size_t total = 0;
  for (const auto& [label, idxs] : f3) total += idxs.size();
  CHECK(total == 64);
}

TEST_CASE("intensity labels are permutation symmetric") {
  const auto spec = make_spec(SchemeKind::FourLevel, 3);
  // swapping atoms 0 and 2 maps each S_k onto itself
  for (int idx = 0; idx < spec.dim(); ++idx) {
    const int l0 = idx / 16, l1 = (idx / 4) % 4, l2 = idx % 4;
    const int swapped = l2 * 16 + l1 * 4 + l0;
    CHECK(bright_count(spec, idx) == bright_count(spec, swapped));
  }
}

TEST_CASE("scheme validation and hierarchy report") {
  auto spec = make_spec(SchemeKind::DThreeLevel, 1);
  CHECK(spec.scheme.hierarchy_ok(100.0));
  spec.scheme.einstein[2] = 0.5;  // weak transition no longer weak
  CHECK_FALSE(spec.scheme.hierarchy_ok(100.0));
  spec.scheme.einstein[2] = -1.0;
  CHECK_THROWS_AS(spec.scheme.validate(), ConfigError);
}

TEST_CASE("four-level branching ratio") {
  const auto spec = make_spec(SchemeKind::FourLevel, 1);
  CHECK(spec.scheme.dark_branching() == doctest::Approx(1.0 / 2.3));
  CHECK(spec.scheme.effective_shelving_rate() ==
        doctest::Approx(6e-4 / 2.3));
}
