#pragma once

#include <map>
#include <string>
#include <vector>

#include "jumpstat/coupling.hpp"
#include "jumpstat/types.hpp"

namespace jumpstat {

enum class SchemeKind {
  DThreeLevel,  ///< |1> ground, |2> metastable dark, |3> strong excited
  FourLevel,    ///< adds |4>, incoherently pumped from |1> at rate W
};

/// One radiative transition j: S_j^+ = |upper><lower| per atom.
struct Transition {
  int j;
  int upper;
  int lower;
  double rate;        ///< Einstein coefficient A_j (units of A_3)
  double wavelength;  ///< lambda_j (units of lambda_3)
};

/// Atomic level scheme with all rates in units of A_3 and lengths in
/// units of lambda_3 (A_3 = 1, lambda_3 = 1 in the canonical setup).
struct LevelScheme {
  SchemeKind kind = SchemeKind::DThreeLevel;
  std::map<int, double> einstein;     ///< j -> A_j
  double rabi = 0.0;                  ///< Omega_3 on the 1-3 transition
  double incoherent_w = 0.0;          ///< W (four-level only)
  double detuning = 0.0;              ///< Delta_3
  std::map<int, double> wavelengths;  ///< j -> lambda_j

  int n_levels() const { return kind == SchemeKind::FourLevel ? 4 : 3; }
  static constexpr int kDarkLevel = 1;  ///< zero-based index of |2>
  bool is_bright_level(int level) const { return level != kDarkLevel; }

  /// Radiative transitions of this scheme in order of j.
  std::vector<Transition> transitions() const;
  double einstein_a(int j) const;
  double wavelength(int j) const;
  /// Branch fraction A_2/(A_2 + A_4) of the |4> decay that shelves the
  /// atom in the dark level (four-level scheme).
  double dark_branching() const;
  /// Effective incoherent shelving rate W * A_2/(A_2 + A_4).
  double effective_shelving_rate() const;

  /// Check A_j, Omega_3, W >= 0; throw ConfigError otherwise.
  void validate() const;
  /// True when the strong scale min(A_3, Omega_3) exceeds every weak
  /// rate by at least `ratio` (reported, never enforced).
  bool hierarchy_ok(double ratio = 100.0) const;
};

struct EnsembleSpec {
  LevelScheme scheme;
  int n_atoms = 1;
  Geometry geometry;

  int dim() const;  ///< product-space dimension d^n
  void validate() const;
};

/// A (possibly symmetrized) n-atom state expanded over the product basis.
struct BasisState {
  std::string label;
  std::vector<std::pair<int, Complex>> coefficients;

  Vector to_vector(int dim) const;
};

/// Product states |i_1 ... i_n> in lexicographic order; atom 0 is the
/// most significant digit (matching the Kronecker ordering used by the
/// operator builders).
std::vector<BasisState> build_product_basis(const EnsembleSpec& spec);

/// Orthonormal permutation-symmetrized basis for 2 or 3 atoms:
/// n=2 pair states g/e_i/s_ij/a_ij, n=3 the s/a/b/c/d/e family for
/// distinct triples and s/b/c for two-equal index patterns.
std::vector<BasisState> build_symmetrized_basis(const EnsembleSpec& spec);

/// Intensity period I_k <-> product states with exactly k atoms outside
/// the dark level, ordered k = 0..n.
std::vector<std::pair<std::string, std::vector<int>>> intensity_subspaces(
    const EnsembleSpec& spec);

/// Number of atoms of the given product state not shelved in the dark level.
int bright_count(const EnsembleSpec& spec, int product_index);

}  // namespace jumpstat
