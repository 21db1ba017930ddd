#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "jumpstat/model.hpp"
#include "jumpstat/types.hpp"

namespace jumpstat {

enum class SuperoperatorTag {
  L0,
  L1,
  Full,
  HcondPart,
  ResetPart,
  IncoherentPart,
};

/// Sparse linear map on column-stacked density operators:
/// vec(rho)[col * dim + row] = rho(row, col).
struct Superoperator {
  SparseMatrix op;
  SuperoperatorTag tag = SuperoperatorTag::Full;
  int dim = 0;  ///< Hilbert dimension; op is dim^2 x dim^2

  Matrix apply(const Matrix& rho) const;
};

/// vec(A rho B) = (B^T (x) A) vec(rho) for column stacking.
SparseMatrix super_sandwich(const Matrix& a, const Matrix& b);
/// Liouville form of -i (H rho - rho H^dag) for possibly non-Hermitian H.
SparseMatrix hamiltonian_liouvillian(const Matrix& h);

Matrix unvectorize(const Vector& v, int dim);
Vector vectorize(const Matrix& rho);

/// Single-transition raising operator S_j^+ of atom `atom`, embedded in
/// the n-atom product space.
Matrix raising_operator(const EnsembleSpec& spec, int atom, int j);

/// Generator pieces keyed by the physical parameter they carry:
/// "A1".."A4" (damping + reset of transition j), "C1h".."C4h" and
/// "C1r".."C4r" (coherent and reset cross terms), "drive" (Rabi plus
/// detuning), "W" (incoherent 1<->4 dissipator, four-level only).
struct GeneratorTerms {
  std::map<std::string, SparseMatrix> terms;
  int dim = 0;

  SparseMatrix sum(const std::vector<std::string>& keys) const;
  SparseMatrix total() const;
};

GeneratorTerms build_generator_terms(const EnsembleSpec& spec,
                                     const CouplingSet& couplings);

/// Conditional Hamiltonian of the no-emission evolution (hbar = 1):
/// damping -(i/2) sum A_j S^+S^-, Rabi drive, cross-damping
/// (1/2i) C_kl^(j) (S_k^+ S_l^- + S_l^+ S_k^-), and optionally the
/// detuning term -Delta_3 sum_i S_i3^+ S_i3^-.
Matrix build_hcond(const EnsembleSpec& spec, const CouplingSet& couplings,
                   bool include_detuning = true);

/// Reset map: sum_j A_j S^- rho S^+ plus Re C_kl^(j) cross sandwiches.
Superoperator build_reset(const EnsembleSpec& spec, const CouplingSet& couplings);

/// Incoherent driving of the 1<->4 transition at rate W, as a full
/// dissipator so that the assembled generator is trace preserving.
/// Throws ConfigError for D-type schemes.
Superoperator build_incoherent(const EnsembleSpec& spec);

/// Complete Bloch-equation generator.
Superoperator build_full_generator(const EnsembleSpec& spec,
                                   const CouplingSet& couplings);

/// Split into L0 (strong terms: A_3, Omega_3, Delta_3, C^(3); plus A_4,
/// C^(4) for the four-level scheme) and L1 (weak terms: A_1, A_2 and
/// their cross terms; plus W for the four-level scheme).
std::pair<Superoperator, Superoperator> split_generator(
    const EnsembleSpec& spec, const CouplingSet& couplings);

/// Split used for rate extraction: the weak generator keeps only the
/// terms that change the number of shelved atoms at leading order
/// (A_1 + C^(1) for D systems together with A_2 + C^(2); A_1 + C^(1) + W
/// for the four-level scheme, whose A_2 rides on top of the strong
/// |4> relaxation). The strong generator is the complement.
std::pair<Superoperator, Superoperator> split_strong_weak(
    const EnsembleSpec& spec, const CouplingSet& couplings);

/// Restriction of `op` to the density-operator block over the given
/// Hilbert-space indices. Throws InvariantViolation when the block is
/// not invariant (out-of-block column entries above 1e-14 * max|op|).
Superoperator restrict_to_subspace(const Superoperator& op,
                                   const std::vector<int>& subspace);

/// Vectorized-density indices (col * dim + row) of the block over the
/// given Hilbert indices, in the column-major order used throughout.
std::vector<int> liouville_block_indices(const std::vector<int>& subspace, int dim);

/// Debug dump: one "row col re im" line per stored entry.
void dump_superoperator(const Superoperator& op, std::ostream& out);

}  // namespace jumpstat
