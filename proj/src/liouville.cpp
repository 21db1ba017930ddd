#include "jumpstat/liouville.hpp"

#include <cmath>
#include <ostream>
#include <unordered_set>

namespace jumpstat {

Matrix Superoperator::apply(const Matrix& rho) const {
  return unvectorize(op * vectorize(rho), dim);
}

Vector vectorize(const Matrix& rho) {
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix unvectorize(const Vector& v, int dim) {
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

SparseMatrix super_sandwich(const Matrix& a, const Matrix& b) {
  // vec(A rho B) = (B^T (x) A) vec(rho), column stacking.
  const int d = static_cast<int>(a.rows());
  std::vector<Triplet> trips;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Complex bij = b(j, i);  // (B^T)(i, j)
      if (bij == Complex(0.0, 0.0)) continue;
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          const Complex akl = a(k, l);
          if (akl == Complex(0.0, 0.0)) continue;
          trips.emplace_back(i * d + k, j * d + l, bij * akl);
        }
      }
    }
  }
  SparseMatrix out(d * d, d * d);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseMatrix hamiltonian_liouvillian(const Matrix& h) {
  const int d = static_cast<int>(h.rows());
  const Matrix eye = Matrix::Identity(d, d);
  const Complex i(0.0, 1.0);
  SparseMatrix out = super_sandwich(h, eye) - super_sandwich(eye, h.adjoint());
  return (-i * out).eval();
}

Matrix raising_operator(const EnsembleSpec& spec, int atom, int j) {
  const int d = spec.scheme.n_levels();
  Matrix single = Matrix::Zero(d, d);
  for (const auto& t : spec.scheme.transitions()) {
    if (t.j == j) single(t.upper, t.lower) = Complex(1.0, 0.0);
  }
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < spec.n_atoms; ++i) {
    const Matrix& factor = (i == atom) ? single : Matrix::Identity(d, d).eval();
    Matrix next = Matrix::Zero(out.rows() * d, out.cols() * d);
    for (int r = 0; r < out.rows(); ++r)
      for (int c = 0; c < out.cols(); ++c)
        next.block(r * d, c * d, d, d) = out(r, c) * factor;
    out = std::move(next);
  }
  return out;
}

SparseMatrix GeneratorTerms::sum(const std::vector<std::string>& keys) const {
  SparseMatrix out(dim * dim, dim * dim);
  for (const auto& key : keys) {
    const auto it = terms.find(key);
    if (it != terms.end()) out = (out + it->second).eval();
  }
  return out;
}

SparseMatrix GeneratorTerms::total() const {
  SparseMatrix out(dim * dim, dim * dim);
  for (const auto& [key, term] : terms) out = (out + term).eval();
  return out;
}

GeneratorTerms build_generator_terms(const EnsembleSpec& spec,
                                     const CouplingSet& couplings) {
  spec.validate();
  const int n = spec.n_atoms;
  const int d = spec.dim();
  const Matrix eye = Matrix::Identity(d, d);
  const Complex half_im(0.0, -0.5);  // 1/(2i)

  GeneratorTerms gen;
  gen.dim = d;

  std::map<std::pair<int, int>, Matrix> sp;  // (atom, j) -> S_j^+
  for (const auto& t : spec.scheme.transitions())
    for (int i = 0; i < n; ++i) sp[{i, t.j}] = raising_operator(spec, i, t.j);

  for (const auto& t : spec.scheme.transitions()) {
    const std::string key = "A" + std::to_string(t.j);
    // Damping part of H_cond plus the reset sandwich, so that the "Aj"
    // term alone is the trace-preserving dissipator of transition j.
    Matrix h = Matrix::Zero(d, d);
    SparseMatrix reset(d * d, d * d);
    for (int i = 0; i < n; ++i) {
      const Matrix& p = sp.at({i, t.j});
      const Matrix m = p.adjoint();
      h += half_im * t.rate * (p * m);
      reset = (reset + t.rate * super_sandwich(m, p)).eval();
    }
    gen.terms[key] = (hamiltonian_liouvillian(h) + reset).eval();

    // Dipole-dipole cross terms of the same transition.
    Matrix hc = Matrix::Zero(d, d);
    SparseMatrix rc(d * d, d * d);
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        const Complex c = couplings.get(k, l, t.j);
        if (c == Complex(0.0, 0.0)) continue;
        const Matrix& pk = sp.at({k, t.j});
        const Matrix& pl = sp.at({l, t.j});
        hc += half_im * c * (pk * pl.adjoint() + pl * pk.adjoint());
        rc = (rc + c.real() * (super_sandwich(pk.adjoint(), pl) +
                               super_sandwich(pl.adjoint(), pk)))
                 .eval();
      }
    }
    gen.terms["C" + std::to_string(t.j) + "h"] = hamiltonian_liouvillian(hc);
    gen.terms["C" + std::to_string(t.j) + "r"] = rc;
  }

  // Rabi drive on the 1-3 transition plus the detuning shift.
  Matrix hd = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    const Matrix& p = sp.at({i, 3});
    hd += 0.5 * spec.scheme.rabi * (p + p.adjoint());
    hd -= spec.scheme.detuning * (p * p.adjoint());
  }
  gen.terms["drive"] = hamiltonian_liouvillian(hd);

  if (spec.scheme.kind == SchemeKind::FourLevel) {
    // Incoherent 1<->4 driving: full dissipators for sqrt(W) S_4^+ and
    // sqrt(W) S_4^-, which keeps the assembled generator trace preserving.
    const double w = spec.scheme.incoherent_w;
    SparseMatrix mw(d * d, d * d);
    for (int i = 0; i < n; ++i) {
      const Matrix& p = sp.at({i, 4});
      for (const Matrix& lop : {p, Matrix(p.adjoint())}) {
        const Matrix ll = lop.adjoint() * lop;
        mw = (mw + w * (super_sandwich(lop, lop.adjoint()) -
                        0.5 * super_sandwich(ll, eye) -
                        0.5 * super_sandwich(eye, ll)))
                 .eval();
      }
    }
    gen.terms["W"] = mw;
  }
  return gen;
}

namespace {

std::vector<std::string> coupling_keys(int j) {
  return {"C" + std::to_string(j) + "h", "C" + std::to_string(j) + "r"};
}

std::vector<std::string> with_couplings(std::vector<std::string> keys,
                                        std::initializer_list<int> js) {
  for (int j : js)
    for (auto& k : coupling_keys(j)) keys.push_back(k);
  return keys;
}

}  // namespace

Matrix build_hcond(const EnsembleSpec& spec, const CouplingSet& couplings,
                   bool include_detuning) {
  spec.validate();
  const int n = spec.n_atoms;
  const int d = spec.dim();
  const Complex half_im(0.0, -0.5);
  Matrix h = Matrix::Zero(d, d);
  for (const auto& t : spec.scheme.transitions()) {
    for (int i = 0; i < n; ++i) {
      const Matrix p = raising_operator(spec, i, t.j);
      h += half_im * t.rate * (p * p.adjoint());
    }
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        const Complex c = couplings.get(k, l, t.j);
        if (c == Complex(0.0, 0.0)) continue;
        const Matrix pk = raising_operator(spec, k, t.j);
        const Matrix pl = raising_operator(spec, l, t.j);
        h += half_im * c * (pk * pl.adjoint() + pl * pk.adjoint());
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const Matrix p = raising_operator(spec, i, 3);
    h += 0.5 * spec.scheme.rabi * (p + p.adjoint());
    if (include_detuning) h -= spec.scheme.detuning * (p * p.adjoint());
  }
  return h;
}

Superoperator build_reset(const EnsembleSpec& spec, const CouplingSet& couplings) {
  spec.validate();
  const int n = spec.n_atoms;
  const int d = spec.dim();
  SparseMatrix out(d * d, d * d);
  for (const auto& t : spec.scheme.transitions()) {
    for (int i = 0; i < n; ++i) {
      const Matrix p = raising_operator(spec, i, t.j);
      out = (out + t.rate * super_sandwich(p.adjoint(), p)).eval();
    }
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        const Complex c = couplings.get(k, l, t.j);
        if (c == Complex(0.0, 0.0)) continue;
        const Matrix pk = raising_operator(spec, k, t.j);
        const Matrix pl = raising_operator(spec, l, t.j);
        out = (out + c.real() * (super_sandwich(pk.adjoint(), pl) +
                                 super_sandwich(pl.adjoint(), pk)))
                  .eval();
      }
    }
  }
  return {out, SuperoperatorTag::ResetPart, d};
}

Superoperator build_incoherent(const EnsembleSpec& spec) {
  spec.validate();
  if (spec.scheme.kind != SchemeKind::FourLevel)
    throw ConfigError("incoherent driving requires the four-level scheme");
  CouplingSet none;
  const auto gen = build_generator_terms(spec, none);
  return {gen.terms.at("W"), SuperoperatorTag::IncoherentPart, gen.dim};
}

Superoperator build_full_generator(const EnsembleSpec& spec,
                                   const CouplingSet& couplings) {
  const auto gen = build_generator_terms(spec, couplings);
  return {gen.total(), SuperoperatorTag::Full, gen.dim};
}

std::pair<Superoperator, Superoperator> split_generator(
    const EnsembleSpec& spec, const CouplingSet& couplings) {
  const auto gen = build_generator_terms(spec, couplings);
  std::vector<std::string> l0_keys = with_couplings({"A3", "drive"}, {3});
  std::vector<std::string> l1_keys = with_couplings({"A1", "A2"}, {1, 2});
  if (spec.scheme.kind == SchemeKind::FourLevel) {
    for (const auto& k : with_couplings({"A4"}, {4})) l0_keys.push_back(k);
    l1_keys.push_back("W");
  }
  return {{gen.sum(l0_keys), SuperoperatorTag::L0, gen.dim},
          {gen.sum(l1_keys), SuperoperatorTag::L1, gen.dim}};
}

std::pair<Superoperator, Superoperator> split_strong_weak(
    const EnsembleSpec& spec, const CouplingSet& couplings) {
  const auto gen = build_generator_terms(spec, couplings);
  std::vector<std::string> weak_keys;
  if (spec.scheme.kind == SchemeKind::DThreeLevel) {
    weak_keys = with_couplings({"A1", "A2"}, {1, 2});
  } else {
    // A2 stays on the strong side: the |4> relaxation (A2 + A4) is fast
    // and only distributes the slow W excitation between the dark and
    // bright manifolds.
    weak_keys = with_couplings({"A1", "W"}, {1});
  }
  SparseMatrix weak = gen.sum(weak_keys);
  SparseMatrix strong = (gen.total() - weak).eval();
  return {{strong, SuperoperatorTag::L0, gen.dim},
          {weak, SuperoperatorTag::L1, gen.dim}};
}

std::vector<int> liouville_block_indices(const std::vector<int>& subspace, int dim) {
  std::vector<int> out;
  out.reserve(subspace.size() * subspace.size());
  for (int c : subspace)
    for (int r : subspace) out.push_back(c * dim + r);
  return out;
}

Superoperator restrict_to_subspace(const Superoperator& op,
                                   const std::vector<int>& subspace) {
  const int d = op.dim;
  const auto vidx = liouville_block_indices(subspace, d);
  std::vector<int> pos(static_cast<size_t>(d) * d, -1);
  for (size_t i = 0; i < vidx.size(); ++i) pos[vidx[i]] = static_cast<int>(i);

  double scale = 0.0;
  for (int c = 0; c < op.op.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(op.op, c); it; ++it)
      scale = std::max(scale, std::abs(it.value()));

  std::vector<Triplet> trips;
  double leak = 0.0;
  for (int col : vidx) {
    for (SparseMatrix::InnerIterator it(op.op, col); it; ++it) {
      if (pos[it.row()] >= 0) {
        trips.emplace_back(pos[it.row()], pos[col], it.value());
      } else {
        leak = std::max(leak, std::abs(it.value()));
      }
    }
  }
  if (leak > 1e-14 * std::max(scale, 1.0))
    throw InvariantViolation("subspace is not invariant under the generator");

  const int m = static_cast<int>(vidx.size());
  SparseMatrix blk(m, m);
  blk.setFromTriplets(trips.begin(), trips.end());
  return {blk, op.tag, static_cast<int>(subspace.size())};
}

void dump_superoperator(const Superoperator& op, std::ostream& out) {
  for (int c = 0; c < op.op.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(op.op, c); it; ++it)
      out << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' '
          << it.value().imag() << '\n';
}

}  // namespace jumpstat
