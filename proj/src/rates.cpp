#include "jumpstat/rates.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

namespace jumpstat {

namespace {

double max_abs_coeff(const SparseMatrix& m) {
  double out = 0.0;
  for (int c = 0; c < m.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(m, c); it; ++it)
      out = std::max(out, std::abs(it.value()));
  return out;
}

/// All configurations of shelved atoms, ordered by bright count.
struct DarkSubset {
  int bright = 0;
  std::vector<int> dark_atoms;
};

std::vector<DarkSubset> dark_subsets(int n_atoms) {
  std::vector<DarkSubset> out;
  for (int k = 0; k <= n_atoms; ++k) {
    const int n_dark = n_atoms - k;
    std::vector<int> mask(n_atoms, 0);
    std::fill(mask.begin(), mask.begin() + n_dark, 1);
    std::sort(mask.begin(), mask.end());
    // enumerate combinations via permutations of the selection mask
    std::vector<std::vector<int>> combos;
    do {
      std::vector<int> dark;
      for (int i = 0; i < n_atoms; ++i)
        if (mask[i]) dark.push_back(i);
      combos.push_back(dark);
    } while (std::next_permutation(mask.begin(), mask.end()));
    std::sort(combos.begin(), combos.end());
    for (auto& c : combos) out.push_back({k, std::move(c)});
  }
  return out;
}

/// Product states with the dark atoms shelved and the rest confined to
/// the laser-driven {|1>, |3>} manifold; the strong dynamics leaves this
/// block invariant and its kernel carries the quasi-steady component.
std::vector<int> core_indices(const EnsembleSpec& spec,
                              const std::vector<int>& dark_atoms) {
  const int n = spec.n_atoms;
  const int d = spec.scheme.n_levels();
  std::set<int> dark(dark_atoms.begin(), dark_atoms.end());
  std::vector<int> out;
  std::vector<int> digits(n, 0);
  while (true) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (dark.count(i))
        ok = digits[i] == LevelScheme::kDarkLevel;
      else
        ok = digits[i] == 0 || digits[i] == 2;
    }
    if (ok) {
      int idx = 0;
      for (int s : digits) idx = idx * d + s;
      out.push_back(idx);
    }
    int pos = n - 1;
    while (pos >= 0 && ++digits[pos] == d) digits[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

Matrix dense_block(const SparseMatrix& m, const std::vector<int>& vidx,
                   const std::vector<int>& pos) {
  const int sz = static_cast<int>(vidx.size());
  Matrix out = Matrix::Zero(sz, sz);
  for (int jj = 0; jj < sz; ++jj)
    for (SparseMatrix::InnerIterator it(m, vidx[jj]); it; ++it)
      if (pos[it.row()] >= 0) out(pos[it.row()], jj) = it.value();
  return out;
}

Matrix kernel_density(const SparseMatrix& strong, const std::vector<int>& idxs,
                      int dim) {
  const int m = static_cast<int>(idxs.size());
  const auto vidx = liouville_block_indices(idxs, dim);
  std::vector<int> pos(static_cast<size_t>(dim) * dim, -1);
  for (size_t i = 0; i < vidx.size(); ++i) pos[vidx[i]] = static_cast<int>(i);
  const Matrix blk = dense_block(strong, vidx, pos);

  Eigen::JacobiSVD<Matrix> svd(blk, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = 1e-10 * (sv.size() ? sv(0) : 0.0);
  int nulls = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= tol) ++nulls;
  if (nulls != 1)
    throw AmbiguityError("core block has null-space multiplicity " +
                         std::to_string(nulls) + " (expected 1)");
  const Vector v = svd.matrixV().col(m * m - 1);

  Matrix rho = Matrix::Zero(dim, dim);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) rho(idxs[b], idxs[a]) = v(a * m + b);
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12)
    throw AmbiguityError("traceless null vector in core block");
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return rho;
}

RateMatrix assemble_rate_matrix(const Eigen::MatrixXd& alpha) {
  const int n_levels = static_cast<int>(alpha.rows());
  RateMatrix out;
  out.n_levels = n_levels;
  out.up = RealVector::Zero(n_levels - 1);
  out.down = RealVector::Zero(n_levels - 1);
  for (int i = 0; i < n_levels; ++i) {
    for (int j = 0; j < n_levels; ++j) {
      if (std::abs(i - j) != 1) {
        if (i != j)
          out.max_off_birth_death =
              std::max(out.max_off_birth_death, std::abs(alpha(i, j)));
        continue;
      }
      double v = alpha(i, j);
      if (v < 0.0) {
        if (v < -1e-10)
          throw ModelError("negative transition rate " + std::to_string(v));
        v = 0.0;  // clamp numerical noise
      }
      if (j == i + 1)
        out.up(i) = v;
      else
        out.down(j) = v;
    }
  }
  return out;
}

}  // namespace

double RateMatrix::rate(int i, int j) const {
  if (j == i + 1 && i >= 0 && i < n_levels - 1) return up(i);
  if (j == i - 1 && j >= 0 && j < n_levels - 1) return down(j);
  return 0.0;
}

QuasiSteadyStates quasi_steady_states(const EnsembleSpec& spec,
                                      const SparseMatrix& strong_generator) {
  spec.validate();
  if (spec.scheme.rabi <= 0.0)
    throw ConfigError("quasi-steady analysis requires a positive Rabi frequency");
  const int d = spec.dim();
  const int d2 = d * d;
  if (strong_generator.rows() != d2)
    throw ConfigError("generator dimension does not match the ensemble");
  const double scale = max_abs_coeff(strong_generator);

  QuasiSteadyStates out;
  const auto subsets = dark_subsets(spec.n_atoms);
  for (const auto& sub : subsets) {
    SubsetComponent comp;
    comp.dark_atoms = sub.dark_atoms;
    comp.bright_count = sub.bright;
    comp.rho = kernel_density(strong_generator, core_indices(spec, sub.dark_atoms), d);
    out.components.push_back(std::move(comp));
  }

  // Left null space of the strong generator by shifted inverse iteration;
  // the global duals pick up the |4> branching weights automatically.
  const int k = static_cast<int>(subsets.size());
  SparseMatrix adj = strong_generator.adjoint();
  SparseMatrix ident(d2, d2);
  ident.setIdentity();
  const double shift = 1e-6 * std::max(scale, 1.0);
  SparseMatrix shifted = (adj + shift * ident).eval();
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success)
    throw AmbiguityError("factorization of the shifted generator failed");

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix x(d2, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < d2; ++r) x(r, c) = Complex(normal(rng), normal(rng));

  const double res_tol = 1e-12 * std::max(scale, 1.0);
  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 60 && residual > res_tol; ++iter) {
    x = lu.solve(x);
    Eigen::HouseholderQR<Matrix> qr(x);
    x = qr.householderQ() * Matrix::Identity(d2, k);
    residual = (adj * x).colwise().norm().maxCoeff();
  }
  if (residual > res_tol)
    throw AmbiguityError("left null space of the strong generator did not converge");

  Matrix vmat(d2, k);
  for (int c = 0; c < k; ++c) vmat.col(c) = vectorize(out.components[c].rho);
  const Matrix gram = x.adjoint() * vmat;
  Eigen::FullPivLU<Matrix> gram_lu(gram);
  if (!gram_lu.isInvertible())
    throw AmbiguityError("dual eigenstates are not uniquely determined");
  const Matrix duals = x * gram_lu.inverse().adjoint();

  for (int kk = 0; kk <= spec.n_atoms; ++kk) {
    QuasiSteadyState cls;
    cls.k = kk;
    cls.label = "S" + std::to_string(kk);
    Matrix rho = Matrix::Zero(d, d);
    Vector dual = Vector::Zero(d2);
    int count = 0;
    for (int c = 0; c < k; ++c) {
      if (out.components[c].bright_count != kk) continue;
      rho += out.components[c].rho;
      dual += duals.col(c);
      ++count;
    }
    cls.rho_ss = rho / static_cast<double>(count);
    cls.dual = unvectorize(dual, d);
    out.classes.push_back(std::move(cls));
  }

  // Structural guarantees: stationarity and biorthogonality.
  const double qtol = 1e-10 * std::max(scale, 1.0);
  for (const auto& cls : out.classes) {
    if ((strong_generator * vectorize(cls.rho_ss)).norm() > qtol)
      throw AmbiguityError("quasi-steady state is not stationary");
  }
  for (const auto& ci : out.classes) {
    for (const auto& cj : out.classes) {
      const Complex o = vectorize(cj.dual).dot(vectorize(ci.rho_ss));
      const double expect = ci.k == cj.k ? 1.0 : 0.0;
      if (std::abs(o - expect) > 1e-9)
        throw AmbiguityError("biorthogonality of dual eigenstates violated");
    }
  }
  return out;
}

RateMatrix rates_by_projection(const SparseMatrix& weak_generator,
                               const QuasiSteadyStates& qss) {
  const int n_levels = static_cast<int>(qss.classes.size());
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(n_levels, n_levels);
  for (int i = 0; i < n_levels; ++i) {
    const Vector y = weak_generator * vectorize(qss.classes[i].rho_ss);
    for (int j = 0; j < n_levels; ++j) {
      if (i == j) continue;
      alpha(i, j) = vectorize(qss.classes[j].dual).dot(y).real();
    }
  }
  return assemble_rate_matrix(alpha);
}

namespace {

Matrix embed_single(const EnsembleSpec& spec, int atom, const Matrix& single) {
  const int d = spec.scheme.n_levels();
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

/// Gain part of the weak dynamics: the sandwiches that move population
/// between adjacent intensity periods. For D systems these are the A_1
/// and A_2 decays with their Re C cross terms; for the four-level scheme
/// the A_1 decay plus the effective shelving 1 -> (4) -> 2 at rate
/// W A_2/(A_2+A_4).
SparseMatrix weak_gain(const EnsembleSpec& spec, const CouplingSet& couplings) {
  const int n = spec.n_atoms;
  const int d = spec.dim();
  SparseMatrix out(d * d, d * d);
  const std::vector<int> js =
      spec.scheme.kind == SchemeKind::DThreeLevel ? std::vector<int>{1, 2}
                                                  : std::vector<int>{1};
  for (int j : js) {
    const double aj = spec.scheme.einstein_a(j);
    std::vector<Matrix> sp;
    for (int i = 0; i < n; ++i) sp.push_back(raising_operator(spec, i, j));
    for (int i = 0; i < n; ++i)
      out = (out + aj * super_sandwich(sp[i].adjoint(), sp[i])).eval();
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l) {
        const double re_c = couplings.get(k, l, j).real();
        if (re_c == 0.0) continue;
        out = (out + re_c * (super_sandwich(sp[k].adjoint(), sp[l]) +
                             super_sandwich(sp[l].adjoint(), sp[k])))
                  .eval();
      }
  }
  if (spec.scheme.kind == SchemeKind::FourLevel) {
    const double weff = spec.scheme.effective_shelving_rate();
    const int dl = spec.scheme.n_levels();
    Matrix shelve = Matrix::Zero(dl, dl);
    shelve(LevelScheme::kDarkLevel, 0) = Complex(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
      const Matrix t = embed_single(spec, i, shelve);
      out = (out + weff * super_sandwich(t, t.adjoint())).eval();
    }
  }
  return out;
}

struct SymState {
  std::string label;
  Vector vec;
};

std::string level_digit(int lvl) { return std::to_string(lvl + 1); }

/// Orthonormal states of one dark-subset component: the bright cluster is
/// permutation-symmetrized over {|1>, |3>} while the shelved atoms stay
/// pinned, mirroring the paper's Dicke-style bookkeeping per component.
std::vector<SymState> cluster_sym_states(const EnsembleSpec& spec,
                                         const std::vector<int>& dark_atoms) {
  const int n = spec.n_atoms;
  const int d = spec.scheme.n_levels();
  const int dim = spec.dim();
  std::vector<int> bright;
  {
    std::set<int> dark(dark_atoms.begin(), dark_atoms.end());
    for (int i = 0; i < n; ++i)
      if (!dark.count(i)) bright.push_back(i);
  }
  const int nb = static_cast<int>(bright.size());

  std::string dark_suffix;
  if (!dark_atoms.empty()) {
    dark_suffix = ";dark=";
    for (int a : dark_atoms) dark_suffix += std::to_string(a);
  }

  auto product_vec = [&](const std::vector<int>& levels_for_bright) {
    std::vector<int> digits(n, LevelScheme::kDarkLevel);
    for (int b = 0; b < nb; ++b) digits[bright[b]] = levels_for_bright[b];
    int idx = 0;
    for (int s : digits) idx = idx * d + s;
    Vector v = Vector::Zero(dim);
    v(idx) = Complex(1.0, 0.0);
    return v;
  };

  std::vector<SymState> out;
  std::set<std::vector<int>> seen;
  std::vector<int> combo(nb, 0);
  const std::vector<int> bright_levels = {0, 2};
  const int n_combos = 1 << nb;
  for (int mask = 0; mask < n_combos; ++mask) {
    std::vector<int> levels(nb);
    for (int b = 0; b < nb; ++b) levels[b] = bright_levels[(mask >> b) & 1];
    std::vector<int> orbit = levels;
    std::sort(orbit.begin(), orbit.end());
    if (!seen.insert(orbit).second) continue;

    std::vector<std::vector<int>> perms;
    std::vector<int> p = orbit;
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    std::string level_str;
    for (int lvl : orbit) level_str += level_digit(lvl);

    std::vector<Vector> vecs;
    for (const auto& pm : perms) vecs.push_back(product_vec(pm));
    Vector sym = Vector::Zero(dim);
    for (const auto& v : vecs) sym += v;
    sym /= std::sqrt(static_cast<double>(perms.size()));

    std::vector<Vector> q = {sym};
    for (const auto& v : vecs) {
      Vector w = v;
      for (const auto& qq : q) w -= qq.dot(v) * qq;
      const double nw = w.norm();
      if (nw > 1e-9) q.push_back(w / nw);
    }
    for (size_t m = 0; m < q.size(); ++m) {
      std::string prefix;
      if (m == 0)
        prefix = "s";
      else if (q.size() == 2 && m == 1)
        prefix = "a";
      else
        prefix = "q" + std::to_string(m);
      out.push_back({prefix + "{" + level_str + dark_suffix + "}", q[m]});
    }
  }
  return out;
}

}  // namespace

std::vector<DecayChannel> channels_for(const EnsembleSpec& spec,
                                       const CouplingSet& couplings) {
  spec.validate();
  const int n = spec.n_atoms;
  const int d = spec.dim();
  const SparseMatrix gain = weak_gain(spec, couplings);
  const double rate_tol = 1e-14 * std::max(1.0, spec.scheme.einstein_a(3));

  const auto subsets = dark_subsets(n);
  std::vector<std::vector<SymState>> states;
  states.reserve(subsets.size());
  for (const auto& sub : subsets)
    states.push_back(cluster_sym_states(spec, sub.dark_atoms));

  std::vector<DecayChannel> out;
  for (size_t si = 0; si < subsets.size(); ++si) {
    const int i = subsets[si].bright;
    for (const auto& u : states[si]) {
      const Matrix uu = u.vec * u.vec.adjoint();
      const Matrix flow = unvectorize(gain * vectorize(uu), d);
      for (size_t sj = 0; sj < subsets.size(); ++sj) {
        const int j = subsets[sj].bright;
        if (std::abs(i - j) != 1) continue;
        for (const auto& v : states[sj]) {
          const double rate = v.vec.dot(flow * v.vec).real();
          if (rate <= rate_tol) continue;
          DecayChannel ch;
          ch.from_state = u.label;
          ch.to_state = v.label;
          ch.from_class = i;
          ch.to_class = j;
          ch.rate = rate;
          ch.from_vec = u.vec;
          out.push_back(std::move(ch));
        }
      }
    }
  }
  return out;
}

RateMatrix rates_by_simplified_scheme(const std::vector<DecayChannel>& channels,
                                      const QuasiSteadyStates& qss) {
  const int n_levels = static_cast<int>(qss.classes.size());
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(n_levels, n_levels);
  for (const auto& ch : channels) {
    if (ch.from_class < 0 || ch.from_class >= n_levels || ch.to_class < 0 ||
        ch.to_class >= n_levels)
      throw ConfigError("decay channel references an unknown intensity period");
    const Matrix& rho = qss.classes[ch.from_class].rho_ss;
    if (ch.from_vec.size() != rho.rows())
      throw ConfigError("decay channel state does not match the ensemble");
    const double pop = ch.from_vec.dot(rho * ch.from_vec).real();
    alpha(ch.from_class, ch.to_class) += ch.rate * pop;
  }
  return assemble_rate_matrix(alpha);
}

ClosedFormRates closed_form_rates(const EnsembleSpec& spec, Complex c3,
                                  double delta3) {
  spec.validate();
  if (spec.scheme.kind != SchemeKind::FourLevel)
    throw ConfigError("closed-form rates cover the four-level scheme only");
  if (!spec.geometry.is_equilateral())
    throw ConfigError("closed-form rates require the equilateral preset");
  const int n = spec.n_atoms;
  const double a1 = spec.scheme.einstein_a(1);
  const double a3 = spec.scheme.einstein_a(3);
  const double om = spec.scheme.rabi;
  const double weff = spec.scheme.effective_shelving_rate();

  const double q = a3 * a3 + 2.0 * om * om + 4.0 * delta3 * delta3;
  const double s = a3 * a3 + om * om + 4.0 * delta3 * delta3;
  const double x = a3 * a3 + 4.0 * delta3 * delta3;
  const double b = std::norm(c3) + 2.0 * a3 * c3.real() - 4.0 * delta3 * c3.imag();
  const double z2 = std::norm(Complex(a3, -2.0 * delta3) + c3);

  std::vector<double> down_exact(n);
  down_exact[0] = weff * s / q;
  if (n >= 2) down_exact[1] = 2.0 * weff * (s * q + x * b) / (q * q + x * b);
  if (n >= 3) {
    const double num = s * (q * q + 3.0 * x * b) +
                       2.0 * x * (std::norm(c3) * z2 + b * (om * om + b));
    const double den = q * (q * q + 3.0 * x * b) +
                       2.0 * x * (std::norm(c3) * z2 + b * b);
    down_exact[2] = 3.0 * weff * num / den;
  }

  // Linearization in C_3 including the detuning terms.
  const double q3 = q * q * q;
  std::vector<double> down_first(n);
  down_first[0] = weff * s / q;
  if (n >= 2)
    down_first[1] =
        2.0 * weff * (s / q + 2.0 * c3.real() * a3 * om * om * x / q3 -
                      4.0 * c3.imag() * delta3 * om * om * x / q3);
  if (n >= 3)
    down_first[2] =
        3.0 * weff * (s / q + 4.0 * c3.real() * a3 * om * om * x / q3 -
                      8.0 * c3.imag() * delta3 * om * om * x / q3);

  ClosedFormRates out;
  for (RateMatrix* rm : {&out.exact, &out.first_order}) {
    rm->n_levels = n + 1;
    rm->up = RealVector::Zero(n);
    rm->down = RealVector::Zero(n);
    for (int k = 0; k < n; ++k) rm->up(k) = (n - k) * a1;
  }
  for (int k = 0; k < n; ++k) {
    out.exact.down(k) = down_exact[k];
    out.first_order.down(k) = down_first[k];
  }
  return out;
}

std::map<std::string, double> rho_ss3_populations(double a3, double omega3,
                                                  Complex c3) {
  const double o2 = omega3 * omega3;
  const double a2 = a3 * a3;
  const double b = std::norm(c3) + 2.0 * a3 * c3.real();
  const double cross = std::norm(c3) * std::norm(Complex(a3, 0.0) + c3);
  const double q = a2 + 2.0 * o2;
  const double s = a2 + o2;
  // Denominator uses 2 A_3^2 (not the dimensionally inconsistent 2 A_3);
  // verified against the numeric null space of the fully bright block.
  const double n = q * (q * q + 3.0 * a2 * b) + 2.0 * a2 * (cross + b * b);
  std::map<std::string, double> out;
  out["g"] = (s * (s * s + 3.0 * a2 * b) + 2.0 * a2 * (cross + b * b)) / n;
  out["s113"] = o2 * (s * (3.0 * a2 + o2) + 3.0 * a2 * b) / n;
  out["b113"] = o2 * o2 * s / n;
  out["c113"] = o2 * o2 * s / n;
  out["s133"] = o2 * o2 * (3.0 * a2 + o2) / n;
  out["b133"] = o2 * o2 * o2 / n;
  out["c133"] = o2 * o2 * o2 / n;
  out["e3"] = o2 * o2 * o2 / n;
  return out;
}

PerturbativeResult perturbative_evolution(const EnsembleSpec& spec,
                                          const CouplingSet& couplings,
                                          const Matrix& rho0, double dt,
                                          double window_strong_min,
                                          double window_weak_max) {
  spec.validate();
  const int d = spec.dim();
  if (d * d > 2048)
    throw ConfigError("perturbative evolution supports Hilbert dimension <= 45");
  if (rho0.rows() != d || rho0.cols() != d)
    throw ConfigError("initial state dimension does not match the ensemble");

  const auto [strong, weak] = split_strong_weak(spec, couplings);
  const auto qss = quasi_steady_states(spec, strong.op);
  const int n_levels = static_cast<int>(qss.classes.size());

  // Identify the intensity period carrying rho0.
  int start = 0;
  double best = -1.0;
  for (int j = 0; j < n_levels; ++j) {
    const double o =
        vectorize(qss.classes[j].dual).dot(vectorize(rho0)).real();
    if (o > best) {
      best = o;
      start = j;
    }
  }

  // Full alpha including the diagonal so that trace is conserved to
  // first order.
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(n_levels, n_levels);
  const Vector y = weak.op * vectorize(qss.classes[start].rho_ss);
  for (int j = 0; j < n_levels; ++j)
    alpha(start, j) = vectorize(qss.classes[j].dual).dot(y).real();

  Matrix rho = qss.classes[start].rho_ss;
  for (int j = 0; j < n_levels; ++j)
    rho += dt * alpha(start, j) * qss.classes[j].rho_ss;

  // Residual: pseudo-inverse of the strong generator applied to the
  // part of L1 rho_ss,i outside the slow manifold.
  Vector tilde = y;
  for (int j = 0; j < n_levels; ++j)
    tilde -= alpha(start, j) * vectorize(qss.classes[j].rho_ss);
  const Matrix strong_dense = Matrix(strong.op);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(-strong_dense);
  cod.setThreshold(1e-10);
  const Vector resid = cod.solve(tilde);

  PerturbativeResult out;
  out.rho = rho + unvectorize(resid, d);
  out.residual_norm = resid.norm();

  const double strong_scale = spec.scheme.einstein_a(3);
  double weak_scale = spec.scheme.einstein_a(1);
  if (spec.scheme.kind == SchemeKind::DThreeLevel)
    weak_scale = std::max(weak_scale, spec.scheme.einstein_a(2));
  else
    weak_scale = std::max(weak_scale, spec.scheme.effective_shelving_rate());
  if (dt * strong_scale < window_strong_min || dt * weak_scale > window_weak_max) {
    out.window_ok = false;
    out.warning =
        "dt outside the coarse-graining window (needs many photons per "
        "step yet negligible slow drift)";
  }
  return out;
}

void export_rate_table(const RateMatrix& rates, const std::string& method,
                       std::ostream& out) {
  for (int i = 0; i + 1 < rates.n_levels; ++i)
    out << i << ' ' << i + 1 << ' ' << rates.up(i) << ' ' << method << '\n';
  for (int i = 0; i + 1 < rates.n_levels; ++i)
    out << i + 1 << ' ' << i << ' ' << rates.down(i) << ' ' << method << '\n';
}

}  // namespace jumpstat
