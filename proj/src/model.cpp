#include "jumpstat/model.hpp"

#include <algorithm>
#include <cmath>

namespace jumpstat {

namespace {

int pow_int(int base, int exp) {
  int out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

std::vector<int> digits_of(int index, int d, int n) {
  std::vector<int> out(n);
  for (int i = n - 1; i >= 0; --i) {
    out[i] = index % d;
    index /= d;
  }
  return out;
}

int index_of(const std::vector<int>& digits, int d) {
  int out = 0;
  for (int s : digits) out = out * d + s;
  return out;
}

std::string product_label(const std::vector<int>& digits) {
  std::string s = "|";
  for (int x : digits) s += std::to_string(x + 1);  // physical 1-based names
  return s + ">";
}

}  // namespace

std::vector<Transition> LevelScheme::transitions() const {
  // S_j^+ = |upper><lower| per atom; the strong laser-driven transition
  // is always j = 3 (|3> <-> |1>).
  std::vector<Transition> out;
  if (kind == SchemeKind::DThreeLevel) {
    out.push_back({1, 1, 0, einstein_a(1), wavelength(1)});
    out.push_back({2, 2, 1, einstein_a(2), wavelength(2)});
    out.push_back({3, 2, 0, einstein_a(3), wavelength(3)});
  } else {
    out.push_back({1, 1, 0, einstein_a(1), wavelength(1)});
    out.push_back({2, 3, 1, einstein_a(2), wavelength(2)});
    out.push_back({3, 2, 0, einstein_a(3), wavelength(3)});
    out.push_back({4, 3, 0, einstein_a(4), wavelength(4)});
  }
  return out;
}

double LevelScheme::einstein_a(int j) const {
  const auto it = einstein.find(j);
  return it == einstein.end() ? 0.0 : it->second;
}

double LevelScheme::wavelength(int j) const {
  const auto it = wavelengths.find(j);
  return it == wavelengths.end() ? 0.0 : it->second;
}

double LevelScheme::dark_branching() const {
  if (kind != SchemeKind::FourLevel)
    throw ConfigError("dark branching is defined for the four-level scheme only");
  const double a2 = einstein_a(2);
  const double a4 = einstein_a(4);
  if (a2 + a4 <= 0.0) throw ConfigError("level |4> must decay (A2 + A4 > 0)");
  return a2 / (a2 + a4);
}

double LevelScheme::effective_shelving_rate() const {
  return incoherent_w * dark_branching();
}

void LevelScheme::validate() const {
  const int jmax = kind == SchemeKind::FourLevel ? 4 : 3;
  for (int j = 1; j <= jmax; ++j) {
    if (einstein_a(j) < 0.0)
      throw ConfigError("Einstein coefficient A" + std::to_string(j) +
                        " must be nonnegative");
  }
  if (rabi < 0.0) throw ConfigError("Rabi frequency must be nonnegative");
  if (incoherent_w < 0.0) throw ConfigError("incoherent rate W must be nonnegative");
  if (kind == SchemeKind::DThreeLevel && incoherent_w != 0.0)
    throw ConfigError("incoherent rate W applies to the four-level scheme only");
}

bool LevelScheme::hierarchy_ok(double ratio) const {
  const double strong = std::min(einstein_a(3), rabi);
  double weak = einstein_a(1);
  if (kind == SchemeKind::DThreeLevel) {
    weak = std::max(weak, einstein_a(2));
  } else {
    weak = std::max(weak, incoherent_w);
  }
  if (weak == 0.0) return true;
  return strong >= ratio * weak;
}

int EnsembleSpec::dim() const { return pow_int(scheme.n_levels(), n_atoms); }

void EnsembleSpec::validate() const {
  scheme.validate();
  if (n_atoms < 1 || n_atoms > 3)
    throw ConfigError("n_atoms must be 1, 2 or 3");
  if (geometry.n_atoms() != n_atoms)
    throw ConfigError("geometry must provide one position per atom");
}

Vector BasisState::to_vector(int dim) const {
  Vector v = Vector::Zero(dim);
  for (const auto& [idx, amp] : coefficients) v(idx) += amp;
  return v;
}

std::vector<BasisState> build_product_basis(const EnsembleSpec& spec) {
  spec.validate();
  const int d = spec.scheme.n_levels();
  const int dim = spec.dim();
  std::vector<BasisState> out;
  out.reserve(dim);
  for (int idx = 0; idx < dim; ++idx) {
    BasisState b;
    b.label = product_label(digits_of(idx, d, spec.n_atoms));
    b.coefficients = {{idx, Complex(1.0, 0.0)}};
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

BasisState make_state(std::string label, const std::vector<std::vector<int>>& kets,
                      const std::vector<double>& amps, int d) {
  BasisState b;
  b.label = std::move(label);
  double norm2 = 0.0;
  for (double a : amps) norm2 += a * a;
  const double norm = std::sqrt(norm2);
  for (size_t i = 0; i < kets.size(); ++i)
    b.coefficients.emplace_back(index_of(kets[i], d), Complex(amps[i] / norm, 0.0));
  return b;
}

std::string level_name(int i) { return std::to_string(i + 1); }

std::vector<BasisState> dicke2_basis(int d) {
  std::vector<BasisState> out;
  for (int i = 0; i < d; ++i) {
    const std::string lbl = i == 0 ? "g" : "e" + level_name(i);
    out.push_back(make_state(lbl, {{i, i}}, {1.0}, d));
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const std::string suf = level_name(i) + level_name(j);
      out.push_back(make_state("s" + suf, {{i, j}, {j, i}}, {1.0, 1.0}, d));
      out.push_back(make_state("a" + suf, {{i, j}, {j, i}}, {1.0, -1.0}, d));
    }
  }
  return out;
}

std::vector<BasisState> dicke3_basis(int d) {
  std::vector<BasisState> out;
  for (int i = 0; i < d; ++i) {
    const std::string lbl = i == 0 ? "g" : "e" + level_name(i);
    out.push_back(make_state(lbl, {{i, i, i}}, {1.0}, d));
  }
  // One atom in level i, two in level j (i != j).
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      const std::string suf = level_name(i) + level_name(j) + level_name(j);
      const std::vector<std::vector<int>> kets = {{i, j, j}, {j, j, i}, {j, i, j}};
      out.push_back(make_state("s" + suf, kets, {1.0, 1.0, 1.0}, d));
      out.push_back(make_state("b" + suf, kets, {2.0, -1.0, -1.0}, d));
      out.push_back(make_state("c" + suf, kets, {0.0, 1.0, -1.0}, d));
    }
  }
  // All three levels distinct, i < j < k.
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (int k = j + 1; k < d; ++k) {
        const std::string suf = level_name(i) + level_name(j) + level_name(k);
        const std::vector<std::vector<int>> kets = {
            {i, j, k}, {j, k, i}, {k, i, j}, {i, k, j}, {j, i, k}, {k, j, i}};
        out.push_back(make_state("s" + suf, kets, {1, 1, 1, 1, 1, 1}, d));
        out.push_back(make_state("a" + suf, kets, {1, 1, 1, -1, -1, -1}, d));
        out.push_back(make_state("b" + suf, kets, {2, -1, -1, 2, -1, -1}, d));
        out.push_back(make_state("c" + suf, kets, {0, 1, -1, 0, -1, 1}, d));
        out.push_back(make_state("d" + suf, kets, {2, -1, -1, -2, 1, 1}, d));
        out.push_back(make_state("e" + suf, kets, {0, 1, -1, 0, 1, -1}, d));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<BasisState> build_symmetrized_basis(const EnsembleSpec& spec) {
  spec.validate();
  if (spec.n_atoms < 2)
    throw ConfigError("symmetrized basis requires 2 or 3 atoms");
  const int d = spec.scheme.n_levels();
  return spec.n_atoms == 2 ? dicke2_basis(d) : dicke3_basis(d);
}

int bright_count(const EnsembleSpec& spec, int product_index) {
  const auto digits =
      digits_of(product_index, spec.scheme.n_levels(), spec.n_atoms);
  int k = 0;
  for (int lvl : digits)
    if (spec.scheme.is_bright_level(lvl)) ++k;
  return k;
}

std::vector<std::pair<std::string, std::vector<int>>> intensity_subspaces(
    const EnsembleSpec& spec) {
  spec.validate();
  std::vector<std::pair<std::string, std::vector<int>>> out;
  for (int k = 0; k <= spec.n_atoms; ++k)
    out.emplace_back("S" + std::to_string(k), std::vector<int>{});
  const int dim = spec.dim();
  for (int idx = 0; idx < dim; ++idx)
    out[bright_count(spec, idx)].second.push_back(idx);
  return out;
}

}  // namespace jumpstat
