#include "jumpstat/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "jumpstat/coupling.hpp"
#include "jumpstat/liouville.hpp"
#include "jumpstat/model.hpp"
#include "jumpstat/rates.hpp"
#include "jumpstat/telegraph.hpp"

namespace jumpstat {

namespace {

LevelScheme d_scheme(double a1, double a2, double omega) {
  LevelScheme s;
  s.kind = SchemeKind::DThreeLevel;
  s.einstein = {{1, a1}, {2, a2}, {3, 1.0}};
  s.rabi = omega;
  s.wavelengths = {{1, 2.0}, {2, 1.5}, {3, 1.0}};
  return s;
}

LevelScheme four_scheme(double a1, double a2, double a4, double w, double omega,
                        double detuning) {
  LevelScheme s;
  s.kind = SchemeKind::FourLevel;
  s.einstein = {{1, a1}, {2, a2}, {3, 1.0}, {4, a4}};
  s.rabi = omega;
  s.incoherent_w = w;
  s.detuning = detuning;
  s.wavelengths = {{1, 3.5}, {2, 1.25}, {3, 1.0}, {4, 0.92}};
  return s;
}

EnsembleSpec make_spec(LevelScheme scheme, int n_atoms, double r) {
  EnsembleSpec spec;
  spec.scheme = std::move(scheme);
  spec.n_atoms = n_atoms;
  spec.geometry = Geometry::equilateral(r, n_atoms);
  return spec;
}

RateMatrix project_rates(const EnsembleSpec& spec, const CouplingSet& couplings) {
  const auto [strong, weak] = split_strong_weak(spec, couplings);
  const auto qss = quasi_steady_states(spec, strong.op);
  return rates_by_projection(weak.op, qss);
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

struct Collector {
  double worst = 0.0;
  void note(double v) { worst = std::max(worst, v); }
};

// --- check 1: single D system vs the analytic rates ----------------------

CheckResult check_single_d() {
  CheckResult res{1, "single D system: projection matches analytic rates"};
  Collector c;
  const double a1 = 1e-4;
  for (double omega : {0.3, 0.6, 1.0, 1.4, 2.0}) {
    for (double a2 : {5e-5, 1e-4, 2e-4, 5e-4, 1e-3}) {
      const auto spec = make_spec(d_scheme(a1, a2, omega), 1, 1.0);
      const auto couplings = build_coupling_set(spec.geometry, spec.scheme);
      const auto rates = project_rates(spec, couplings);
      const double p10_expect = a2 * omega * omega / (1.0 + 2.0 * omega * omega);
      c.note(rel_diff(rates.up(0), a1));
      c.note(rel_diff(rates.down(0), p10_expect));
    }
  }
  res.pass = c.worst <= 1e-9;
  std::ostringstream os;
  os << "max relative deviation " << c.worst << " (limit 1e-9, 5x5 grid)";
  res.detail = os.str();
  return res;
}

// --- check 2: two D systems, upward rate 2 A1 -----------------------------

CheckResult check_two_d_upward() {
  CheckResult res{2, "two D systems: p01 = 2 A1 by projection and by channels"};
  Collector c;
  const double a1 = 1e-4;
  for (double r : {0.5, 1.0, 2.0, 5.0}) {
    const auto spec = make_spec(d_scheme(a1, 2.5e-4, 0.9), 2, r);
    const auto couplings = build_coupling_set(spec.geometry, spec.scheme);
    const auto [strong, weak] = split_strong_weak(spec, couplings);
    const auto qss = quasi_steady_states(spec, strong.op);
    const auto proj = rates_by_projection(weak.op, qss);
    const auto simp =
        rates_by_simplified_scheme(channels_for(spec, couplings), qss);
    c.note(rel_diff(proj.up(0), 2.0 * a1));
    c.note(rel_diff(simp.up(0), 2.0 * a1));
  }
  res.pass = c.worst <= 1e-9;
  std::ostringstream os;
  os << "max relative deviation " << c.worst
     << " (limit 1e-9, r in {0.5,1,2,5})";
  res.detail = os.str();
  return res;
}

// --- check 3: three four-level atoms, three methods agree -----------------

CheckResult check_three_methods() {
  CheckResult res{3, "three four-level atoms: projection, channel scheme and "
                     "closed forms agree"};
  Collector c;
  for (double detuning : {0.0, 0.5}) {
    for (int ir = 0; ir < 10; ++ir) {
      const double r = 0.5 + ir * (10.0 - 0.5) / 9.0;
      auto spec = make_spec(four_scheme(2e-4, 1.0, 1.3, 6e-4, 0.7, detuning), 3, r);
      // The closed forms keep only the strong-transition coupling; the
      // comparison therefore runs with C^(3) alone.
      const auto couplings = build_coupling_set(spec.geometry, spec.scheme,
                                                CouplingPolicy::StrongOnly);
      const auto [strong, weak] = split_strong_weak(spec, couplings);
      const auto qss = quasi_steady_states(spec, strong.op);
      const auto proj = rates_by_projection(weak.op, qss);
      const auto simp =
          rates_by_simplified_scheme(channels_for(spec, couplings), qss);
      const auto closed =
          closed_form_rates(spec, couplings.get(0, 1, 3), detuning).exact;
      for (int k = 0; k < 3; ++k) {
        c.note(rel_diff(proj.up(k), closed.up(k)));
        c.note(rel_diff(proj.down(k), closed.down(k)));
        c.note(rel_diff(simp.up(k), closed.up(k)));
        c.note(rel_diff(simp.down(k), closed.down(k)));
        c.note(rel_diff(proj.up(k), simp.up(k)));
        c.note(rel_diff(proj.down(k), simp.down(k)));
      }
    }
  }
  res.pass = c.worst <= 1e-6;
  std::ostringstream os;
  os << "max pairwise relative deviation " << c.worst
     << " (limit 1e-6, 10 distances x 2 detunings)";
  res.detail = os.str();
  return res;
}

// --- check 4: first-order rates are the C3-linearization ------------------

CheckResult check_first_order() {
  CheckResult res{4, "first-order rates: quadratic remainder with stable "
                     "coefficient"};
  double worst_spread = 0.0;
  const auto spec = make_spec(four_scheme(2e-4, 1.0, 1.3, 6e-4, 0.7, 0.0), 3, 1.0);
  const Complex phase = std::exp(Complex(0.0, 0.7));
  for (double detuning : {0.0, 0.5}) {
    for (int which : {1, 2}) {  // down(1) and down(2) have C3 dependence
      double kmin = std::numeric_limits<double>::infinity();
      double kmax = 0.0;
      for (int i = 0; i < 9; ++i) {
        const double mag = std::pow(10.0, -4.0 + 2.0 * i / 8.0);
        const auto cf = closed_form_rates(spec, mag * phase, detuning);
        const double k =
            std::abs(cf.exact.down(which) - cf.first_order.down(which)) /
            (mag * mag);
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
      }
      worst_spread = std::max(worst_spread, kmax / kmin - 1.0);
    }
  }
  res.pass = worst_spread <= 0.05;
  std::ostringstream os;
  os << "remainder coefficient spread " << worst_spread
     << " over |C3| in [1e-4, 1e-2] (limit 0.05)";
  res.detail = os.str();
  return res;
}

// --- check 5: closed-form bright-state populations -------------------------

std::vector<std::pair<std::string, Vector>> bright_sym_states() {
  // Three four-level atoms, bright manifold {|1>, |3>} = digits {0, 2};
  // atom 0 is the most significant base-4 digit.
  const int dim = 64;
  auto ket = [&](int l0, int l1, int l2) {
    Vector v = Vector::Zero(dim);
    v(l0 * 16 + l1 * 4 + l2) = Complex(1.0, 0.0);
    return v;
  };
  auto normed = [](Vector v) { return (v / v.norm()).eval(); };
  std::vector<std::pair<std::string, Vector>> out;
  out.emplace_back("g", ket(0, 0, 0));
  out.emplace_back("e3", ket(2, 2, 2));
  // one |3> among two |1>: singleton level i = 2, pair level j = 0
  out.emplace_back("s113", normed(ket(2, 0, 0) + ket(0, 0, 2) + ket(0, 2, 0)));
  out.emplace_back("b113",
                   normed(2 * ket(2, 0, 0) - ket(0, 0, 2) - ket(0, 2, 0)));
  out.emplace_back("c113", normed(ket(0, 0, 2) - ket(0, 2, 0)));
  // one |1> among two |3>
  out.emplace_back("s133", normed(ket(0, 2, 2) + ket(2, 2, 0) + ket(2, 0, 2)));
  out.emplace_back("b133",
                   normed(2 * ket(0, 2, 2) - ket(2, 2, 0) - ket(2, 0, 2)));
  out.emplace_back("c133", normed(ket(2, 2, 0) - ket(2, 0, 2)));
  return out;
}

CheckResult check_populations() {
  CheckResult res{5, "fully bright three-atom populations: closed form vs "
                     "numeric null space"};
  const double omega = 0.8;
  // Algebraic identity at C3 = 0: the eight populations sum to one.
  const auto p0 = rho_ss3_populations(1.0, omega, Complex(0.0, 0.0));
  double sum = 0.0;
  for (const auto& [name, value] : p0) sum += value;
  const double sum_err = std::abs(sum - 1.0);

  Collector c;
  for (double r : {0.5, 1.0, 2.0}) {
    auto spec = make_spec(four_scheme(2e-4, 1.0, 1.3, 6e-4, omega, 0.0), 3, r);
    const auto couplings = build_coupling_set(spec.geometry, spec.scheme,
                                              CouplingPolicy::StrongOnly);
    const Complex c3 = couplings.get(0, 1, 3);
    const auto closed = rho_ss3_populations(1.0, omega, c3);
    const auto [strong, weak] = split_strong_weak(spec, couplings);
    const auto qss = quasi_steady_states(spec, strong.op);
    const Matrix& rho3 = qss.classes.back().rho_ss;
    for (const auto& [name, u] : bright_sym_states())
      c.note(std::abs(u.dot(rho3 * u).real() - closed.at(name)));
  }
  res.pass = sum_err <= 1e-12 && c.worst <= 1e-9;
  std::ostringstream os;
  os << "sum-to-one error " << sum_err << " (limit 1e-12); max population "
     << "error vs null space " << c.worst << " (limit 1e-9)";
  res.detail = os.str();
  return res;
}

// --- check 6: triple-jump deviation bounds over distance -------------------

CheckResult check_sweep_bounds() {
  CheckResult res{6, "triple-jump rate: distance-dependence bounds at the "
                     "optimal drive"};
  const double omega = 0.5 * std::sqrt(std::sqrt(5.0) - 1.0);
  auto spec = make_spec(four_scheme(2e-4, 1.0, 1.0, 6e-4, omega, 0.0), 3, 1.0);
  const auto base = closed_form_rates(spec, Complex(0.0, 0.0), 0.0).exact;
  const double tjr_base = analytic_tjr(base, 1.0);
  double worst_r1 = 0.0, worst_r3 = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double r = 1.0 + i * 9.0 / 199.0;
    const Complex c3 =
        coupling_parameter(1.0, 2.0 * std::numbers::pi * r, std::numbers::pi / 2.0);
    const auto rates = closed_form_rates(spec, c3, 0.0).exact;
    const double dev = std::abs(analytic_tjr(rates, 1.0) - tjr_base) / tjr_base;
    worst_r1 = std::max(worst_r1, dev);
    if (r >= 3.0) worst_r3 = std::max(worst_r3, dev);
  }
  res.pass = worst_r1 <= 0.05 && worst_r3 <= 0.01;
  std::ostringstream os;
  os << "max deviation " << worst_r1 << " for r >= 1 (limit 0.05), "
     << worst_r3 << " for r >= 3 (limit 0.01)";
  res.detail = os.str();
  return res;
}

// --- check 7: Monte Carlo vs analytic multi-jump rates ---------------------

CheckResult check_monte_carlo() {
  CheckResult res{7, "Monte Carlo telegraph statistics match the analytic "
                     "multi-jump rates"};
  RateMatrix rates;
  rates.n_levels = 4;
  rates.up = RealVector::Zero(3);
  rates.down = RealVector::Zero(3);
  rates.up << 3.0, 2.0, 1.0;
  rates.down << 1.0, 2.0, 3.0;
  const double window = 0.003;
  const double t_end = 6.7e6;  // about 2e7 transitions at total rate 3
  const std::uint64_t seed = 20240817;

  const auto stats = simulate_and_count(rates, t_end, window, seed);
  const double dj = analytic_djr(rates, window);
  const double tj = analytic_tjr(rates, window);
  const double dj_sigma = std::abs(stats.djr - dj) / stats.djr_stderr;
  const double tj_sigma = std::abs(stats.tjr - tj) / stats.tjr_stderr;

  // Determinism spot check on a shorter run.
  const auto a = simulate_and_count(rates, 1e4, window, seed);
  const auto b = simulate_and_count(rates, 1e4, window, seed);
  const bool deterministic =
      a.n_double == b.n_double && a.n_triple == b.n_triple;

  res.pass = dj_sigma <= 3.0 && tj_sigma <= 3.0 && deterministic;
  std::ostringstream os;
  os << "double-jump " << dj_sigma << " sigma, triple-jump " << tj_sigma
     << " sigma (limit 3); " << stats.n_double << " doubles, " << stats.n_triple
     << " triples; deterministic=" << (deterministic ? "yes" : "no");
  res.detail = os.str();
  return res;
}

// --- check 8: generator sanity ---------------------------------------------

CheckResult check_generator_sanity() {
  CheckResult res{8, "generator sanity: trace preservation and damping "
                     "positivity"};
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst_trace = 0.0;
  for (const bool four_level : {false, true}) {
    for (int n = 1; n <= 3; ++n) {
      auto spec = four_level
                      ? make_spec(four_scheme(2e-4, 1.0, 1.3, 6e-4, 0.7, 0.3), n, 0.7)
                      : make_spec(d_scheme(1e-4, 2.5e-4, 0.9), n, 0.7);
      const auto couplings = build_coupling_set(spec.geometry, spec.scheme);
      const auto full = build_full_generator(spec, couplings);
      const int d = spec.dim();
      const int trials = 1000;
      for (int t = 0; t < trials; ++t) {
        Matrix m(d, d);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) m(i, j) = Complex(normal(rng), normal(rng));
        Matrix rho = 0.5 * (m + m.adjoint());
        rho /= rho.norm();
        worst_trace = std::max(worst_trace,
                               std::abs(full.apply(rho).trace()));
      }
    }
  }

  // Collective damping matrices stay positive semidefinite down to
  // r = 0.05 lambda_j.
  double worst_eig = 0.0;
  const auto scheme = four_scheme(2e-4, 1.0, 1.3, 6e-4, 0.7, 0.0);
  for (double r : {0.05, 0.08, 0.12, 0.2, 0.5, 1.0, 3.0}) {
    for (const auto& t : scheme.transitions()) {
      const double a = 2.0 * std::numbers::pi * r;  // r in units of lambda_j
      const double re_c =
          coupling_parameter(t.rate, a, std::numbers::pi / 2.0).real();
      Eigen::Matrix3d damp = Eigen::Matrix3d::Constant(re_c);
      damp.diagonal().setConstant(t.rate);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(damp);
      worst_eig = std::min(worst_eig, es.eigenvalues().minCoeff() / t.rate);
    }
  }
  res.pass = worst_trace <= 1e-10 && worst_eig >= -1e-12;
  std::ostringstream os;
  os << "max |trace(L rho)| " << worst_trace
     << " (limit 1e-10); min damping eigenvalue/A_j " << worst_eig
     << " (limit -1e-12)";
  res.detail = os.str();
  return res;
}

}  // namespace

std::vector<CheckResult> run_verification_suite() {
  const std::vector<std::function<CheckResult()>> checks = {
      check_single_d,      check_two_d_upward, check_three_methods,
      check_first_order,   check_populations,  check_sweep_bounds,
      check_monte_carlo,   check_generator_sanity,
  };
  std::vector<CheckResult> out;
  for (const auto& check : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult res;
    try {
      res = check();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (res.id == 0) res.id = static_cast<int>(out.size()) + 1;
    out.push_back(std::move(res));
  }
  return out;
}

bool report_verification(const std::vector<CheckResult>& results,
                         std::ostream& out) {
  bool all = true;
  for (const auto& res : results) {
    out << (res.pass ? "PASS" : "FAIL") << " check " << res.id << ": "
        << res.name << " -- " << res.detail << " [" << res.seconds << " s]\n";
    all = all && res.pass;
  }
  out << (all ? "all checks passed\n" : "verification FAILED\n");
  return all;
}

}  // namespace jumpstat
