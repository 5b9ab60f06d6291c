#ifndef WEBERBOX_VERIFY_HPP
#define WEBERBOX_VERIFY_HPP

#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "weberbox/asymptotic.hpp"
#include "weberbox/bathtub.hpp"
#include "weberbox/hydrogen.hpp"
#include "weberbox/numerov.hpp"
#include "weberbox/weber.hpp"

namespace weberbox {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace checks {

inline CheckResult harmonic_limit() {
  CheckResult r{1, "harmonic limit l -> 0"};
  const auto states = eigenvalues(1e-6, 5);
  double worst = 0.0;
  for (const auto& s : states) {
    worst = std::max(worst, std::fabs(s.energy.value - (s.n + 0.5)));
  }
  r.pass = worst < 1e-4;
  std::ostringstream os;
  os << "max |E_n - (n+1/2)| = " << worst << " (tol 1e-4)";
  r.detail = os.str();
  return r;
}

inline CheckResult critical_half_width() {
  CheckResult r{2, "E_2(l) = 3/2 at l = 1.28"};
  auto e2 = [](double l) { return eigenvalues(l, 2).back().energy.value; };
  double lo = 1.0, hi = 1.6;
  double f_lo = e2(lo) - 1.5;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = e2(mid) - 1.5;
    if (f_lo * f_mid <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  const double l_star = 0.5 * (lo + hi);
  const bool l_ok = std::fabs(l_star - 1.28) <= 0.01;

  const auto state = eigenvalues(l_star, 2).back();
  const double h = 0.005;
  const auto w = assemble_wavefunction(state, -(l_star + 8.0), l_star + 8.0, h);
  // Node positions by sign-change interpolation.
  std::vector<double> nodes;
  for (size_t i = 0; i + 1 < w.psi.size(); ++i) {
    if (w.psi[i] * w.psi[i + 1] < 0.0) {
      const double t = w.psi[i] / (w.psi[i] - w.psi[i + 1]);
      nodes.push_back(w.z[i] + t * h);
    }
  }
  bool nodes_ok = nodes.size() == 2;
  if (nodes_ok) {
    nodes_ok = std::fabs(nodes.front() + l_star) <= h &&
               std::fabs(nodes.back() - l_star) <= h;
  }
  r.pass = l_ok && nodes_ok;
  std::ostringstream os;
  os << "l* = " << l_star << " (target 1.28 +- 0.01); nodes";
  for (double z : nodes) os << " " << z;
  os << " vs +-" << l_star << " within h = " << h;
  r.detail = os.str();
  return r;
}

inline CheckResult spectrum_shape() {
  CheckResult r{3, "E_n(l) decreasing, spectrum ordered"};
  bool ok = true;
  std::vector<std::vector<double>> curves(6);
  for (int i = 0; i <= 20; ++i) {
    const double l = 0.25 * i;
    const auto states = eigenvalues(l, 5);
    for (int n = 0; n <= 5; ++n) {
      curves[n].push_back(states[n].energy.value);
      if (n > 0 && !(states[n].energy.value > states[n - 1].energy.value)) {
        ok = false;
      }
    }
  }
  for (const auto& c : curves) {
    for (size_t i = 1; i < c.size(); ++i) {
      if (!(c[i] < c[i - 1])) ok = false;
    }
  }
  r.pass = ok;
  r.detail = ok ? "strictly decreasing in l and ordered at every l"
                : "monotonicity or ordering violated";
  return r;
}

inline CheckResult box_limit() {
  CheckResult r{4, "box spectrum at l = 20"};
  const auto states = eigenvalues(20.0, 3);
  const double e0 = states[0].energy.value;
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double target = (n + 1.0) * (n + 1.0);
    worst = std::max(worst,
                     std::fabs(states[n].energy.value / e0 - target) / target);
  }
  r.pass = worst < 0.05;
  std::ostringstream os;
  os << "max relative deviation of E_n/E_0 from (n+1)^2 = " << worst
     << " (tol 0.05)";
  r.detail = os.str();
  return r;
}

inline CheckResult oracle_equivalence() {
  CheckResult r{5, "series matching vs Numerov eigenvalues"};
  double worst = 0.0;
  for (double l : {0.5, 1.0, 2.0}) {
    const auto series = eigenvalues(l, 4);
    const auto numerov = bathtub_numerov_eigenvalues(l, 4, 1e-3);
    for (size_t n = 0; n < series.size() && n < numerov.size(); ++n) {
      worst = std::max(worst, std::fabs(series[n].energy.value - numerov[n]));
    }
  }
  r.pass = worst < 1e-6;
  std::ostringstream os;
  os << "max |E_series - E_numerov| = " << worst << " (tol 1e-6)";
  r.detail = os.str();
  return r;
}

inline CheckResult asymptotic_law() {
  CheckResult r{6, "omega^r e^{-omega} S(omega) -> 1"};
  bool ok = true;
  double worst200 = 0.0;
  for (double rr : {0.5, 1.0, 2.0}) {
    worst200 =
        std::max(worst200, std::fabs(series_s(200.0, rr).normalized_ratio - 1.0));
    double prev = 1e300;
    for (double omega : {50.0, 100.0, 200.0, 400.0}) {
      const double dev = std::fabs(series_s(omega, rr).normalized_ratio - 1.0);
      if (!(dev <= prev)) ok = false;
      prev = dev;
    }
  }
  if (worst200 >= 0.05) ok = false;
  r.pass = ok;
  std::ostringstream os;
  os << "max |ratio - 1| at omega = 200: " << worst200
     << " (tol 0.05); monotone over {50,100,200,400}: " << (ok ? "yes" : "no");
  r.detail = os.str();
  return r;
}

inline CheckResult appendix_sandwich() {
  CheckResult r{7, "appendix sandwich at omega = 300"};
  const auto s = sandwich_check(300.0, 1.0, 0.9, 1.1);
  const bool bracket_ok = s.lower <= s.t_full && s.t_full <= s.upper;
  const bool head_ok = s.head_vanishes < 1e-3;
  const bool tail_ok = s.tail_vanishes < 1e-3;
  r.pass = bracket_ok && head_ok && tail_ok;
  std::ostringstream os;
  os << "head = " << s.head_vanishes << " (tol 1e-3, " << (head_ok ? "ok" : "FAIL")
     << "); tail = " << s.tail_vanishes << " (tol 1e-3, "
     << (tail_ok ? "ok" : "FAIL") << "); bounds " << s.lower
     << " <= " << s.t_full << " <= " << s.upper << " ("
     << (bracket_ok ? "ok" : "FAIL") << ")";
  r.detail = os.str();
  return r;
}

inline CheckResult weber_identity() {
  CheckResult r{8, "D_0 case: psi proportional to e^{-y^2/4}"};
  const Energy e{0.5};
  const double psi0 = eval_decaying(e, 0.0).psi;
  double worst = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double y = 0.01 * i;
    const double got = eval_decaying(e, y).psi / psi0;
    worst = std::max(worst, std::fabs(got * std::exp(0.25 * y * y) - 1.0));
  }
  r.pass = worst < 1e-10;
  std::ostringstream os;
  os << "max |psi e^{y^2/4}/psi(0) - 1| = " << worst << " (tol 1e-10)";
  r.detail = os.str();
  return r;
}

inline CheckResult ode_residual() {
  CheckResult r{9, "series solution satisfies the ODE"};
  const Energy e{1.0};
  const double h = 1e-3;
  const long n = 5000;
  std::vector<double> psi(n + 1);
  double max_abs = 0.0;
  for (long i = 0; i <= n; ++i) {
    psi[i] = eval_decaying(e, h * i).psi;
    max_abs = std::max(max_abs, std::fabs(psi[i]));
  }
  double worst = 0.0;
  for (long i = 1; i < n; ++i) {
    const double y = h * i;
    const double dd = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (h * h);
    worst = std::max(worst, std::fabs(dd + (e.value - 0.25 * y * y) * psi[i]));
  }
  r.pass = worst < 1e-6 * max_abs;
  std::ostringstream os;
  os << "max residual / max|psi| = " << worst / max_abs << " (tol 1e-6)";
  r.detail = os.str();
  return r;
}

inline CheckResult hydrogen_series() {
  CheckResult r{10, "hydrogen radial series"};
  bool term_ok = true;
  for (int L = 0; L <= 2 && term_ok; ++L) {
    for (int N = 0; N <= 2 && term_ok; ++N) {
      const double xi = quantization_xi(L, N);  // throws on failure
      double c = 1.0;
      for (int n = 0; n <= N; ++n) c = radial_recurrence(c, n, L, xi);
      term_ok = (c == 0.0);
    }
  }
  const auto asym = radial_asymptotic(100.0, 0, 1.3);
  const bool ratio_ok = std::fabs(asym.ratio - 1.0) < 0.05;
  const double f200 = radial_recurrence(1.0, 200, 0, 1.3);
  const bool ratio_law_ok = std::fabs(f200 / (2.0 / 200.0) - 1.0) < 0.05;
  r.pass = term_ok && ratio_ok && ratio_law_ok;
  std::ostringstream os;
  os << "termination exact: " << (term_ok ? "yes" : "no")
     << "; F(100)/predicted = " << asym.ratio << " (tol 5% of 1, "
     << (ratio_ok ? "ok" : "FAIL") << "); c_201/c_200 vs 2/200: "
     << f200 / (2.0 / 200.0) << " (tol 5%, " << (ratio_law_ok ? "ok" : "FAIL")
     << ")";
  r.detail = os.str();
  return r;
}

inline CheckResult coulomb_sanity() {
  CheckResult r{11, "piecewise Coulomb levels"};
  const auto base = coulomb_piecewise_levels(1.0, 0.0, 0, 3);
  double worst = 0.0;
  for (size_t n = 0; n < base.size(); ++n) {
    const double target = -1.0 / ((n + 1.0) * (n + 1.0));
    worst = std::max(worst, std::fabs(base[n] - target) / std::fabs(target));
  }
  bool mono_ok = base.size() == 3;
  std::vector<double> prev = base;
  for (double R : {0.5, 1.0, 2.0}) {
    const auto lev = coulomb_piecewise_levels(1.0, R, 0, 3);
    if (lev.size() < prev.size()) {
      mono_ok = false;
      break;
    }
    for (size_t n = 0; n < prev.size(); ++n) {
      if (lev[n] < prev[n] - 1e-9) mono_ok = false;
    }
    prev = lev;
  }
  r.pass = worst < 1e-4 && mono_ok;
  std::ostringstream os;
  os << "max relative deviation from -1/(n+1)^2 at R = 0: " << worst
     << " (tol 1e-4); non-decreasing in R: " << (mono_ok ? "yes" : "no");
  r.detail = os.str();
  return r;
}

}  // namespace checks

inline std::vector<CheckResult> run_acceptance(bool quick = false) {
  using Fn = CheckResult (*)();
  struct Entry {
    int id;
    const char* name;
    Fn fn;
    bool in_quick;
  };
  const Entry entries[] = {
      {1, "harmonic limit l -> 0", checks::harmonic_limit, true},
      {2, "E_2(l) = 3/2 at l = 1.28", checks::critical_half_width, true},
      {3, "E_n(l) decreasing, spectrum ordered", checks::spectrum_shape, false},
      {4, "box spectrum at l = 20", checks::box_limit, false},
      {5, "series matching vs Numerov eigenvalues", checks::oracle_equivalence,
       false},
      {6, "omega^r e^{-omega} S(omega) -> 1", checks::asymptotic_law, true},
      {7, "appendix sandwich at omega = 300", checks::appendix_sandwich, true},
      {8, "D_0 case: psi proportional to e^{-y^2/4}", checks::weber_identity,
       true},
      {9, "series solution satisfies the ODE", checks::ode_residual, true},
      {10, "hydrogen radial series", checks::hydrogen_series, true},
      {11, "piecewise Coulomb levels", checks::coulomb_sanity, false},
  };
  std::vector<CheckResult> out;
  for (const auto& e : entries) {
    if (quick && !e.in_quick) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    r.id = e.id;
    r.name = e.name;
    try {
      r = e.fn();
    } catch (const std::exception& ex) {
      r.id = e.id;
      r.name = e.name;
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
    out.push_back(r);
  }
  return out;
}

}  // namespace weberbox

#endif  // WEBERBOX_VERIFY_HPP
