#ifndef WEBERBOX_BATHTUB_HPP
#define WEBERBOX_BATHTUB_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "weberbox/numerov.hpp"
#include "weberbox/weber.hpp"

namespace weberbox {

/// Half-width l plus the (constant) inner-region value; the bathtub case is
/// inner_constant = 0.
struct PiecewisePotential {
  double l = 0.0;
  double inner_constant = 0.0;

  double operator()(double z) const {
    const double a = std::fabs(z);
    if (a <= l) return inner_constant;
    const double y = a - l;
    return 0.25 * y * y;
  }
};

struct Eigenstate {
  int n = 0;  // node count / spectral index
  Parity parity = Parity::even;
  Energy energy;
  double A = 0.0, B = 0.0, C = 0.0, F = 0.0;
  double l = 0.0;
};

struct SampledWavefunction {
  std::vector<double> z;
  std::vector<double> psi;
  double norm = 0.0;  // integral of |psi|^2 before rescaling
};

/// Pole-free even matching condition: a0 sqrt(E) sin(sqrt(E) l) +
/// a1 cos(sqrt(E) l). Zero iff sqrt(E) tan(sqrt(E) l) = -a*, including the
/// a* = infinity case.
inline double root_fn_even(Energy energy, double l) {
  if (!(energy.value > 0.0)) {
    throw std::domain_error("root_fn_even: requires E > 0");
  }
  const WeberPair p = weber_pair(energy);
  const double k = std::sqrt(energy.value);
  return p.a0 * k * std::sin(k * l) + p.a1 * std::cos(k * l);
}

/// Pole-free odd matching condition: a0 sqrt(E) cos(sqrt(E) l) -
/// a1 sin(sqrt(E) l).
inline double root_fn_odd(Energy energy, double l) {
  if (!(energy.value > 0.0)) {
    throw std::domain_error("root_fn_odd: requires E > 0");
  }
  const WeberPair p = weber_pair(energy);
  const double k = std::sqrt(energy.value);
  return p.a0 * k * std::cos(k * l) - p.a1 * std::sin(k * l);
}

namespace detail {

inline std::vector<double> scan_roots(Parity parity, double l, double e_max,
                                      double step) {
  auto f = [&](double e) {
    return parity == Parity::even ? root_fn_even(Energy{e}, l)
                                  : root_fn_odd(Energy{e}, l);
  };
  std::vector<double> roots;
  double e_prev = 1e-9;
  double f_prev = f(e_prev);
  for (long i = 1;; ++i) {
    const double e = static_cast<double>(i) * step;
    if (e > e_max + 1e-12) break;
    const double fe = f(e);
    if (f_prev == 0.0) {
      roots.push_back(e_prev);
    } else if (f_prev * fe < 0.0) {
      double lo = e_prev, hi = e, f_lo = f_prev;
      while (hi - lo > 1e-11) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (f_lo * f_mid < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          f_lo = f_mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    e_prev = e;
    f_prev = fe;
  }
  return roots;
}

inline double inside_value(const Eigenstate& s, double z) {
  const double k = std::sqrt(s.energy.value);
  return s.parity == Parity::even ? s.B * std::cos(k * z)
                                  : s.C * std::sin(k * z);
}

inline double inside_derivative(const Eigenstate& s, double z) {
  const double k = std::sqrt(s.energy.value);
  return s.parity == Parity::even ? -s.B * k * std::sin(k * z)
                                  : s.C * k * std::cos(k * z);
}

}  // namespace detail

/// Piecewise assembly of an eigenstate on a uniform grid, normalized to
/// unit L2 norm. Throws if the continuity residual at z = +-l exceeds
/// 1e-8 of the maximum amplitude.
inline SampledWavefunction assemble_wavefunction(const Eigenstate& state_in,
                                                 double z_min, double z_max,
                                                 double h,
                                                 bool max_norm = false) {
  if (!(h > 0.0) || !(z_max > z_min)) {
    throw std::domain_error("assemble_wavefunction: bad grid");
  }
  Eigenstate s = state_in;
  const WeberPair p = weber_pair(s.energy);
  const double k = std::sqrt(s.energy.value);
  const double cl = std::cos(k * s.l);
  const double sl = std::sin(k * s.l);

  // Inside amplitude 1; F from a least-squares projection of the two
  // matching conditions, robust when either a0 or a1 vanishes.
  double v_in, d_in;
  if (s.parity == Parity::even) {
    s.B = 1.0;
    s.C = 0.0;
    v_in = cl;
    d_in = -k * sl;
  } else {
    s.B = 0.0;
    s.C = 1.0;
    v_in = sl;
    d_in = k * cl;
  }
  s.F = (v_in * p.a0 + d_in * p.a1) / (p.a0 * p.a0 + p.a1 * p.a1);
  s.A = (s.parity == Parity::even) ? s.F : -s.F;

  const long n = std::lround((z_max - z_min) / h);
  SampledWavefunction out;
  out.z.reserve(n + 1);
  out.psi.reserve(n + 1);
  SeriesPolicy policy;
  auto outer = [&](double y) { return eval_decaying(s.energy, y, policy); };
  for (long i = 0; i <= n; ++i) {
    const double z = z_min + static_cast<double>(i) * h;
    double v;
    if (z > s.l) {
      v = s.F * outer(z - s.l).psi;
    } else if (z < -s.l) {
      v = s.A * outer(-z - s.l).psi;
    } else {
      v = detail::inside_value(s, z);
    }
    out.z.push_back(z);
    out.psi.push_back(v);
  }

  double max_abs = 0.0;
  for (double v : out.psi) max_abs = std::max(max_abs, std::fabs(v));
  if (max_abs == 0.0) {
    throw std::runtime_error("assemble_wavefunction: null wavefunction");
  }

  // Continuity residual at z = +l (the -l side follows by parity).
  {
    const PsiValue o = outer(0.0);
    const double jump_v = detail::inside_value(s, s.l) - s.F * o.psi;
    const double jump_d = detail::inside_derivative(s, s.l) - s.F * o.dpsi;
    if (std::fabs(jump_v) > 1e-8 * max_abs ||
        std::fabs(jump_d) > 1e-8 * max_abs * std::max(1.0, k)) {
      throw std::runtime_error(
          "assemble_wavefunction: matching residual too large at E = " +
          std::to_string(s.energy.value));
    }
  }

  // Composite Simpson for the normalization integral.
  double integral = 0.0;
  const long m = (n % 2 == 0) ? n : n - 1;
  for (long i = 0; i + 2 <= m; i += 2) {
    const double f0 = out.psi[i] * out.psi[i];
    const double f1 = out.psi[i + 1] * out.psi[i + 1];
    const double f2 = out.psi[i + 2] * out.psi[i + 2];
    integral += h / 3.0 * (f0 + 4.0 * f1 + f2);
  }
  if (m != n) {
    integral += 0.5 * h *
                (out.psi[n - 1] * out.psi[n - 1] + out.psi[n] * out.psi[n]);
  }
  out.norm = integral;
  const double scale = max_norm ? 1.0 / max_abs : 1.0 / std::sqrt(integral);
  for (double& v : out.psi) v *= scale;
  return out;
}

inline int count_nodes(const SampledWavefunction& w) {
  double max_abs = 0.0;
  for (double v : w.psi) max_abs = std::max(max_abs, std::fabs(v));
  const double floor = 1e-9 * max_abs;
  int nodes = 0;
  double prev = 0.0;
  for (double v : w.psi) {
    if (std::fabs(v) < floor) continue;
    if (prev != 0.0 && prev * v < 0.0) ++nodes;
    prev = v;
  }
  return nodes;
}

/// The n_max+1 lowest bathtub eigenstates at half-width l, bracketed on an
/// E-grid and refined by bisection, with node counts verified against the
/// spectral index. The scan auto-refines once if a root was missed.
inline std::vector<Eigenstate> eigenvalues(double l, int n_max) {
  if (l < 0.0 || n_max < 0) {
    throw std::domain_error("eigenvalues: requires l >= 0, n_max >= 0");
  }
  const size_t wanted = static_cast<size_t>(n_max) + 1;
  double e_max = static_cast<double>(n_max) + 2.0;
  double step = 0.02;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<Eigenstate> states;
    for (Parity parity : {Parity::even, Parity::odd}) {
      for (double e : detail::scan_roots(parity, l, e_max, step)) {
        Eigenstate s;
        s.parity = parity;
        s.energy = Energy{e};
        s.l = l;
        states.push_back(s);
      }
    }
    std::sort(states.begin(), states.end(),
              [](const Eigenstate& a, const Eigenstate& b) {
                return a.energy.value < b.energy.value;
              });
    if (states.size() < wanted) {
      // Range extension first, then grid refinement.
      if (attempt == 0) {
        e_max += static_cast<double>(n_max) + 2.0;
      } else {
        step *= 0.5;
      }
      continue;
    }
    states.resize(wanted);
    bool ok = true;
    for (size_t i = 0; i < states.size(); ++i) {
      states[i].n = static_cast<int>(i);
      // Parity alternates starting even; a violation signals a missed root.
      const Parity expected = (i % 2 == 0) ? Parity::even : Parity::odd;
      if (states[i].parity != expected) {
        ok = false;
        break;
      }
    }
    if (ok) {
      // Node-count check on a coarse grid.
      const double span = l + 8.0;
      for (auto& s : states) {
        const SampledWavefunction w =
            assemble_wavefunction(s, -span, span, 0.02);
        if (count_nodes(w) != s.n) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return states;
    step *= 0.5;
  }
  throw std::runtime_error("eigenvalues: bracket scan failed at l = " +
                           std::to_string(l));
}

struct SpectrumRow {
  double l = 0.0;
  int n = 0;
  Parity parity = Parity::even;
  double energy = 0.0;
  double ratio_to_ground = 0.0;
};

inline std::vector<SpectrumRow> spectrum_sweep(const std::vector<double>& l_values,
                                               int n_max) {
  std::vector<SpectrumRow> rows;
  for (double l : l_values) {
    const auto states = eigenvalues(l, n_max);
    const double e0 = states.front().energy.value;
    for (const auto& s : states) {
      rows.push_back({l, s.n, s.parity, s.energy.value, s.energy.value / e0});
    }
  }
  return rows;
}

}  // namespace weberbox

#endif  // WEBERBOX_BATHTUB_HPP
