#ifndef WEBERBOX_WEBER_HPP
#define WEBERBOX_WEBER_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "weberbox/kahan.hpp"
#include "weberbox/special.hpp"

namespace weberbox {

/// Dimensionless energy E = E_phys/(hbar omega). The associated Weber order
/// is E - 1/2.
struct Energy {
  double value = 0.0;
  [[nodiscard]] double order() const { return value - 0.5; }
};

/// Canonical seeds of the even/odd power series defining the decaying
/// solution. Both components are built from the reciprocal Gamma function,
/// which is entire, so the pair is finite at every energy including the
/// terminating ones where the ratio a1/a0 degenerates to 0 or infinity.
struct WeberPair {
  double a0 = 0.0;
  double a1 = 0.0;
};

/// Projective value of the cancellation ratio a* = a1/a0.
struct AStar {
  double value = 0.0;
  bool infinite = false;
};

struct SeriesPolicy {
  double term_tol = 1e-16;      // relative term cutoff
  int consecutive_small = 3;    // terms below cutoff before stopping
  int max_terms = 20000;
  double y_switch = 6.0;        // hand over to the asymptotic form here
  double max_cancellation = 1e12;  // largest tolerated max_term/|sum|
};

struct PrecisionLossError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PsiValue {
  double psi = 0.0;
  double dpsi = 0.0;
};

struct SeriesCoefficients {
  Energy energy;
  std::vector<double> even;  // a_0, a_2, a_4, ...
  std::vector<double> odd;   // a_1, a_3, a_5, ...
  int count = 0;
};

/// a_{n+2} = a_n (n - E + 1/2) / ((n+1)(n+2)).
inline double recurrence_step(double a_n, int n, Energy energy) {
  if (n < 0) throw std::domain_error("recurrence_step: n must be >= 0");
  const double nn = static_cast<double>(n);
  return a_n * (nn - energy.value + 0.5) / ((nn + 1.0) * (nn + 2.0));
}

inline WeberPair weber_pair(Energy energy) {
  detail::require_finite(energy.value, "weber_pair");
  return {reciprocal_gamma(0.75 - 0.5 * energy.value),
          -std::sqrt(2.0) * reciprocal_gamma(0.25 - 0.5 * energy.value)};
}

/// a* = -sqrt(2) Gamma(-E/2+3/4) / Gamma(-E/2+1/4) in projective form:
/// 0 at the even harmonic eigenvalues, infinite at the odd ones.
inline AStar a_star(Energy energy) {
  const WeberPair p = weber_pair(energy);
  if (p.a0 == 0.0) return {0.0, true};
  return {p.a1 / p.a0, false};
}

namespace detail {

// Gamma-product coefficient a_{2n} (shift = 1/4) or a_{2n+1} (shift = 3/4),
// evaluated in log space with sign tracking. Falls back to the iterated
// recurrence when the reference Gamma sits on a pole (terminating energy),
// where the closed form is 0/0.
inline double coeff_closed(int n, Energy energy, double seed, double shift,
                           double denom_shift, int parity) {
  if (n < 0) throw std::domain_error("coeff_closed: n must be >= 0");
  if (n == 0) return seed;
  const double base = -0.5 * energy.value + shift;
  if (near_nonpositive_integer(base, 1e-8)) {
    double a = seed;
    for (int k = 0; k < n; ++k) a = recurrence_step(a, 2 * k + parity, energy);
    return a;
  }
  int s_base = 1, s_top = 1;
  const double lg_base = log_abs_gamma(base, &s_base);
  const double lg_top = log_abs_gamma(base + n, &s_top);
  const double lg = -n * std::log(2.0) - std::lgamma(n + 1.0) +
                    std::lgamma(denom_shift) - lg_base + lg_top -
                    std::lgamma(denom_shift + n);
  return seed * s_top * s_base * std::exp(lg);
}

}  // namespace detail

/// a_{2n} from the Gamma closed form (shifts 1/4, 1/2).
inline double coeff_even_closed(int n, Energy energy, double a0) {
  return detail::coeff_closed(n, energy, a0, 0.25, 0.5, 0);
}

/// a_{2n+1} from the Gamma closed form (shifts 3/4, 3/2).
inline double coeff_odd_closed(int n, Energy energy, double a1) {
  return detail::coeff_closed(n, energy, a1, 0.75, 1.5, 1);
}

inline SeriesCoefficients series_coefficients(Energy energy, int count) {
  SeriesCoefficients out;
  out.energy = energy;
  out.count = count;
  const WeberPair p = weber_pair(energy);
  double ae = p.a0;
  double ao = p.a1;
  for (int k = 0; k < count; ++k) {
    out.even.push_back(ae);
    out.odd.push_back(ao);
    ae = recurrence_step(ae, 2 * k, energy);
    ao = recurrence_step(ao, 2 * k + 1, energy);
  }
  return out;
}

enum class Branch { decaying, growing };

struct Exponents {
  double beta = 0.0;
  double gamma_exp = 0.0;
};

inline Exponents asymptotic_exponents(Energy energy, Branch branch) {
  if (branch == Branch::decaying) return {-0.25, energy.value - 0.5};
  return {0.25, -energy.value - 0.5};
}

struct Prefactors {
  double even_pref = 0.0;
  double odd_pref = 0.0;
};

/// Constants multiplying [y^2/2]^{-E/2-1/4} e^{y^2/2} in the large-y growth
/// of the raw even/odd series. Zero at the corresponding terminating
/// energies, where the series has no growing part.
inline Prefactors series_asymptotic_prefactors(Energy energy) {
  const double g_half = std::sqrt(M_PI);           // Gamma(1/2)
  const double g_three_half = 0.5 * std::sqrt(M_PI);  // Gamma(3/2)
  return {g_half * reciprocal_gamma(-0.5 * energy.value + 0.25),
          std::sqrt(2.0) * g_three_half *
              reciprocal_gamma(-0.5 * energy.value + 0.75)};
}

/// Raw sums of the two series and their term-wise derivatives at y,
/// together with the largest term magnitude seen (cancellation estimate).
struct SeriesSums {
  double even = 0.0;
  double odd = 0.0;
  double d_even = 0.0;
  double d_odd = 0.0;
  double max_term_even = 0.0;
  double max_term_odd = 0.0;
  int terms = 0;
};

inline SeriesSums raw_series(Energy energy, double y,
                             const SeriesPolicy& policy = {}) {
  SeriesSums out;
  KahanAccumulator se, so, dse, dso;
  // Whole terms carried through their term-to-term ratios; keeping the
  // coefficient and the power y^{2k} separate would underflow/overflow long
  // before their product does.
  const double y2 = y * y;
  double te = 1.0;      // a_{2k} y^{2k} with unit seed
  double to = y;        // a_{2k+1} y^{2k+1} with unit seed
  double de = 0.0;      // 2k a_{2k} y^{2k-1}
  double dodd = 1.0;    // (2k+1) a_{2k+1} y^{2k}
  int small_streak = 0;
  int k = 0;
  for (; k < policy.max_terms; ++k) {
    se.add(te);
    so.add(to);
    dse.add(de);
    dso.add(dodd);
    out.max_term_even = std::max(out.max_term_even, std::fabs(te));
    out.max_term_odd = std::max(out.max_term_odd, std::fabs(to));
    const double scale =
        1.0 + std::max(std::fabs(se.value()), std::fabs(so.value()));
    if (std::fabs(te) < policy.term_tol * scale &&
        std::fabs(to) < policy.term_tol * scale) {
      if (++small_streak >= policy.consecutive_small) break;
    } else {
      small_streak = 0;
    }
    const double kk = static_cast<double>(k);
    const double re =
        (2.0 * kk - energy.value + 0.5) / ((2.0 * kk + 1.0) * (2.0 * kk + 2.0));
    const double ro =
        (2.0 * kk + 1.0 - energy.value + 0.5) /
        ((2.0 * kk + 2.0) * (2.0 * kk + 3.0));
    // de_{k+1} = 2(k+1) a_{2k+2} y^{2k+1}: from te when leaving k = 0,
    // otherwise by ratio.
    de = (k == 0) ? 2.0 * re * te * y
                  : de * ((kk + 1.0) / kk) * re * y2;
    dodd = dodd * ((2.0 * kk + 3.0) / (2.0 * kk + 1.0)) * ro * y2;
    te *= re * y2;
    to *= ro * y2;
  }
  out.even = se.value();
  out.odd = so.value();
  out.d_even = dse.value();
  out.d_odd = dso.value();
  out.terms = k + 1;
  return out;
}

/// The decaying solution psi(y) = e^{-y^2/4} [a0 S_even + a1 S_odd] and its
/// y-derivative. Inside y_switch the series is summed with compensated
/// accumulation and a term-wise differentiated derivative; beyond it the
/// leading asymptotic form C y^{E-1/2} e^{-y^2/4} is used, with C fixed by
/// continuity at y_switch.
inline PsiValue eval_decaying(Energy energy, double y,
                              const SeriesPolicy& policy = {}) {
  if (y < 0.0 || !std::isfinite(y)) {
    throw std::domain_error("eval_decaying: requires y >= 0");
  }
  const WeberPair pair = weber_pair(energy);
  const double ys = std::min(y, policy.y_switch);

  const SeriesSums s = raw_series(energy, ys, policy);
  const double bracket = pair.a0 * s.even + pair.a1 * s.odd;
  const double dbracket = pair.a0 * s.d_even + pair.a1 * s.d_odd;
  const double largest_term = std::max(std::fabs(pair.a0) * s.max_term_even,
                                       std::fabs(pair.a1) * s.max_term_odd);
  // The solution scale, not the pointwise value: bracket alone vanishes at
  // wavefunction nodes, which is not a loss of precision.
  const double scale = std::hypot(bracket, dbracket);
  if (largest_term > policy.max_cancellation * std::max(scale, 1e-300)) {
    throw PrecisionLossError(
        "eval_decaying: series cancellation exceeds the precision budget at "
        "y = " + std::to_string(ys));
  }
  const double env = std::exp(-0.25 * ys * ys);
  PsiValue at_switch{env * bracket, env * (dbracket - 0.5 * ys * bracket)};
  if (y <= policy.y_switch) return at_switch;

  // Leading decaying form matched by continuity at y_switch.
  const double sigma = energy.order();
  const double log_shape = [&](double t) {
    return sigma * std::log(t) - 0.25 * t * t;
  }(y) - (sigma * std::log(policy.y_switch) -
          0.25 * policy.y_switch * policy.y_switch);
  const double psi = at_switch.psi * std::exp(log_shape);
  return {psi, psi * (sigma / y - 0.5 * y)};
}

}  // namespace weberbox

#endif  // WEBERBOX_WEBER_HPP
