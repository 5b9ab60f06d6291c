#ifndef WEBERBOX_ASYMPTOTIC_HPP
#define WEBERBOX_ASYMPTOTIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "weberbox/kahan.hpp"

namespace weberbox {

struct AsymptoticReport {
  double omega = 0.0;
  double r = 0.0;
  double normalized_ratio = 0.0;  // omega^r e^{-omega} S(omega)
  long terms_used = 0;
};

/// Summation range [n1, n2] with n2 < 0 meaning "infinity" (realized as the
/// Gaussian-peak truncation omega + 40 sqrt(omega)).
struct PartialSumSpec {
  long n1 = 1;
  long n2 = kInfinity;
  static constexpr long kInfinity = -1;
};

/// Upper limit beyond which the Poisson-like terms are below e^{-800} of
/// the total: the peak sits at n = omega with width sqrt(omega).
inline long effective_infinity(double omega) {
  return static_cast<long>(std::ceil(omega + 40.0 * std::sqrt(omega))) + 1;
}

namespace detail {

// log of (omega/n)^r omega^n / n!
inline double log_t_term(double omega, double r, long n) {
  const double dn = static_cast<double>(n);
  return dn * std::log(omega) - std::lgamma(dn + 1.0) +
         r * (std::log(omega) - std::log(dn));
}

// e^{-omega} sum_{n1}^{n2} (omega/n)^r omega^n / n!, summed in log space
// with a max-shift so that omega up to 1e4 cannot overflow.
inline double log_space_t(double omega, double r, long n1, long n2,
                          long* terms_used = nullptr) {
  if (n1 < 1 || n2 < n1) {
    if (terms_used != nullptr) *terms_used = 0;
    return 0.0;
  }
  const long peak = std::clamp(static_cast<long>(std::llround(omega)), n1, n2);
  const double shift = log_t_term(omega, r, peak);
  KahanAccumulator acc;
  long used = 0;
  int small_streak = 0;
  for (long n = n1; n <= n2; ++n) {
    const double t = std::exp(log_t_term(omega, r, n) - shift);
    acc.add(t);
    ++used;
    if (n > peak && t < 1e-18 * acc.value()) {
      if (++small_streak >= 3) break;
    } else {
      small_streak = 0;
    }
  }
  if (terms_used != nullptr) *terms_used = used;
  return std::exp(shift - omega) * acc.value();
}

inline void require_positive_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::domain_error("requires omega > 0");
  }
}

}  // namespace detail

struct PeakComparison {
  double exact = 0.0;     // omega^n / n!
  double gaussian = 0.0;  // e^omega / sqrt(2 pi omega) e^{-(n-omega)^2/(2 omega)}
  bool log_scale = false; // both values are logs when e^omega would overflow
};

/// Compares the exact coefficient c_n(omega) = omega^n/n! with its Gaussian
/// peak approximation.
inline PeakComparison coefficient_peak(double omega, long n) {
  detail::require_positive_omega(omega);
  if (omega < 10.0 || n < 1) {
    throw std::domain_error("coefficient_peak: requires omega >= 10, n >= 1");
  }
  const double dn = static_cast<double>(n);
  const double log_exact = dn * std::log(omega) - std::lgamma(dn + 1.0);
  const double log_gauss = omega - 0.5 * std::log(2.0 * M_PI * omega) -
                           (dn - omega) * (dn - omega) / (2.0 * omega);
  if (omega > 700.0 || log_exact > 700.0) {
    return {log_exact, log_gauss, true};
  }
  return {std::exp(log_exact), std::exp(log_gauss), false};
}

/// S(omega) = sum_{n>=1} n^{-r} omega^n / n!, reported in the normalized
/// form omega^r e^{-omega} S(omega).
inline AsymptoticReport series_s(double omega, double r) {
  detail::require_positive_omega(omega);
  const long cap = 1000000;
  const long n2 = std::min(effective_infinity(omega), cap);
  long used = 0;
  const double ratio = detail::log_space_t(omega, r, 1, n2, &used);
  if (used >= cap) {
    throw std::runtime_error("series_s: term cap exceeded");
  }
  return {omega, r, ratio, used};
}

/// T(omega, n1, n2) = e^{-omega} sum (omega/n)^r omega^n / n!.
inline double partial_sum_t(double omega, double r, PartialSumSpec spec) {
  detail::require_positive_omega(omega);
  if (spec.n1 < 1) throw std::domain_error("partial_sum_t: requires n1 >= 1");
  const long n2 =
      (spec.n2 == PartialSumSpec::kInfinity) ? effective_infinity(omega)
                                             : spec.n2;
  return detail::log_space_t(omega, r, spec.n1, n2);
}

struct SandwichResult {
  double lower = 0.0;
  double upper = 0.0;
  double head_vanishes = 0.0;  // T(omega, 1, [lambda omega])
  double tail_vanishes = 0.0;  // e^{-omega} sum_{[sigma omega]+1}^inf omega^n/n!
  double t_full = 0.0;         // T(omega, 1, inf)
};

/// Finite-omega form of the appendix sandwich: the returned bounds satisfy
/// lower <= T(omega,1,inf) <= upper for every omega, not just asymptotically.
inline SandwichResult sandwich_check(double omega, double r, double lambda,
                                     double sigma) {
  detail::require_positive_omega(omega);
  if (!(lambda > 0.0 && lambda < 1.0) || !(sigma > 1.0)) {
    throw std::domain_error("sandwich_check: requires 0 < lambda < 1 < sigma");
  }
  if (!(r > 0.0)) {
    // The appendix derivation assumes r > 0; the bounds below do not hold
    // otherwise.
    throw std::domain_error("sandwich_check: requires r > 0");
  }
  const long n_lambda = static_cast<long>(std::floor(lambda * omega));
  const long n_sigma = static_cast<long>(std::floor(sigma * omega));
  const long n_inf = effective_infinity(omega);

  SandwichResult out;
  out.head_vanishes = detail::log_space_t(omega, r, 1, n_lambda);
  out.tail_vanishes = detail::log_space_t(omega, 0.0, n_sigma + 1, n_inf);
  out.lower = std::pow(1.0 / sigma, r) *
              detail::log_space_t(omega, 0.0, 1, n_sigma);
  out.upper = out.head_vanishes + std::pow(1.0 / lambda, r);
  out.t_full = detail::log_space_t(omega, r, 1, n_inf);
  if (!(out.lower <= out.t_full && out.t_full <= out.upper)) {
    throw std::logic_error("sandwich_check: bounds violated (summation bug)");
  }
  return out;
}

}  // namespace weberbox

#endif  // WEBERBOX_ASYMPTOTIC_HPP
