#ifndef WEBERBOX_HYDROGEN_HPP
#define WEBERBOX_HYDROGEN_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "weberbox/kahan.hpp"
#include "weberbox/special.hpp"

namespace weberbox {

/// c_{n+1} = c_n (-xi + 2L + 2 + 2n) / ((n+1)(2L+2+n)).
inline double radial_recurrence(double c_n, int n, int L, double xi) {
  if (n < 0 || L < 0) {
    throw std::domain_error("radial_recurrence: requires n, L >= 0");
  }
  const double nn = static_cast<double>(n);
  const double ll = static_cast<double>(L);
  return c_n * (-xi + 2.0 * ll + 2.0 + 2.0 * nn) /
         ((nn + 1.0) * (2.0 * ll + 2.0 + nn));
}

/// True when xi = 2(N + L + 1) for some integer N >= 0, i.e. the series
/// truncates to a polynomial.
inline bool is_terminating_xi(double xi, int L, double tol = 1e-9) {
  const double N = 0.5 * xi - L - 1.0;
  return N > -tol && std::fabs(N - std::nearbyint(N)) < tol;
}

/// Closed form c_n = c0 (2^n/n!) Gamma(2L+2)/Gamma(-xi/2+L+1) *
/// Gamma(-xi/2+L+n+1)/Gamma(2L+n+2), in log space with sign tracking.
/// Falls back to the recurrence at terminating xi where the formula is 0/0.
inline double radial_coeff_closed(int n, int L, double xi, double c0) {
  if (n < 0 || L < 0) {
    throw std::domain_error("radial_coeff_closed: requires n, L >= 0");
  }
  if (n == 0) return c0;
  const double base = -0.5 * xi + L + 1.0;
  if (detail::near_nonpositive_integer(base, 1e-8)) {
    double c = c0;
    for (int m = 0; m < n; ++m) c = radial_recurrence(c, m, L, xi);
    return c;
  }
  int s_base = 1, s_top = 1;
  const double lg_base = log_abs_gamma(base, &s_base);
  const double lg_top = log_abs_gamma(base + n, &s_top);
  const double lg = n * std::log(2.0) - std::lgamma(n + 1.0) +
                    std::lgamma(2.0 * L + 2.0) - lg_base + lg_top -
                    std::lgamma(2.0 * L + n + 2.0);
  return c0 * s_base * s_top * std::exp(lg);
}

struct RadialAsymptotic {
  double series_value = 0.0;  // F(rho) = sum c_n rho^n
  double predicted = 0.0;     // c0 e^{2 rho} (2 rho)^{-xi/2 - L - 1}
  double ratio = 0.0;
};

/// Compares the summed series F(rho) against the corrected asymptotic law.
/// Summation runs in log space (peak-plus-width truncation, peak at
/// n = 2 rho) so rho of a few hundred stays representable.
inline RadialAsymptotic radial_asymptotic(double rho, int L, double xi,
                                          double c0 = 1.0) {
  if (!(rho >= 1.0)) {
    throw std::domain_error("radial_asymptotic: requires rho >= 1");
  }
  if (is_terminating_xi(xi, L)) {
    throw std::domain_error(
        "radial_asymptotic: asymptotic law inapplicable at terminating xi");
  }
  const long n_max = static_cast<long>(
      std::ceil(2.0 * rho + 40.0 * std::sqrt(2.0 * rho) + 100.0));

  // Running log|term| and sign via the recurrence factor.
  std::vector<double> log_terms;
  std::vector<int> signs;
  log_terms.reserve(n_max + 1);
  signs.reserve(n_max + 1);
  double lt = std::log(std::fabs(c0));
  int sign = c0 < 0.0 ? -1 : 1;
  log_terms.push_back(lt);
  signs.push_back(sign);
  for (long n = 0; n < n_max; ++n) {
    const double f = radial_recurrence(1.0, static_cast<int>(n), L, xi);
    lt += std::log(std::fabs(f)) + std::log(rho);
    if (f < 0.0) sign = -sign;
    log_terms.push_back(lt);
    signs.push_back(sign);
  }
  double shift = log_terms.front();
  for (double v : log_terms) shift = std::max(shift, v);
  KahanAccumulator acc;
  for (size_t i = 0; i < log_terms.size(); ++i) {
    acc.add(signs[i] * std::exp(log_terms[i] - shift));
  }
  const double sum = acc.value();
  const double log_abs_sum = shift + std::log(std::fabs(sum));
  const double log_pred =
      std::log(std::fabs(c0)) + 2.0 * rho +
      (-0.5 * xi - L - 1.0) * std::log(2.0 * rho);
  RadialAsymptotic out;
  const double s = (sum < 0.0 ? -1.0 : 1.0) * (c0 < 0.0 ? -1.0 : 1.0);
  out.series_value = (sum < 0.0 ? -1.0 : 1.0) * std::exp(log_abs_sum);
  out.predicted = (c0 < 0.0 ? -1.0 : 1.0) * std::exp(log_pred);
  out.ratio = s * std::exp(log_abs_sum - log_pred);
  return out;
}

/// Terminating xi for quantum numbers (L, N); asserts that the recurrence
/// really drives c_{N+1} to zero there.
inline double quantization_xi(int L, int N) {
  if (L < 0 || N < 0) {
    throw std::domain_error("quantization_xi: requires L, N >= 0");
  }
  const double xi = 2.0 * (N + L + 1.0);
  double c = 1.0;
  for (int n = 0; n <= N; ++n) c = radial_recurrence(c, n, L, xi);
  if (c != 0.0) {
    throw std::logic_error("quantization_xi: recurrence did not terminate");
  }
  return xi;
}

}  // namespace weberbox

#endif  // WEBERBOX_HYDROGEN_HPP
