#ifndef WEBERBOX_SPECIAL_HPP
#define WEBERBOX_SPECIAL_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace weberbox {

struct GammaPoleError : std::domain_error {
  explicit GammaPoleError(double x)
      : std::domain_error("gamma pole at x = " + std::to_string(x)) {}
};

namespace detail {

inline void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(who) + ": argument must be finite");
  }
}

inline bool near_nonpositive_integer(double x, double tol) {
  if (x > 0.5) return false;
  return std::fabs(x - std::nearbyint(x)) < tol;
}

// sin(pi*x) with the argument reduced before multiplying by pi, so the
// result stays accurate near integers where naive sin(pi*x) loses all
// relative precision.
inline double sin_pi(double x) {
  const double n = std::nearbyint(x);
  const double d = x - n;
  const double s = std::sin(M_PI * d);
  return (static_cast<long long>(n) % 2 == 0) ? s : -s;
}

}  // namespace detail

/// Gamma function on the real line. Poles at the non-positive integers.
inline double gamma_fn(double x) {
  detail::require_finite(x, "gamma_fn");
  if (x <= 0.0 && x == std::nearbyint(x)) throw GammaPoleError(x);
  return std::tgamma(x);
}

/// log|Gamma(x)| together with the sign of Gamma(x).
inline double log_abs_gamma(double x, int* sign = nullptr) {
  detail::require_finite(x, "log_abs_gamma");
  if (x <= 0.0 && x == std::nearbyint(x)) throw GammaPoleError(x);
  if (sign != nullptr) {
    if (x > 0.0) {
      *sign = 1;
    } else {
      // Gamma alternates sign between consecutive negative integers:
      // negative on (-1,0), positive on (-2,-1), ...
      const long long f = static_cast<long long>(std::floor(x));
      *sign = (f % 2 == 0) ? 1 : -1;
    }
  }
  return std::lgamma(x);
}

/// 1/Gamma(x). Entire: returns exactly 0 at the non-positive integers
/// (within 1e-12 of one), finite everywhere else.
inline double reciprocal_gamma(double x) {
  detail::require_finite(x, "reciprocal_gamma");
  if (detail::near_nonpositive_integer(x, 1e-12)) return 0.0;
  if (x >= 0.5) {
    if (x > 170.0) {
      // Gamma overflows a double here; 1/Gamma underflows to 0.
      return std::exp(-std::lgamma(x));
    }
    return 1.0 / std::tgamma(x);
  }
  // Reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x)/pi, well conditioned
  // through the poles.
  const double y = 1.0 - x;
  if (y > 170.0) {
    const double s = detail::sin_pi(x);
    const double m = std::lgamma(y) + std::log(std::fabs(s) / M_PI);
    double r = std::exp(m);
    return (s < 0.0) ? -r : r;
  }
  return std::tgamma(y) * detail::sin_pi(x) / M_PI;
}

/// Log of Stirling's approximation to Gamma(x+1): the usable form at large
/// x, where the value itself exceeds any double (Gamma(10001) ~ 1e35659).
inline double log_stirling_gamma(double x) {
  detail::require_finite(x, "log_stirling_gamma");
  if (x <= 0.0) throw std::domain_error("log_stirling_gamma: requires x > 0");
  return x * std::log(x) - x + 0.5 * std::log(2.0 * M_PI * x);
}

/// Stirling's approximation to Gamma(x+1): x^x e^{-x} sqrt(2 pi x),
/// assembled in log space. Overflows to +inf only where the true value
/// exceeds the double range.
inline double stirling_gamma(double x) {
  return std::exp(log_stirling_gamma(x));
}

/// Large-n approximation Gamma(n+b)/Gamma(n+c) ~ n^{b-c}. Approximate by
/// construction; accuracy improves like 1/n.
inline double gamma_ratio_large_n(double n, double b, double c) {
  detail::require_finite(n, "gamma_ratio_large_n");
  detail::require_finite(b, "gamma_ratio_large_n");
  detail::require_finite(c, "gamma_ratio_large_n");
  if (n < 1.0) throw std::domain_error("gamma_ratio_large_n: requires n >= 1");
  return std::pow(n, b - c);
}

}  // namespace weberbox

#endif  // WEBERBOX_SPECIAL_HPP
