#ifndef WEBERBOX_NUMEROV_HPP
#define WEBERBOX_NUMEROV_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "weberbox/weber.hpp"

namespace weberbox {

/// Uniform integration grid; (end - start)/h must be an integer >= 10.
struct GridSpec {
  double start = 0.0;
  double end = 0.0;
  double h = 0.0;

  [[nodiscard]] long point_count() const {
    if (!(h > 0.0) || !(end > start)) {
      throw std::domain_error("GridSpec: requires end > start and h > 0");
    }
    const double steps = (end - start) / h;
    const long n = std::lround(steps);
    if (std::fabs(steps - static_cast<double>(n)) > 1e-6 || n < 10) {
      throw std::domain_error(
          "GridSpec: (end - start)/h must be an integer >= 10");
    }
    return n + 1;
  }

  [[nodiscard]] double z(long i) const { return start + static_cast<double>(i) * h; }
};

enum class Direction { left, right };

/// Grid values in ascending-z order; the true solution is
/// values[i] * exp(log_scale) after any overflow rescaling.
struct IntegrationResult {
  std::vector<double> values;
  double log_scale = 0.0;
};

struct ShootResult {
  Energy energy;
  double mismatch = 0.0;
  bool converged = false;
};

enum class Parity { even, odd };

/// Fourth-order Numerov recursion for psi'' = (V(z) - E) psi. For
/// Direction::right the seed holds (psi(z0), psi(z0+h)); for Direction::left
/// it holds (psi(z_end), psi(z_end - h)) and the integration runs inward.
/// Linear in the seed up to the rescaling bookkeeping.
inline IntegrationResult integrate(const std::function<double(double)>& potential,
                                   Energy energy, const GridSpec& grid,
                                   Direction direction,
                                   std::pair<double, double> seed) {
  const long n = grid.point_count();
  if (seed.first == 0.0 && seed.second == 0.0) {
    throw std::domain_error("integrate: seed must be nonzero");
  }
  std::vector<double> psi(static_cast<size_t>(n));
  std::vector<double> g(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) g[i] = potential(grid.z(i)) - energy.value;

  const long double h2_12 =
      static_cast<long double>(grid.h) * grid.h / 12.0L;
  double log_scale = 0.0;
  constexpr double kRescaleAt = 1e250;

  // The recursion runs in long double registers; re-reading rounded array
  // values each step lets rounding error random-walk above 1e-10 on grids
  // of a few thousand points.
  long double p_prev2 = 0.0L, p_prev = 0.0L;
  auto step = [&](long i_prev2, long i_prev, long i_next) {
    const long double num =
        2.0L * p_prev * (1.0L + 5.0L * h2_12 * g[i_prev]) -
        p_prev2 * (1.0L - h2_12 * g[i_prev2]);
    long double p_next = num / (1.0L - h2_12 * g[i_next]);
    if (std::fabs(static_cast<double>(p_next)) > kRescaleAt) {
      const long double f = p_next < 0.0L ? -p_next : p_next;
      for (auto& v : psi) v = static_cast<double>(v / f);
      p_prev /= f;
      p_next /= f;
      log_scale += std::log(static_cast<double>(f));
    }
    psi[i_next] = static_cast<double>(p_next);
    p_prev2 = p_prev;
    p_prev = p_next;
  };

  if (direction == Direction::right) {
    psi[0] = seed.first;
    psi[1] = seed.second;
    p_prev2 = seed.first;
    p_prev = seed.second;
    for (long i = 2; i < n; ++i) step(i - 2, i - 1, i);
  } else {
    psi[n - 1] = seed.first;
    psi[n - 2] = seed.second;
    p_prev2 = seed.first;
    p_prev = seed.second;
    for (long i = n - 3; i >= 0; --i) step(i + 2, i + 1, i);
  }
  return {std::move(psi), log_scale};
}

namespace detail {

// Inward integration of a symmetric problem from z_max down to -h; returns
// the normalized mismatch at z = 0: psi'(0) for even states, psi(0) for odd.
// The grid includes one point below zero so psi'(0) is a centered difference.
inline double symmetric_mismatch(const std::function<double(double)>& potential,
                                 Energy energy, Parity parity, double l,
                                 double z_max, double h) {
  const long n_steps = std::lround((z_max + h) / h);
  GridSpec grid{-h, -h + static_cast<double>(n_steps) * h, h};
  const long n = grid.point_count();
  // Asymptotic decaying seed psi ~ y^{E-1/2} e^{-y^2/4} with y = z - l.
  const double sigma = energy.order();
  auto seed_at = [&](double z) {
    const double y = z - l;
    return std::exp(sigma * std::log(y) - 0.25 * y * y);
  };
  const IntegrationResult res =
      integrate(potential, energy, grid, Direction::left,
                {seed_at(grid.z(n - 1)), seed_at(grid.z(n - 2))});
  const double psi0 = res.values[1];
  const double dpsi0 = (res.values[2] - res.values[0]) / (2.0 * h);
  const double norm = std::hypot(psi0, dpsi0);
  if (norm == 0.0) return 0.0;
  return (parity == Parity::even ? dpsi0 : psi0) / norm;
}

}  // namespace detail

/// Bisection on the log-derivative mismatch at z = 0 of a symmetric
/// potential. The mismatch must change sign over the bracket.
inline ShootResult shoot_eigenvalue(const std::function<double(double)>& potential,
                                    Parity parity, double l,
                                    std::pair<double, double> bracket,
                                    double h = 1e-3, double z_pad = 12.0) {
  double lo = bracket.first;
  double hi = bracket.second;
  const double z_max_for = [&](double e) {
    return l + std::max(z_pad, 2.0 * std::sqrt(2.0 * std::max(e, 0.0)) + 8.0);
  }(hi);
  auto mm = [&](double e) {
    return detail::symmetric_mismatch(potential, Energy{e}, parity, l,
                                      z_max_for, h);
  };
  double f_lo = mm(lo);
  double f_hi = mm(hi);
  if (f_lo == 0.0) return {Energy{lo}, 0.0, true};
  if (f_hi == 0.0) return {Energy{hi}, 0.0, true};
  if (f_lo * f_hi > 0.0) {
    throw std::domain_error("shoot_eigenvalue: no sign change on bracket");
  }
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = mm(mid);
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
  const double e = 0.5 * (lo + hi);
  const double mismatch = mm(e);
  return {Energy{e}, mismatch, std::fabs(mismatch) < 1e-9 || hi - lo <= 1e-11};
}

/// Bathtub potential V(z) = 0 on |z| < l, quarter-square walls outside.
inline std::function<double(double)> bathtub_potential(double l) {
  return [l](double z) {
    const double a = std::fabs(z);
    if (a <= l) return 0.0;
    const double y = a - l;
    return 0.25 * y * y;
  };
}

/// Independent bathtub eigenvalues via Numerov shooting: scans an E-grid for
/// mismatch sign changes, then bisects. Returns the lowest n_max+1 levels.
inline std::vector<double> bathtub_numerov_eigenvalues(double l, int n_max,
                                                       double h = 1e-3) {
  const auto pot = bathtub_potential(l);
  std::vector<double> levels;
  const double e_max = static_cast<double>(n_max) + 2.0;
  const double step = 0.02;
  for (Parity parity : {Parity::even, Parity::odd}) {
    const double z_max = l + std::max(12.0, 2.0 * std::sqrt(2.0 * e_max) + 8.0);
    auto mm = [&](double e) {
      return detail::symmetric_mismatch(pot, Energy{e}, parity, l, z_max, h);
    };
    double e_prev = 1e-6;
    double f_prev = mm(e_prev);
    for (double e = step; e <= e_max + 1e-12; e += step) {
      const double f = mm(e);
      if (f_prev == 0.0) {
        levels.push_back(e_prev);
      } else if (f_prev * f < 0.0) {
        double lo = e_prev, hi = e, f_lo = f_prev;
        while (hi - lo > 1e-11) {
          const double mid = 0.5 * (lo + hi);
          const double f_mid = mm(mid);
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
        levels.push_back(0.5 * (lo + hi));
      }
      e_prev = e;
      f_prev = f;
    }
  }
  std::sort(levels.begin(), levels.end());
  if (levels.size() > static_cast<size_t>(n_max) + 1) {
    levels.resize(static_cast<size_t>(n_max) + 1);
  }
  return levels;
}

/// Bound levels of the piecewise Coulomb potential V(r) = -k/R for r < R,
/// -k/r for r > R, for angular momentum L, in units where the radial
/// equation reads u'' + (eps + 2k/r_eff - L(L+1)/r^2) u = 0 and the pure
/// Coulomb (R = 0) levels are eps_n = -(k/(N+L+1))^2. Eigenvalues located by
/// bisection on the interior node count (Sturm oscillation).
inline std::vector<double> coulomb_piecewise_levels(double k, double R, int L,
                                                    int n_levels) {
  if (!(k > 0.0) || R < 0.0 || L < 0 || n_levels < 1) {
    throw std::domain_error("coulomb_piecewise_levels: bad arguments");
  }
  const int n_top = n_levels + L;  // largest principal number requested
  const double r_max = (25.0 * n_top + 3.0 * n_top * n_top) / k;
  const double h = 0.002 / k;
  const long n = std::lround(r_max / h);

  auto v_eff = [&](double r) {
    return (r < R) ? -k / R : -k / r;
  };
  auto count_nodes = [&](double eps) {
    // Outward Numerov with the regular r^{L+1} seed; counts sign changes.
    const double h2_12 = h * h / 12.0;
    auto g = [&](double r) {
      return static_cast<double>(L) * (L + 1) / (r * r) + 2.0 * v_eff(r) - eps;
    };
    auto seed = [&](double r) {
      // Regular solution r^{L+1}(1 - k r/(L+1)) near a Coulomb origin; the
      // linear term drops for a flat core.
      const double base = std::pow(r, L + 1);
      if (R > 2.0 * h) return base;
      return base * (1.0 - k * r / (L + 1));
    };
    double um2 = seed(h);
    double um1 = seed(2.0 * h);
    double gm2 = g(h);
    double gm1 = g(2.0 * h);
    int nodes = 0;
    for (long i = 3; i <= n; ++i) {
      const double r = static_cast<double>(i) * h;
      const double gi = g(r);
      double ui = (2.0 * um1 * (1.0 + 5.0 * h2_12 * gm1) -
                   um2 * (1.0 - h2_12 * gm2)) /
                  (1.0 - h2_12 * gi);
      if (ui * um1 < 0.0) ++nodes;
      if (std::fabs(ui) > 1e250) {
        um1 /= 1e250;
        ui /= 1e250;
      }
      um2 = um1;
      gm2 = gm1;
      um1 = ui;
      gm1 = gi;
    }
    return nodes;
  };

  std::vector<double> levels;
  const double lo_floor = -1.1 * k * k / ((L + 1.0) * (L + 1.0)) - 0.1 * k * k;
  for (int idx = 0; idx < n_levels; ++idx) {
    double lo = levels.empty() ? lo_floor : levels.back();
    double hi = -1e-7 * k * k;
    if (count_nodes(hi) < idx + 1) break;  // spectrum exhausted at this r_max
    while (hi - lo > 1e-12 * std::max(1.0, std::fabs(lo))) {
      const double mid = 0.5 * (lo + hi);
      if (count_nodes(mid) >= idx + 1) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    levels.push_back(0.5 * (lo + hi));
  }
  return levels;
}

}  // namespace weberbox

#endif  // WEBERBOX_NUMEROV_HPP
