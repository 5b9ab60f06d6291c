#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "weberbox/bathtub.hpp"

using namespace weberbox;

TEST_CASE("root functions at l = 0") {
  // At zero half-width the even/odd conditions reduce to a1 = 0 and a0 = 0.
  CHECK(root_fn_even(Energy{0.5}, 0.0) == Catch::Approx(0.0).margin(1e-14));
  CHECK(root_fn_even(Energy{2.5}, 0.0) == Catch::Approx(0.0).margin(1e-14));
  CHECK(root_fn_odd(Energy{1.5}, 0.0) == Catch::Approx(0.0).margin(1e-14));
  CHECK(root_fn_odd(Energy{3.5}, 0.0) == Catch::Approx(0.0).margin(1e-14));
  // An even eigenvalue is not an odd root.
  CHECK(std::fabs(root_fn_odd(Energy{0.5}, 0.0)) > 0.1);
  CHECK_THROWS_AS(root_fn_even(Energy{0.0}, 1.0), std::domain_error);
  CHECK_THROWS_AS(root_fn_odd(Energy{-1.0}, 1.0), std::domain_error);
}

TEST_CASE("E = 3/2 even root sits at half-width pi/sqrt(6)") {
  // At E = 3/2 the even condition degenerates to cos(sqrt(E) l) = 0, whose
  // first root is l = pi/sqrt(6) = 1.2825...; this pins the 1.28 value.
  const double l_star = M_PI / std::sqrt(6.0);
  CHECK(root_fn_even(Energy{1.5}, l_star) == Catch::Approx(0.0).margin(1e-12));
  CHECK(std::fabs(root_fn_even(Energy{1.5}, 1.28)) < 5e-3);
  CHECK(l_star == Catch::Approx(1.28).margin(0.01));
}

TEST_CASE("harmonic limit of the eigenvalues") {
  const auto states = eigenvalues(0.0, 5);
  REQUIRE(states.size() == 6);
  for (int n = 0; n <= 5; ++n) {
    CAPTURE(n);
    CHECK(states[n].n == n);
    CHECK(states[n].energy.value == Catch::Approx(n + 0.5).margin(1e-6));
    CHECK((states[n].parity == (n % 2 == 0 ? Parity::even : Parity::odd)));
  }
}

TEST_CASE("second excited level crosses 3/2 near l = 1.28") {
  const auto states = eigenvalues(1.28, 2);
  REQUIRE(states.size() == 3);
  CHECK(states[2].energy.value == Catch::Approx(1.5).margin(0.02));
  CHECK((states[2].parity == Parity::even));
}

TEST_CASE("eigenvalues decrease with half-width and stay ordered") {
  std::vector<std::vector<double>> curves(6);
  for (int i = 0; i <= 20; ++i) {
    const double l = 0.25 * i;
    const auto states = eigenvalues(l, 5);
    REQUIRE(states.size() == 6);
    for (int n = 0; n <= 5; ++n) {
      curves[n].push_back(states[n].energy.value);
      if (n > 0) {
        CAPTURE(l, n);
        CHECK(states[n].energy.value > states[n - 1].energy.value);
      }
    }
  }
  for (int n = 0; n <= 5; ++n) {
    for (size_t i = 1; i < curves[n].size(); ++i) {
      CAPTURE(n, i);
      CHECK(curves[n][i] < curves[n][i - 1]);
    }
  }
}

TEST_CASE("wide-well limit approaches the box spectrum") {
  const auto states = eigenvalues(20.0, 3);
  const double e0 = states[0].energy.value;
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    CHECK(states[n].energy.value / e0 ==
          Catch::Approx((n + 1.0) * (n + 1.0)).epsilon(0.05));
  }
  // Absolute levels converge to the hard-box values only slowly: the soft
  // quarter-parabola walls let low-energy states spill out roughly two
  // units per side, so E_0/box_0 is 0.82 at l = 20 and climbs with l.
  auto ground_vs_box = [](double l) {
    const double box0 = M_PI * M_PI / (4.0 * l * l);
    return eigenvalues(l, 0)[0].energy.value / box0;
  };
  const double r10 = ground_vs_box(10.0);
  const double r20 = ground_vs_box(20.0);
  const double r40 = ground_vs_box(40.0);
  CHECK(r20 == Catch::Approx(0.819).margin(0.005));
  CHECK(r10 < r20);
  CHECK(r20 < r40);
  CHECK(r40 < 1.0);
}

TEST_CASE("series matching agrees with the Numerov oracle") {
  for (double l : {0.5, 1.0, 2.0}) {
    const auto series = eigenvalues(l, 4);
    const auto numerov = bathtub_numerov_eigenvalues(l, 4, 1e-3);
    REQUIRE(numerov.size() >= 5);
    for (size_t n = 0; n < 5; ++n) {
      CAPTURE(l, n);
      CHECK(std::fabs(series[n].energy.value - numerov[n]) < 1e-6);
    }
  }
}

TEST_CASE("assembled harmonic ground state is the Gaussian") {
  const auto states = eigenvalues(0.0, 0);
  const auto w = assemble_wavefunction(states[0], -8.0, 8.0, 0.01);
  // Compare shapes after matching the peak value.
  const size_t mid = w.psi.size() / 2;
  const double peak = w.psi[mid];
  double worst = 0.0;
  for (size_t i = 0; i < w.z.size(); ++i) {
    const double exact = peak * std::exp(-0.25 * w.z[i] * w.z[i]);
    worst = std::max(worst, std::fabs(w.psi[i] - exact));
  }
  CHECK(worst < 1e-8 * std::fabs(peak));
  CHECK(count_nodes(w) == 0);
}

TEST_CASE("unit norm and parity symmetry of assembled states") {
  for (double l : {0.7, 1.28, 3.0}) {
    const auto states = eigenvalues(l, 3);
    for (const auto& s : states) {
      const auto w = assemble_wavefunction(s, -(l + 8.0), l + 8.0, 0.005);
      double norm = 0.0;
      for (size_t i = 1; i < w.psi.size(); ++i) {
        norm += 0.5 * 0.005 *
                (w.psi[i] * w.psi[i] + w.psi[i - 1] * w.psi[i - 1]);
      }
      CAPTURE(l, s.n);
      CHECK(norm == Catch::Approx(1.0).margin(1e-6));
      const double sign = (s.parity == Parity::even) ? 1.0 : -1.0;
      double asym = 0.0;
      const size_t n = w.psi.size();
      for (size_t i = 0; i < n; ++i) {
        asym = std::max(asym,
                        std::fabs(w.psi[i] - sign * w.psi[n - 1 - i]));
      }
      CHECK(asym < 1e-10);
      CHECK(count_nodes(w) == s.n);
    }
  }
}

TEST_CASE("n = 2 state at the critical half-width has nodes at +-l") {
  const auto states = eigenvalues(1.28, 2);
  const double h = 0.005;
  const auto w = assemble_wavefunction(states[2], -9.28, 9.28, h);
  std::vector<double> nodes;
  for (size_t i = 0; i + 1 < w.psi.size(); ++i) {
    if (w.psi[i] * w.psi[i + 1] < 0.0) {
      const double t = w.psi[i] / (w.psi[i] - w.psi[i + 1]);
      nodes.push_back(w.z[i] + t * h);
    }
  }
  REQUIRE(nodes.size() == 2);
  CHECK(nodes[0] == Catch::Approx(-1.28).margin(0.02));
  CHECK(nodes[1] == Catch::Approx(1.28).margin(0.02));
}

TEST_CASE("wide-well first excited state looks like the box mode") {
  const double l = 6.0;
  const auto states = eigenvalues(l, 1);
  const auto w = assemble_wavefunction(states[1], -(l + 4.0), l + 4.0, 0.01,
                                       /*max_norm=*/true);
  // The box mode for a width-2l well has k l = pi; soft walls let the state
  // spill out a little, so k l sits just below pi.
  const double k = std::sqrt(states[1].energy.value);
  CHECK(k * l / M_PI > 0.7);
  CHECK(k * l / M_PI < 1.0);
  // Interior is the pure sine at that k.
  double worst = 0.0;
  for (size_t i = 0; i < w.z.size(); ++i) {
    if (std::fabs(w.z[i]) > l) continue;
    worst = std::max(worst, std::fabs(w.psi[i] - std::sin(k * w.z[i])));
  }
  // Tolerance covers the grid missing the exact sine peak by up to h/2.
  CHECK(worst < 1e-5);
  // Leakage into the harmonic walls: still 0.04 of the peak three units
  // past the edge (the Gaussian tail sets in slowly at this energy), below
  // 1e-2 a unit farther out.
  auto at = [&](double z) {
    return std::fabs(
        w.psi[static_cast<size_t>(std::lround((z - w.z.front()) / 0.01))]);
  };
  CHECK(at(l + 3.0) < 0.05);
  CHECK(at(-(l + 3.0)) < 0.05);
  CHECK(at(l + 4.0) < 1e-2);
  CHECK(at(-(l + 4.0)) < 1e-2);
}

TEST_CASE("max-norm option rescales to unit peak") {
  const auto states = eigenvalues(1.0, 0);
  const auto w = assemble_wavefunction(states[0], -9.0, 9.0, 0.01, true);
  double peak = 0.0;
  for (double v : w.psi) peak = std::max(peak, std::fabs(v));
  CHECK(peak == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spectrum sweep table") {
  const auto rows = spectrum_sweep({0.0, 1.0}, 2);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].l == 0.0);
  CHECK(rows[0].n == 0);
  CHECK(rows[0].ratio_to_ground == 1.0);
  for (int n = 0; n <= 2; ++n) {
    CHECK(rows[n].ratio_to_ground ==
          Catch::Approx(2.0 * n + 1.0).margin(1e-4));
  }
  CHECK(rows[3].l == 1.0);
  CHECK(rows[3].ratio_to_ground == 1.0);
  CHECK(rows[4].ratio_to_ground > 1.0);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(eigenvalues(-1.0, 2), std::domain_error);
  CHECK_THROWS_AS(eigenvalues(1.0, -1), std::domain_error);
  const auto states = eigenvalues(1.0, 0);
  CHECK_THROWS_AS(assemble_wavefunction(states[0], 1.0, -1.0, 0.01),
                  std::domain_error);
  CHECK_THROWS_AS(assemble_wavefunction(states[0], -1.0, 1.0, 0.0),
                  std::domain_error);
}
