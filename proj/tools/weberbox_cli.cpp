// Command-line front end: bathtub spectra and wavefunctions, asymptotic
// series verification, hydrogen radial series tables, and the verification
// suite. All outputs are deterministic CSV (or JSON mirrors with a meta
// block).
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric
// failure.

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weberbox/asymptotic.hpp"
#include "weberbox/bathtub.hpp"
#include "weberbox/hydrogen.hpp"
#include "weberbox/io.hpp"
#include "weberbox/numerov.hpp"
#include "weberbox/verify.hpp"
#include "weberbox/weber.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::vector<double> make_grid(double lo, double hi, double step) {
  std::vector<double> out;
  const long n = std::lround((hi - lo) / step);
  for (long i = 0; i <= n; ++i) {
    const double v = lo + static_cast<double>(i) * step;
    if (v > hi + 0.5 * step) break;
    out.push_back(v);
  }
  return out;
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << body;
}

int cmd_spectrum(double l_min, double l_max, double l_step, int n_max,
                 const std::string& out_path, const std::string& format) {
  const auto l_values = make_grid(l_min, l_max, l_step);
  // Rows per l computed in parallel, emitted in grid order.
  std::vector<std::vector<weberbox::SpectrumRow>> per_l(l_values.size());
  std::vector<std::string> errors(l_values.size());
  weberbox::parallel_for(l_values.size(), [&](size_t i) {
    try {
      per_l[i] = weberbox::spectrum_sweep({l_values[i]}, n_max);
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  });
  for (size_t i = 0; i < l_values.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << "spectrum: solver failed at l = "
                << weberbox::format_number(l_values[i]) << ": " << errors[i]
                << "\n";
      return kExitNumeric;
    }
  }
  if (format == "json") {
    json rows = json::array();
    for (const auto& block : per_l) {
      for (const auto& r : block) {
        rows.push_back({{"l", r.l},
                        {"n", r.n},
                        {"parity", r.parity == weberbox::Parity::even ? "even"
                                                                      : "odd"},
                        {"energy", r.energy},
                        {"ratio_to_ground", r.ratio_to_ground}});
      }
    }
    json doc = {{"meta",
                 {{"l_min", l_min},
                  {"l_max", l_max},
                  {"l_step", l_step},
                  {"n_max", n_max},
                  {"bisection_tol", 1e-10}}},
                {"rows", rows}};
    write_text(out_path, doc.dump(2) + "\n");
  } else {
    std::string body = "l,n,parity,energy,ratio_to_ground\n";
    for (const auto& block : per_l) {
      for (const auto& r : block) {
        body += weberbox::format_number(r.l) + "," + std::to_string(r.n) + "," +
                (r.parity == weberbox::Parity::even ? "even" : "odd") + "," +
                weberbox::format_number(r.energy) + "," +
                weberbox::format_number(r.ratio_to_ground) + "\n";
      }
    }
    write_text(out_path, body);
  }
  return kExitOk;
}

int cmd_wavefunction(double l, int n, double z_max, double h, bool max_norm,
                     const std::string& out_path, const std::string& format) {
  weberbox::Eigenstate state;
  try {
    state = weberbox::eigenvalues(l, n).back();
  } catch (const std::exception& ex) {
    std::cerr << "wavefunction: eigenstate not found: " << ex.what() << "\n";
    return kExitNumeric;
  }
  const auto w = weberbox::assemble_wavefunction(state, -z_max, z_max, h,
                                                 max_norm);
  if (format == "json") {
    json rows = json::array();
    for (size_t i = 0; i < w.z.size(); ++i) {
      rows.push_back({{"z", w.z[i]}, {"psi", w.psi[i]}});
    }
    json doc = {{"meta",
                 {{"l", l},
                  {"n", n},
                  {"energy", state.energy.value},
                  {"parity",
                   state.parity == weberbox::Parity::even ? "even" : "odd"},
                  {"h", h},
                  {"normalization", max_norm ? "max" : "L2"}}},
                {"rows", rows}};
    write_text(out_path, doc.dump(2) + "\n");
  } else {
    std::string body = "z,psi\n";
    for (size_t i = 0; i < w.z.size(); ++i) {
      body += weberbox::format_number(w.z[i]) + "," +
              weberbox::format_number(w.psi[i]) + "\n";
    }
    write_text(out_path, body);
  }
  return kExitOk;
}

int cmd_asymptotics(const std::vector<double>& r_list, double omega_min,
                    double omega_max, double omega_step, bool sandwich,
                    double lambda, double sigma, const std::string& out_path) {
  if (sandwich) {
    for (double r : r_list) {
      if (r <= 0.0) {
        std::cerr << "asymptotics: --sandwich requires r > 0\n";
        return kExitUsage;
      }
    }
  }
  std::string body = sandwich
                         ? "omega,r,normalized_ratio,head,tail,lower,upper\n"
                         : "omega,r,normalized_ratio\n";
  const auto omegas = make_grid(omega_min, omega_max, omega_step);
  struct Row {
    std::string text;
  };
  std::vector<Row> rows(omegas.size() * r_list.size());
  weberbox::parallel_for(rows.size(), [&](size_t idx) {
    const double omega = omegas[idx / r_list.size()];
    const double r = r_list[idx % r_list.size()];
    const auto rep = weberbox::series_s(omega, r);
    std::string line = weberbox::format_number(omega) + "," +
                       weberbox::format_number(r) + "," +
                       weberbox::format_number(rep.normalized_ratio);
    if (sandwich) {
      const auto s = weberbox::sandwich_check(omega, r, lambda, sigma);
      line += "," + weberbox::format_number(s.head_vanishes) + "," +
              weberbox::format_number(s.tail_vanishes) + "," +
              weberbox::format_number(s.lower) + "," +
              weberbox::format_number(s.upper);
    }
    rows[idx].text = line + "\n";
  });
  for (const auto& row : rows) body += row.text;
  write_text(out_path, body);
  return kExitOk;
}

int cmd_hydrogen_ratio(int L, double xi, double rho_min, double rho_max,
                       double rho_step, const std::string& out_path) {
  if (weberbox::is_terminating_xi(xi, L)) {
    std::cerr << "hydrogen: xi = " << xi
              << " is terminating; the asymptotic ratio is undefined\n";
    return kExitUsage;
  }
  std::string body = "rho,series_value,predicted,ratio\n";
  for (double rho : make_grid(rho_min, rho_max, rho_step)) {
    const auto a = weberbox::radial_asymptotic(rho, L, xi);
    body += weberbox::format_number(rho) + "," +
            weberbox::format_number(a.series_value) + "," +
            weberbox::format_number(a.predicted) + "," +
            weberbox::format_number(a.ratio) + "\n";
  }
  write_text(out_path, body);
  return kExitOk;
}

int cmd_hydrogen_piecewise(double k, double R, int L, int levels,
                           const std::string& out_path) {
  const auto eps = weberbox::coulomb_piecewise_levels(k, R, L, levels);
  std::string body = "index,energy\n";
  for (size_t n = 0; n < eps.size(); ++n) {
    body += std::to_string(n) + "," + weberbox::format_number(eps[n]) + "\n";
  }
  write_text(out_path, body);
  if (eps.size() < static_cast<size_t>(levels)) {
    std::cerr << "hydrogen: only " << eps.size() << " of " << levels
              << " requested bound levels found\n";
  }
  return kExitOk;
}

int cmd_verify(bool quick, const std::string& json_path) {
  const auto results = weberbox::run_acceptance(quick);
  json arr = json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-42s %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"detail", r.detail},
                   {"seconds", r.seconds}});
    all_pass = all_pass && r.pass;
  }
  json doc = {{"quick", quick}, {"all_pass", all_pass}, {"checks", arr}};
  write_text(json_path, doc.dump(2) + "\n");
  if (!all_pass) {
    std::printf("verification FAILED\n");
    return kExitVerifyFail;
  }
  std::printf("all checks passed\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weberbox: piecewise harmonic potentials, Weber series and "
               "asymptotic verification"};
  // Long-form help only: the wavefunction subcommand exposes a --h grid
  // step, which CLI11's default -h short flag would shadow.
  app.set_help_flag("--help", "print usage");
  app.require_subcommand(1);

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "bathtub eigenvalues over an l grid");
  double l_min = 0.0, l_max = 5.0, l_step = 0.05;
  int n_max = 5;
  std::string sp_out = "spectrum.csv", sp_fmt = "csv";
  sp->add_option("--l-min", l_min, "smallest half-width");
  sp->add_option("--l-max", l_max, "largest half-width")->required();
  sp->add_option("--l-step", l_step, "half-width step")
      ->check(CLI::PositiveNumber);
  sp->add_option("--n-max", n_max, "highest level index")
      ->check(CLI::NonNegativeNumber);
  sp->add_option("--out", sp_out, "output path");
  sp->add_option("--format", sp_fmt, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // wavefunction
  auto* wf = app.add_subcommand("wavefunction", "assembled eigenfunction");
  wf->set_help_flag("--help", "print usage");
  double wf_l = 0.0, wf_zmax = 10.0, wf_h = 0.01;
  int wf_n = 0;
  bool wf_maxnorm = false;
  std::string wf_out = "wavefunction.csv", wf_fmt = "csv";
  wf->add_option("--l", wf_l, "half-width")->required();
  wf->add_option("--n", wf_n, "level index")->check(CLI::NonNegativeNumber);
  wf->add_option("--z-max", wf_zmax, "grid extends over [-z_max, z_max]")
      ->check(CLI::PositiveNumber);
  wf->add_option("--h", wf_h, "grid step")->check(CLI::PositiveNumber);
  wf->add_flag("--max-norm", wf_maxnorm,
               "normalize to maximum value instead of L2");
  wf->add_option("--out", wf_out, "output path");
  wf->add_option("--format", wf_fmt, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // asymptotics
  auto* as = app.add_subcommand("asymptotics",
                                "normalized ratio omega^r e^{-omega} S(omega)");
  std::vector<double> r_list{1.0};
  double omega_min = 50.0, omega_max = 400.0, omega_step = 50.0;
  bool as_sandwich = false;
  double as_lambda = 0.9, as_sigma = 1.1;
  std::string as_out = "asymptotics.csv";
  as->add_option("--r-list", r_list, "exponents r")->delimiter(',');
  as->add_option("--omega-min", omega_min)->check(CLI::PositiveNumber);
  as->add_option("--omega-max", omega_max)->check(CLI::PositiveNumber);
  as->add_option("--omega-step", omega_step)->check(CLI::PositiveNumber);
  as->add_flag("--sandwich", as_sandwich, "emit appendix bound columns");
  as->add_option("--lambda", as_lambda, "head split fraction (0,1)");
  as->add_option("--sigma", as_sigma, "tail split factor (>1)");
  as->add_option("--out", as_out, "output path");

  // hydrogen
  auto* hy = app.add_subcommand("hydrogen",
                                "radial series ratios or piecewise Coulomb levels");
  int hy_L = 0, hy_levels = 3;
  double hy_xi = 1.3, hy_rho_min = 1.0, hy_rho_max = 100.0, hy_rho_step = 1.0;
  bool hy_piecewise = false;
  double hy_k = 1.0, hy_R = 0.0;
  std::string hy_out = "hydrogen.csv";
  hy->add_option("--L", hy_L, "angular momentum")->check(CLI::NonNegativeNumber);
  hy->add_option("--xi", hy_xi, "inverse dimensionless energy");
  hy->add_option("--rho-min", hy_rho_min)->check(CLI::PositiveNumber);
  hy->add_option("--rho-max", hy_rho_max)->check(CLI::PositiveNumber);
  hy->add_option("--rho-step", hy_rho_step)->check(CLI::PositiveNumber);
  hy->add_flag("--piecewise", hy_piecewise, "piecewise Coulomb level mode");
  hy->add_option("--k", hy_k, "Coulomb strength")->check(CLI::PositiveNumber);
  hy->add_option("--R", hy_R, "core radius")->check(CLI::NonNegativeNumber);
  hy->add_option("--levels", hy_levels, "bound levels to compute")
      ->check(CLI::PositiveNumber);
  hy->add_option("--out", hy_out, "output path");

  // verify
  auto* ve = app.add_subcommand("verify", "run the verification suite");
  bool ve_quick = false;
  std::string ve_json = "verify.json";
  ve->add_flag("--quick", ve_quick, "reduced subset, < 10 s");
  ve->add_option("--json", ve_json, "machine-readable output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sp->parsed()) {
      return cmd_spectrum(l_min, l_max, l_step, n_max, sp_out, sp_fmt);
    }
    if (wf->parsed()) {
      return cmd_wavefunction(wf_l, wf_n, wf_zmax, wf_h, wf_maxnorm, wf_out,
                              wf_fmt);
    }
    if (as->parsed()) {
      return cmd_asymptotics(r_list, omega_min, omega_max, omega_step,
                             as_sandwich, as_lambda, as_sigma, as_out);
    }
    if (hy->parsed()) {
      if (hy_piecewise) {
        return cmd_hydrogen_piecewise(hy_k, hy_R, hy_L, hy_levels, hy_out);
      }
      return cmd_hydrogen_ratio(hy_L, hy_xi, hy_rho_min, hy_rho_max,
                                hy_rho_step, hy_out);
    }
    if (ve->parsed()) {
      return cmd_verify(ve_quick, ve_json);
    }
  } catch (const std::domain_error& ex) {
    std::cerr << "invalid arguments: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    std::cerr << "numeric failure: " << ex.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
