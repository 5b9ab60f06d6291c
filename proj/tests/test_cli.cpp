#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string dir;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& body) {
  std::vector<std::string> out;
  std::istringstream ss(body);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

// Runs the CLI binary with cwd set to a fresh scratch directory.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path dir =
      fs::temp_directory_path() / ("weberbox_cli_test_" +
                                   std::to_string(::getpid()) + "_" +
                                   std::to_string(counter++));
  fs::create_directories(dir);
  const std::string cmd = "cd '" + dir.string() + "' && '" +
                          WEBERBOX_CLI_PATH + "' " + args +
                          " > stdout.txt 2> stderr.txt";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.dir = dir.string();
  r.exit_code = WEXITSTATUS(raw);
  return r;
}

}  // namespace

TEST_CASE("spectrum subcommand", "[cli]") {
  const std::string flags =
      "spectrum --l-min 0 --l-max 5 --l-step 0.05 --n-max 5";
  const auto run = run_cli(flags);
  REQUIRE(run.exit_code == 0);
  const std::string body = slurp(fs::path(run.dir) / "spectrum.csv");
  const auto lines = lines_of(body);
  REQUIRE(lines.size() == 607);  // header + 101 l-values x 6 levels
  CHECK(lines[0] == "l,n,parity,energy,ratio_to_ground");
  const auto first = split_csv(lines[1]);
  REQUIRE(first.size() == 5);
  CHECK(first[0] == "0");
  CHECK(first[1] == "0");
  CHECK(first[2] == "even");
  CHECK(std::stod(first[3]) == Catch::Approx(0.5).margin(1e-5));
  CHECK(std::stod(first[4]) == 1.0);
  // No CRLF, exactly one header.
  CHECK(body.find('\r') == std::string::npos);

  SECTION("byte-identical reruns") {
    const auto again = run_cli(flags);
    REQUIRE(again.exit_code == 0);
    CHECK(slurp(fs::path(again.dir) / "spectrum.csv") == body);
  }

  SECTION("json mirror carries a meta block") {
    const auto jr = run_cli(
        "spectrum --l-min 0 --l-max 1 --l-step 0.5 --n-max 1 --format json "
        "--out spectrum.json");
    REQUIRE(jr.exit_code == 0);
    const auto doc =
        nlohmann::json::parse(slurp(fs::path(jr.dir) / "spectrum.json"));
    CHECK(doc.contains("meta"));
    CHECK(doc["meta"]["n_max"] == 1);
    REQUIRE(doc["rows"].size() == 6);
    CHECK(doc["rows"][0]["parity"] == "even");
  }
}

TEST_CASE("wavefunction subcommand", "[cli]") {
  const auto run = run_cli(
      "wavefunction --l 1.28 --n 2 --z-max 9 --h 0.01");
  REQUIRE(run.exit_code == 0);
  const auto lines = lines_of(slurp(fs::path(run.dir) / "wavefunction.csv"));
  REQUIRE(lines.size() == 1802);
  CHECK(lines[0] == "z,psi");
  // Sign changes at z = +-1.28 within the grid step.
  std::vector<double> z, psi;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv(lines[i]);
    REQUIRE(f.size() == 2);
    z.push_back(std::stod(f[0]));
    psi.push_back(std::stod(f[1]));
  }
  std::vector<double> nodes;
  for (size_t i = 0; i + 1 < psi.size(); ++i) {
    if (psi[i] * psi[i + 1] < 0.0) nodes.push_back(z[i]);
  }
  REQUIRE(nodes.size() == 2);
  CHECK(nodes[0] == Catch::Approx(-1.28).margin(0.03));
  CHECK(nodes[1] == Catch::Approx(1.28).margin(0.03));
}

TEST_CASE("asymptotics subcommand", "[cli]") {
  const auto run = run_cli(
      "asymptotics --r-list 0,1 --omega-min 100 --omega-max 200 "
      "--omega-step 100");
  REQUIRE(run.exit_code == 0);
  const auto lines = lines_of(slurp(fs::path(run.dir) / "asymptotics.csv"));
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "omega,r,normalized_ratio");
  // r = 0 row is exactly the full normalized sum, essentially 1.
  const auto row = split_csv(lines[1]);
  CHECK(std::stod(row[2]) == Catch::Approx(1.0).margin(1e-10));
  // r = 1 at omega = 200.
  const auto row200 = split_csv(lines[4]);
  CHECK(std::stod(row200[2]) > 0.95);
  CHECK(std::stod(row200[2]) < 1.05);

  SECTION("sandwich columns") {
    const auto sr = run_cli(
        "asymptotics --r-list 1 --omega-min 300 --omega-max 300 "
        "--omega-step 100 --sandwich");
    REQUIRE(sr.exit_code == 0);
    const auto sl = lines_of(slurp(fs::path(sr.dir) / "asymptotics.csv"));
    REQUIRE(sl.size() == 2);
    CHECK(sl[0] == "omega,r,normalized_ratio,head,tail,lower,upper");
    const auto f = split_csv(sl[1]);
    REQUIRE(f.size() == 7);
    CHECK(std::stod(f[5]) <= std::stod(f[2]));  // lower <= T
    CHECK(std::stod(f[2]) <= std::stod(f[6]));  // T <= upper
  }

  SECTION("sandwich with r <= 0 is a usage error") {
    const auto bad = run_cli(
        "asymptotics --r-list -1 --omega-min 100 --omega-max 100 "
        "--omega-step 100 --sandwich");
    CHECK(bad.exit_code == 2);
  }
}

TEST_CASE("hydrogen subcommand", "[cli]") {
  SECTION("ratio table") {
    const auto run = run_cli(
        "hydrogen --L 0 --xi 1.3 --rho-min 50 --rho-max 100 --rho-step 50");
    REQUIRE(run.exit_code == 0);
    const auto lines = lines_of(slurp(fs::path(run.dir) / "hydrogen.csv"));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "rho,series_value,predicted,ratio");
    const auto f = split_csv(lines[2]);
    CHECK(std::stod(f[0]) == 100.0);
    CHECK(std::stod(f[3]) == Catch::Approx(0.39488).margin(1e-4));
  }
  SECTION("terminating xi is a usage error") {
    const auto run = run_cli(
        "hydrogen --L 0 --xi 2 --rho-min 10 --rho-max 20 --rho-step 10");
    CHECK(run.exit_code == 2);
  }
  SECTION("piecewise Coulomb levels") {
    const auto run = run_cli("hydrogen --piecewise --k 1 --R 0 --levels 2");
    REQUIRE(run.exit_code == 0);
    const auto lines = lines_of(slurp(fs::path(run.dir) / "hydrogen.csv"));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "index,energy");
    CHECK(std::stod(split_csv(lines[1])[1]) == Catch::Approx(-1.0).epsilon(1e-4));
    CHECK(std::stod(split_csv(lines[2])[1]) ==
          Catch::Approx(-0.25).epsilon(1e-4));
  }
}

TEST_CASE("verify subcommand", "[cli]") {
  const auto run = run_cli("verify --quick");
  // Exit code must agree with the recorded verdict, whatever it is.
  const auto doc =
      nlohmann::json::parse(slurp(fs::path(run.dir) / "verify.json"));
  CHECK(doc["quick"] == true);
  const bool all_pass = doc["all_pass"].get<bool>();
  CHECK(run.exit_code == (all_pass ? 0 : 1));
  REQUIRE(doc["checks"].size() == 7);
  const auto out = slurp(fs::path(run.dir) / "stdout.txt");
  for (const auto& c : doc["checks"]) {
    const int id = c["id"].get<int>();
    CAPTURE(id);
    CHECK(c.contains("detail"));
    // One summary line per check on stdout.
    const std::string tag =
        std::string("[") + (c["pass"].get<bool>() ? "PASS" : "FAIL") + "]";
    CHECK(out.find(tag) != std::string::npos);
  }
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(run_cli("spectrum").exit_code == 2);  // missing --l-max
  CHECK(run_cli("spectrum --l-max 1 --l-step 0").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}
