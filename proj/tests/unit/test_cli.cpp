#include <doctest.h>

#include <charconv>
#include <map>
#include <numbers>
#include <sstream>

#include "seirs/cli.hpp"
#include "seirs/errors.hpp"

using namespace seirs;
using namespace seirs::cli;

namespace {

const char* kMinimal = R"(
params.beta = 0.1
params.mu = 0.2
params.gamma = 0.3
params.k_r = 2
params.r = 0
params.epsilon = 0
)";

std::string with(const std::string& extra) { return std::string(kMinimal) + extra; }

std::map<std::string, std::string> parse_report(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    REQUIRE(eq != std::string::npos);
    out[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return out;
}

double number(const std::string& s) {
  double v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

}  // namespace

TEST_CASE("minimal document uses defaults") {
  const RunConfig cfg = parse_config(kMinimal);
  CHECK(cfg.params == Params{0.1, 0.2, 0.3, 2, 0, 0});
  CHECK(cfg.step == 0.01);
  CHECK(cfg.horizon == 100.0);
  CHECK(cfg.initial == InitialCondition{0.05, 0.9, 0.05, 0.0});
  CHECK(cfg.warnings.empty());
  CHECK(parse_config(R"(params.beta=0.1
params.mu=0.2
params.gamma=0.3
params.k_r=2
params.r=0.25
params.epsilon=0)").step == 0.005);
}

TEST_CASE("sections and dotted keys are equivalent") {
  const RunConfig a = parse_config(R"(
[params]
beta = 0.1   # comment
mu = 0.2
gamma = 0.3
k_r = 2
r = 0
epsilon = 0
[ensemble]
rho_grid = 0.01, 0.02,0.5
)");
  const RunConfig b = parse_config(with("ensemble.rho_grid = 0.01,0.02, 0.5\n"));
  CHECK(a == b);
  CHECK(a.rho_grid == std::vector<double>{0.01, 0.02, 0.5});
}

TEST_CASE("validation errors name the constraint") {
  try {
    (void)parse_config(R"(params.beta = 0.1
params.mu = 0.2
params.gamma = 0.3
params.k_r = 1
params.r = 0.5
params.epsilon = 0)");
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violations() == std::vector<std::string>{"k_r ≥ r·e"});
  }
  CHECK_THROWS_AS(parse_config(with("run.step = 0.03\n")), ValidationError);
  CHECK_THROWS_AS(parse_config(with("initial.s0 = 0.5\n")), ValidationError);
  CHECK_THROWS_AS(parse_config(with("ensemble.n_rep = 0\n")), ValidationError);
}

TEST_CASE("parse errors carry line and column") {
  auto expect = [](const std::string& text, std::size_t line, std::size_t column) {
    try {
      (void)parse_config(text);
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
    }
  };
  expect(with("run.horizon = ten\n"), 8, 15);
  expect(with("run.horizon 10\n"), 8, 13);
  expect(with("[run\n"), 8, 1);
  expect(with("params.beta = 0.2\n"), 8, 1);
  expect(with("ensemble.rho_grid = 0.1,,0.2\n"), 8, 25);
  expect(with("simulate.method = midpoint\n"), 8, 19);
  expect("params.beta = 0.1\n", 0, 0);
}

TEST_CASE("unknown keys are warnings") {
  const RunConfig cfg = parse_config(with("params.delta = 3\n[extra]\nx = 1\n"));
  REQUIRE(cfg.warnings.size() == 2);
  CHECK(cfg.warnings[0].find("extra.x") != std::string::npos);
  CHECK(cfg.warnings[1].find("params.delta") != std::string::npos);
  const auto rep = run("equilibria", cfg).report.render();
  CHECK(rep.find("warning.1 = unknown key 'extra.x'") != std::string::npos);
}

TEST_CASE("serialize round-trips") {
  RunConfig cfg = parse_config(with(R"(
initial.s0 = 0.7
initial.e0 = 0.1
initial.i0 = 0.1
initial.r0 = 0.1
run.horizon = 12.5
run.step = 0.005
ensemble.n_rep = 77
ensemble.seed = 18446744073709551615
ensemble.rho_grid = 0.1, 0.30000000000000004
simulate.method = euler
concentration.epsilon_check = 0.3
lyapunov.experiment = true
output.trajectory = /tmp/traj.csv
)"));
  const RunConfig again = parse_config(serialize_config(cfg));
  CHECK(again == cfg);
  CHECK(again.seed == 18446744073709551615ULL);
  CHECK(parse_config(serialize_config(parse_config(kMinimal))) == parse_config(kMinimal));
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.4) == "0.40000000000000002");
  CHECK(format_number(2.0) == "2");
  CHECK(format_shortest(0.1) == "0.1");
  CHECK(format_shortest(1e-300) == "1e-300");
}

TEST_CASE("equilibria report") {
  RunConfig cfg = parse_config(kMinimal);
  cfg.params = {0.4, 0.2, 0.1, 2, 0, 0};
  const auto rep = parse_report(run("equilibria", cfg).report.render());
  CHECK(rep.at("command") == "equilibria");
  CHECK(rep.at("output.r0") == "2");
  CHECK(rep.at("output.x_star.present") == "true");
  CHECK(number(rep.at("output.x_star.residual")) <= 1e-12);
  CHECK(rep.at("output.x_free.residual") == "0");
}

TEST_CASE("delay-margin report") {
  RunConfig cfg = parse_config(kMinimal);
  cfg.params.r = 0.5;
  cfg.step = 0.01;
  const auto rep = parse_report(run("delay-margin", cfg).report.render());
  CHECK(rep.at("output.verdict") == "stable for all admissible delays");
  CHECK(number(rep.at("output.free_disease.margin")) >= 0.5 * std::numbers::pi * 2);

  cfg.params.beta = 0.4;
  cfg.params.gamma = 0.1;
  const auto co = parse_report(run("delay-margin", cfg).report.render());
  CHECK(co.at("output.verdict") == "stable below the critical delay");
  CHECK(co.at("output.coexistence.crossing.admissible") == "false");
}

TEST_CASE("simulate from X0 writes constant rows") {
  RunConfig cfg = parse_config(with("initial.s0 = 1\ninitial.e0 = 0\ninitial.i0 = 0\ninitial.r0 = 0\nrun.horizon = 1\n"));
  const auto res = run("simulate", cfg);
  REQUIRE(res.trajectory);
  const std::string csv = trajectory_csv(*res.trajectory);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,S,E,I,R");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(line.substr(line.find(',')) == ",1,0,0,0");
    ++rows;
  }
  CHECK(rows == 101);
}

TEST_CASE("every command is deterministic") {
  RunConfig cfg = parse_config(with("run.horizon = 5\nensemble.n_rep = 50\nensemble.seed = 3\n"));
  cfg.params.epsilon = 0.1;
  for (const char* command : kCommands) {
    const std::string a = run(command, cfg).report.render();
    cfg.threads = 3;
    const std::string b = run(command, cfg).report.render();
    cfg.threads = 0;
    CHECK(a == b);
  }
  CHECK_THROWS_AS(run("plot", cfg), ValidationError);
}

TEST_CASE("lyapunov report") {
  RunConfig cfg = parse_config(kMinimal);
  cfg.params.epsilon = 0.5;
  const auto rep = parse_report(run("lyapunov", cfg).report.render());
  CHECK(rep.at("output.condition") == "false");
  CHECK(rep.count("output.certificate.holds") == 0);
  cfg.params.epsilon = 0.2;
  CHECK(parse_report(run("lyapunov", cfg).report.render()).at("output.certificate.holds") == "true");
}
