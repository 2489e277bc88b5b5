// mcforge: run verification scenarios and list the built-in fixtures/suites.
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 bad
// configuration or usage.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mcforge/cli/runner.hpp"
#include "mcforge/cli/scenario.hpp"
#include "mcforge/fixtures.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

void list_fixtures() {
  std::cout << "prelie:\n";
  for (const auto& n : mcforge::fixtures::algebra_names()) std::cout << "  " << n << "\n";
  std::cout << "poisson, bridge:\n";
  for (const auto& n : mcforge::fixtures::bivector_names()) std::cout << "  " << n << "\n";
  std::cout << "algebroid:\n";
  for (const auto& n : mcforge::fixtures::algebroid_names()) std::cout << "  " << n << "\n";
}

void list_suites() {
  using namespace mcforge::cli;
  for (Kind k : {Kind::prelie, Kind::poisson, Kind::algebroid, Kind::bridge}) {
    std::cout << to_string(k) << ":\n";
    for (const auto& s : suite_names(k)) std::cout << "  " << s << " (default tolerance " << default_tolerance(k, s) << ")\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mcforge - numerical verification of Maurer-Cartan solutions"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario file");
  std::string path, format = "json", out;
  std::optional<std::uint64_t> seed;
  std::optional<int> quad_order, ode_steps;
  std::optional<double> fd_step;
  int threads = 1;
  run->add_option("scenario", path, "Scenario JSON file")->required();
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  run->add_option("--out", out, "Write the report to this file instead of stdout");
  run->add_option("--seed", seed, "Override the sample seed");
  run->add_option("--quad-order", quad_order, "Gauss-Legendre points")->check(CLI::Range(1, 200));
  run->add_option("--ode-steps", ode_steps, "RK4 steps per unit time")->check(CLI::Range(1, 1000000));
  run->add_option("--fd-step", fd_step, "Central difference step")->check(CLI::PositiveNumber);
  run->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));

  app.add_subcommand("list-fixtures", "List registered fixtures");
  app.add_subcommand("list-suites", "List verifier suites per kind");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (app.got_subcommand("list-fixtures")) {
    list_fixtures();
    return 0;
  }
  if (app.got_subcommand("list-suites")) {
    list_suites();
    return 0;
  }

  mcforge::cli::Report report;
  try {
    mcforge::cli::Scenario scenario = mcforge::cli::load_scenario(path);
    if (seed) scenario.seed = *seed;
    if (quad_order) scenario.numerics.quad_order = *quad_order;
    if (ode_steps) scenario.numerics.ode_steps = *ode_steps;
    if (fd_step) scenario.numerics.fd_step = *fd_step;
    report = mcforge::cli::run(scenario, {threads});
  } catch (const mcforge::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  const auto fmt = format == "table" ? mcforge::cli::Format::table : mcforge::cli::Format::json;
  const std::string text = mcforge::cli::emit(report, fmt);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write " << out << "\n";
      return kExitConfig;
    }
    file << text;
  }
  return report.all_pass() ? 0 : kExitFail;
}
