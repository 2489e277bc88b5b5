#pragma once

// Scenario files: which fixture to load, which verifier suites to run, and
// with which tolerances and sampling parameters.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcforge/errors.hpp"

namespace mcforge::cli {

enum class Kind { prelie, poisson, algebroid, bridge };

std::string to_string(Kind kind);
std::vector<std::string> kind_names();
// Valid suite names for a kind, in run order.
std::vector<std::string> suite_names(Kind kind);
double default_tolerance(Kind kind, const std::string& suite);
int default_points(Kind kind);

// Inline fixture definition. Keys of `coefficients` are 1-based comma
// separated indices: "k,i,j" for structure constants, "i,j" (i < j) for
// bivector entries. `anchor` ("l,i" keys) is only used by algebroid kinds.
struct InlineFixture {
  int dim = 0;
  std::optional<int> rank;
  double half_width = 3.0;
  std::map<std::string, std::string> coefficients;
  std::map<std::string, std::string> anchor;
};

struct Numerics {
  int quad_order = 32;
  int ode_steps = 200;
  double fd_step = 1e-4;
};

struct Scenario {
  Kind kind = Kind::prelie;
  std::string fixture_name;  // empty for inline fixtures
  std::optional<InlineFixture> inline_fixture;
  std::vector<std::string> suite;
  std::map<std::string, double> tolerances;  // explicit overrides only
  std::uint64_t seed = 1;
  int points = 0;
  Numerics numerics;

  double tolerance(const std::string& name) const;
};

// Throws ConfigError with line/column on malformed JSON and a message naming
// the offending field on schema violations.
Scenario parse_scenario(const std::string& text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::string& path);

nlohmann::ordered_json scenario_echo(const Scenario& s);

}  // namespace mcforge::cli
