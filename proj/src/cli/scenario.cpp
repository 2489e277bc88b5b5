#include "mcforge/cli/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "mcforge/cli/resolve.hpp"
#include "mcforge/fixtures.hpp"

namespace mcforge::cli {

using nlohmann::ordered_json;

namespace {

const std::vector<std::pair<Kind, std::string>>& kinds() {
  static const std::vector<std::pair<Kind, std::string>> table{
      {Kind::prelie, "prelie"}, {Kind::poisson, "poisson"}, {Kind::algebroid, "algebroid"}, {Kind::bridge, "bridge"}};
  return table;
}

struct SuiteSpec {
  const char* name;
  double tolerance;
};

const std::vector<SuiteSpec>& suites(Kind kind) {
  static const std::vector<SuiteSpec> prelie{{"jacobi", 1e-10},
                                             {"solve_one_form", 1e-8},
                                             {"mc_defect", 5e-7},
                                             {"weak_equation", 5e-7},
                                             {"derivative_identity", 1e-4},
                                             {"integral_identity", 1e-5},
                                             {"equivalence", 0.0}};
  static const std::vector<SuiteSpec> poisson{{"jacobiator", 1e-10},
                                              {"mc_defect", 1e-4},
                                              {"weak_equation", 1e-5},
                                              {"derivative_identity", 2e-3},
                                              {"integral_identity", 1e-3},
                                              {"realization", 1e-4},
                                              {"zero_section", 1e-6}};
  static const std::vector<SuiteSpec> algebroid{{"jacobiator", 1e-8},
                                                {"geodesic_scaling", 1e-8},
                                                {"a_path", 1e-7},
                                                {"boundary", 1e-8},
                                                {"anchoredness", 1e-5},
                                                {"mc_defect", 1e-4},
                                                {"connection_independence", 1e-5},
                                                {"derivative_identity", 5e-3},
                                                {"integral_identity", 1e-3},
                                                {"equivalence", 0.0}};
  static const std::vector<SuiteSpec> bridge{{"bridge", 1e-3}, {"anchor_compatibility", 1e-6}};
  switch (kind) {
    case Kind::prelie: return prelie;
    case Kind::poisson: return poisson;
    case Kind::algebroid: return algebroid;
    case Kind::bridge: return bridge;
  }
  return prelie;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

[[noreturn]] void fail(const std::string& source, const std::string& msg) {
  throw ConfigError(source + ": " + msg);
}

void reject_unknown(const ordered_json& obj, const std::set<std::string>& allowed, const std::string& where,
                    const std::string& source) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) fail(source, "unknown key \"" + item.key() + "\" in " + where);
}

int get_int(const ordered_json& v, const std::string& field, const std::string& source) {
  if (!v.is_number_integer()) fail(source, "field \"" + field + "\" must be an integer");
  return v.get<int>();
}

std::map<std::string, std::string> string_map(const ordered_json& v, const std::string& field,
                                              const std::string& source) {
  if (!v.is_object()) fail(source, "field \"" + field + "\" must be an object");
  std::map<std::string, std::string> out;
  for (const auto& item : v.items()) {
    if (item.value().is_string())
      out[item.key()] = item.value().get<std::string>();
    else if (item.value().is_number())
      out[item.key()] = item.value().dump();
    else
      fail(source, "field \"" + field + "." + item.key() + "\" must be a string or a number");
  }
  return out;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::string to_string(Kind kind) {
  for (const auto& [k, name] : kinds())
    if (k == kind) return name;
  return "?";
}

std::vector<std::string> kind_names() {
  std::vector<std::string> out;
  for (const auto& entry : kinds()) out.push_back(entry.second);
  return out;
}

std::vector<std::string> suite_names(Kind kind) {
  std::vector<std::string> out;
  for (const auto& s : suites(kind)) out.push_back(s.name);
  return out;
}

double default_tolerance(Kind kind, const std::string& suite) {
  for (const auto& s : suites(kind))
    if (suite == s.name) return s.tolerance;
  throw ConfigError("unknown suite \"" + suite + "\"");
}

int default_points(Kind kind) { return kind == Kind::prelie ? 20 : 5; }

double Scenario::tolerance(const std::string& name) const {
  const auto it = tolerances.find(name);
  return it != tolerances.end() ? it->second : default_tolerance(kind, name);
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = line_column(text, byte);
    fail(source, "parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     e.what());
  }
  if (!doc.is_object()) fail(source, "top level must be an object");
  reject_unknown(doc, {"kind", "fixture", "suite", "tolerances", "sample"}, "scenario", source);

  Scenario s;
  if (!doc.contains("kind") || !doc["kind"].is_string()) fail(source, "field \"kind\" must be a string");
  const std::string kind = doc["kind"].get<std::string>();
  bool found = false;
  for (const auto& [k, name] : kinds())
    if (name == kind) {
      s.kind = k;
      found = true;
    }
  if (!found) fail(source, "field \"kind\": unknown kind \"" + kind + "\"; valid kinds: " + join(kind_names()));

  if (!doc.contains("fixture")) fail(source, "field \"fixture\" is required");
  const ordered_json& fx = doc["fixture"];
  if (fx.is_string()) {
    s.fixture_name = fx.get<std::string>();
  } else if (fx.is_object()) {
    reject_unknown(fx, {"dim", "rank", "box", "coefficients", "anchor"}, "fixture", source);
    InlineFixture inl;
    if (!fx.contains("dim")) fail(source, "field \"fixture.dim\" is required");
    inl.dim = get_int(fx["dim"], "fixture.dim", source);
    if (inl.dim < 1 || inl.dim > 9) fail(source, "field \"fixture.dim\" must be between 1 and 9");
    if (fx.contains("rank")) inl.rank = get_int(fx["rank"], "fixture.rank", source);
    if (fx.contains("box")) {
      if (!fx["box"].is_number() || fx["box"].get<double>() <= 0.0)
        fail(source, "field \"fixture.box\" must be a positive number");
      inl.half_width = fx["box"].get<double>();
    }
    if (fx.contains("coefficients")) inl.coefficients = string_map(fx["coefficients"], "fixture.coefficients", source);
    if (fx.contains("anchor")) inl.anchor = string_map(fx["anchor"], "fixture.anchor", source);
    s.inline_fixture = inl;
  } else {
    fail(source, "field \"fixture\" must be a name or an inline definition");
  }

  if (!doc.contains("suite") || !doc["suite"].is_array()) fail(source, "field \"suite\" must be an array");
  const auto valid = suite_names(s.kind);
  for (const auto& item : doc["suite"]) {
    if (!item.is_string()) fail(source, "field \"suite\" must contain strings");
    const std::string name = item.get<std::string>();
    if (std::find(valid.begin(), valid.end(), name) == valid.end())
      fail(source, "field \"suite\": unknown suite \"" + name + "\" for kind " + kind + "; valid suites: " +
                       join(valid));
    if (std::find(s.suite.begin(), s.suite.end(), name) != s.suite.end())
      fail(source, "field \"suite\": duplicate suite \"" + name + "\"");
    s.suite.push_back(name);
  }
  if (s.suite.empty()) fail(source, "field \"suite\" must not be empty");

  if (doc.contains("tolerances")) {
    const ordered_json& tol = doc["tolerances"];
    if (!tol.is_object()) fail(source, "field \"tolerances\" must be an object");
    for (const auto& item : tol.items()) {
      if (std::find(valid.begin(), valid.end(), item.key()) == valid.end())
        fail(source, "field \"tolerances." + item.key() + "\": unknown suite; valid suites: " + join(valid));
      if (!item.value().is_number() || item.value().get<double>() < 0.0)
        fail(source, "field \"tolerances." + item.key() + "\" must be a non-negative number");
      s.tolerances[item.key()] = item.value().get<double>();
    }
  }

  s.points = default_points(s.kind);
  if (doc.contains("sample")) {
    const ordered_json& sample = doc["sample"];
    if (!sample.is_object()) fail(source, "field \"sample\" must be an object");
    reject_unknown(sample, {"seed", "points"}, "sample", source);
    if (sample.contains("seed")) {
      if (!sample["seed"].is_number_unsigned()) fail(source, "field \"sample.seed\" must be a non-negative integer");
      s.seed = sample["seed"].get<std::uint64_t>();
    }
    if (sample.contains("points")) {
      s.points = get_int(sample["points"], "sample.points", source);
      if (s.points < 1) fail(source, "field \"sample.points\" must be positive");
    }
  }

  validate_fixture(s, source);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

ordered_json scenario_echo(const Scenario& s) {
  ordered_json out;
  out["kind"] = to_string(s.kind);
  if (s.inline_fixture) {
    const InlineFixture& f = *s.inline_fixture;
    ordered_json fx;
    fx["dim"] = f.dim;
    if (f.rank) fx["rank"] = *f.rank;
    fx["box"] = f.half_width;
    fx["coefficients"] = f.coefficients;
    if (!f.anchor.empty()) fx["anchor"] = f.anchor;
    out["fixture"] = fx;
  } else {
    out["fixture"] = s.fixture_name;
  }
  out["suite"] = s.suite;
  ordered_json tol = ordered_json::object();
  for (const auto& name : s.suite) tol[name] = s.tolerance(name);
  out["tolerances"] = tol;
  out["sample"] = {{"seed", s.seed}, {"points", s.points}};
  return out;
}

}  // namespace mcforge::cli
