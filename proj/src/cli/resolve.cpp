#include "mcforge/cli/resolve.hpp"

#include <sstream>

#include "mcforge/polynomial.hpp"

namespace mcforge::cli {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

// "k,i,j" -> zero-based indices, each checked against its bound.
std::vector<int> parse_indices(const std::string& key, const std::vector<int>& bounds, const std::string& field) {
  std::vector<int> out;
  std::stringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw ConfigError("field \"" + field + "." + key + "\": bad index list");
    out.push_back(v - 1);
  }
  if (out.size() != bounds.size())
    throw ConfigError("field \"" + field + "." + key + "\": expected " + std::to_string(bounds.size()) +
                      " comma-separated indices");
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] < 0 || out[i] >= bounds[i])
      throw ConfigError("field \"" + field + "." + key + "\": index out of range");
  return out;
}

expr::Polynomial parse_coefficient(const std::string& text, int vars, const std::string& field) {
  try {
    return expr::parse(text, vars);
  } catch (const expr::ParseError& e) {
    throw ConfigError("field \"" + field + "\": " + e.what());
  }
}

const InlineFixture& require_inline(const Scenario& s) { return *s.inline_fixture; }

prelie::PreLieAlgebra inline_algebra(const InlineFixture& f) {
  if (!f.anchor.empty()) throw ConfigError("field \"fixture.anchor\" is not used by prelie fixtures");
  const int n = f.dim;
  Tensor3 c(n, n, n);
  for (const auto& [key, text] : f.coefficients) {
    const auto idx = parse_indices(key, {n, n, n}, "fixture.coefficients");
    if (idx[1] >= idx[2]) throw ConfigError("field \"fixture.coefficients." + key + "\": requires i < j");
    const expr::Polynomial p = parse_coefficient(text, 0, "fixture.coefficients." + key);
    const double v = p(Vector());
    c(idx[0], idx[1], idx[2]) = v;
    c(idx[0], idx[2], idx[1]) = -v;
  }
  return prelie::PreLieAlgebra("inline", c);
}

poisson::BivectorField inline_bivector(const InlineFixture& f) {
  if (!f.anchor.empty()) throw ConfigError("field \"fixture.anchor\" is not used by bivector fixtures");
  const int n = f.dim;
  std::map<std::pair<int, int>, expr::Polynomial> upper;
  for (const auto& [key, text] : f.coefficients) {
    const auto idx = parse_indices(key, {n, n}, "fixture.coefficients");
    if (idx[0] >= idx[1]) throw ConfigError("field \"fixture.coefficients." + key + "\": requires i < j");
    upper.emplace(std::make_pair(idx[0], idx[1]), parse_coefficient(text, n, "fixture.coefficients." + key));
  }
  return poisson::BivectorField::from_polynomials("inline", n, Box::cube(n, f.half_width), upper);
}

fixtures::AlgebroidFixture inline_algebroid(const InlineFixture& f) {
  const int m = f.dim;
  const int r = f.rank.value_or(m);
  if (r < 1 || r > 9) throw ConfigError("field \"fixture.rank\" must be between 1 and 9");
  using Entry = std::pair<std::vector<int>, expr::Polynomial>;
  std::vector<Entry> anchor, structure;
  for (const auto& [key, text] : f.anchor)
    anchor.emplace_back(parse_indices(key, {m, r}, "fixture.anchor"),
                        parse_coefficient(text, m, "fixture.anchor." + key));
  for (const auto& [key, text] : f.coefficients) {
    auto idx = parse_indices(key, {r, r, r}, "fixture.coefficients");
    if (idx[1] >= idx[2]) throw ConfigError("field \"fixture.coefficients." + key + "\": requires i < j");
    structure.emplace_back(std::move(idx), parse_coefficient(text, m, "fixture.coefficients." + key));
  }
  algebroid::PreLieAlgebroid alg(
      "inline", m, r, Box::cube(m, f.half_width),
      [anchor, m, r](const Vector& x) {
        Matrix rho = Matrix::Zero(m, r);
        for (const auto& [idx, p] : anchor) rho(idx[0], idx[1]) = p(x);
        return rho;
      },
      [structure, r](const Vector& x) {
        Tensor3 c(r, r, r);
        for (const auto& [idx, p] : structure) {
          const double v = p(x);
          c(idx[0], idx[1], idx[2]) = v;
          c(idx[0], idx[2], idx[1]) = -v;
        }
        return c;
      });
  return {std::move(alg), algebroid::AConnection::zero(r)};
}

}  // namespace

prelie::PreLieAlgebra resolve_algebra(const Scenario& s) {
  if (s.inline_fixture) return inline_algebra(require_inline(s));
  if (auto a = fixtures::find_algebra(s.fixture_name)) return *a;
  throw ConfigError("field \"fixture\": unknown algebra \"" + s.fixture_name + "\"; valid fixtures: " +
                    join(fixtures::algebra_names()));
}

poisson::BivectorField resolve_bivector(const Scenario& s) {
  if (s.inline_fixture) return inline_bivector(require_inline(s));
  if (auto b = fixtures::find_bivector(s.fixture_name)) return *b;
  throw ConfigError("field \"fixture\": unknown bivector \"" + s.fixture_name + "\"; valid fixtures: " +
                    join(fixtures::bivector_names()));
}

fixtures::AlgebroidFixture resolve_algebroid(const Scenario& s) {
  if (s.inline_fixture) return inline_algebroid(require_inline(s));
  if (auto a = fixtures::find_algebroid(s.fixture_name)) return *a;
  throw ConfigError("field \"fixture\": unknown algebroid \"" + s.fixture_name + "\"; valid fixtures: " +
                    join(fixtures::algebroid_names()));
}

void validate_fixture(const Scenario& s, const std::string& source) {
  try {
    switch (s.kind) {
      case Kind::prelie: resolve_algebra(s); break;
      case Kind::poisson:
      case Kind::bridge: resolve_bivector(s); break;
      case Kind::algebroid: resolve_algebroid(s); break;
    }
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  } catch (const Error& e) {
    throw ConfigError(source + ": field \"fixture\": " + e.what());
  }
}

}  // namespace mcforge::cli
