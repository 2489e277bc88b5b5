#pragma once

// Named fixtures shared by the CLI and the test suites.

#include <optional>
#include <string>
#include <vector>

#include "mcforge/algebroid.hpp"
#include "mcforge/poisson.hpp"
#include "mcforge/prelie.hpp"

namespace mcforge::fixtures {

struct AlgebroidFixture {
  algebroid::PreLieAlgebroid algebroid;
  algebroid::AConnection connection;
};

// R^2 tangent algebroid on (-5,5)^2: rho = id, c = 0, Gamma = 0.
AlgebroidFixture tangent_r2();
// Zero anchor, constant c = eps, Gamma = 0.
AlgebroidFixture so3_bundle();
// m = r = 1, rho = 0, c = 0, Gamma^1_11 = 1: g_a(t) = a / (1 + a t).
AlgebroidFixture geodesic_1d();

std::optional<prelie::PreLieAlgebra> find_algebra(const std::string& name);
std::optional<poisson::BivectorField> find_bivector(const std::string& name);
// Accepts "tangent_r2", "<algebra>_bundle" and "cotangent(<bivector>)".
std::optional<AlgebroidFixture> find_algebroid(const std::string& name);

std::vector<std::string> algebra_names();
std::vector<std::string> bivector_names();
std::vector<std::string> algebroid_names();

}  // namespace mcforge::fixtures
