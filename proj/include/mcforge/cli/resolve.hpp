#pragma once

// Turns a scenario's fixture field (registry name or inline definition) into
// library objects.

#include <string>

#include "mcforge/cli/scenario.hpp"
#include "mcforge/fixtures.hpp"

namespace mcforge::cli {

prelie::PreLieAlgebra resolve_algebra(const Scenario& s);
poisson::BivectorField resolve_bivector(const Scenario& s);
fixtures::AlgebroidFixture resolve_algebroid(const Scenario& s);

// Throws ConfigError if the fixture cannot be built for the scenario kind.
void validate_fixture(const Scenario& s, const std::string& source);

}  // namespace mcforge::cli
