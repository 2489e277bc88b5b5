#pragma once

#include "mcforge/cli/report.hpp"
#include "mcforge/cli/scenario.hpp"

namespace mcforge::cli {

struct RunOptions {
  int threads = 1;
};

// Runs every suite of the scenario. Errors raised by a check become failed
// records; the output does not depend on the thread count.
Report run(const Scenario& scenario, const RunOptions& options = {});

nlohmann::ordered_json environment(const Scenario& scenario);

}  // namespace mcforge::cli
