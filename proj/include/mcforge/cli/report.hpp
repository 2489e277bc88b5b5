#pragma once

// Verification reports and their JSON / fixed-width table renderings.

#include <string>
#include <vector>

#include <json.hpp>

#include "mcforge/linalg.hpp"

namespace mcforge::cli {

struct CheckRecord {
  std::string name;
  std::vector<double> point;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string reason;  // set when the check raised an error
};

struct Summary {
  double max_residual = 0.0;
  int pass = 0;
  int fail = 0;
};

struct Report {
  nlohmann::ordered_json scenario;
  nlohmann::ordered_json environment;
  std::vector<CheckRecord> checks;

  Summary summary() const;
  bool all_pass() const { return summary().fail == 0; }
};

// residual = max |lhs - rhs|, pass = residual <= tolerance.
CheckRecord make_record(std::string name, std::vector<double> point, const Vector& lhs, const Vector& rhs,
                        double tolerance);
// Failed record for a check that raised; residual is the largest double.
CheckRecord error_record(std::string name, std::vector<double> point, double tolerance, std::string reason);

enum class Format { json, table };

std::string emit(const Report& report, Format format);

}  // namespace mcforge::cli
