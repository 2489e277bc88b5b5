#include "mcforge/cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace mcforge::cli {

using nlohmann::ordered_json;

namespace {

std::vector<double> to_std(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string format_point(const std::vector<double>& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ", " : "") + format_double("%.4g", p[i]);
  return out + "]";
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string emit_json(const Report& report) {
  ordered_json doc;
  doc["scenario"] = report.scenario;
  doc["environment"] = report.environment;
  ordered_json checks = ordered_json::array();
  for (const CheckRecord& c : report.checks) {
    ordered_json rec;
    rec["name"] = c.name;
    rec["point"] = c.point;
    rec["lhs"] = c.lhs;
    rec["rhs"] = c.rhs;
    rec["residual"] = c.residual;
    rec["tolerance"] = c.tolerance;
    rec["pass"] = c.pass;
    if (!c.reason.empty()) rec["reason"] = c.reason;
    checks.push_back(std::move(rec));
  }
  doc["checks"] = std::move(checks);
  const Summary s = report.summary();
  doc["summary"] = {{"max_residual", s.max_residual}, {"pass", s.pass}, {"fail", s.fail}};
  return doc.dump(2) + "\n";
}

std::string emit_table(const Report& report) {
  std::size_t name_w = 5;
  for (const CheckRecord& c : report.checks) name_w = std::max(name_w, c.name.size());
  name_w += 2;
  std::string out;
  if (report.scenario.contains("kind") && report.scenario.contains("fixture"))
    out += "scenario: " + report.scenario["kind"].get<std::string>() + " / " + report.scenario["fixture"].dump() +
           "\n\n";
  if (!report.checks.empty()) {
    out += pad("check", name_w) + pad("status", 8) + pad("residual", 12) + pad("tolerance", 12) + "point\n";
    for (const CheckRecord& c : report.checks) {
      out += pad(c.name, name_w) + pad(c.pass ? "pass" : "FAIL", 8) + pad(format_double("%.3e", c.residual), 12) +
             pad(format_double("%.1e", c.tolerance), 12) + format_point(c.point);
      if (!c.reason.empty()) out += "  (" + c.reason + ")";
      out += "\n";
    }
    out += "\n";
  }
  const Summary s = report.summary();
  out += "summary: " + std::to_string(s.pass) + " passed, " + std::to_string(s.fail) +
         " failed, max residual " + format_double("%.3e", s.max_residual) + "\n";
  return out;
}

}  // namespace

Summary Report::summary() const {
  Summary s;
  for (const CheckRecord& c : checks) {
    s.max_residual = std::max(s.max_residual, c.residual);
    (c.pass ? s.pass : s.fail) += 1;
  }
  return s;
}

CheckRecord make_record(std::string name, std::vector<double> point, const Vector& lhs, const Vector& rhs,
                        double tolerance) {
  CheckRecord r;
  r.name = std::move(name);
  r.point = std::move(point);
  r.lhs = to_std(lhs);
  r.rhs = to_std(rhs);
  r.residual = max_abs(Vector(lhs - rhs));
  r.tolerance = tolerance;
  r.pass = r.residual <= tolerance;
  return r;
}

CheckRecord error_record(std::string name, std::vector<double> point, double tolerance, std::string reason) {
  CheckRecord r;
  r.name = std::move(name);
  r.point = std::move(point);
  r.residual = std::numeric_limits<double>::max();
  r.tolerance = tolerance;
  r.pass = false;
  r.reason = std::move(reason);
  return r;
}

std::string emit(const Report& report, Format format) {
  return format == Format::json ? emit_json(report) : emit_table(report);
}

}  // namespace mcforge::cli
