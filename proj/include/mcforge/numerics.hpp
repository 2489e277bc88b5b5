#pragma once

// Shared numerical kernels: quadrature on [0,1], fixed-step RK4 with
// re-integration dense output, scaling-and-squaring matrix exponential,
// partial-pivot inversion and central differences.

#include <functional>
#include <vector>

#include "mcforge/linalg.hpp"

namespace mcforge::numerics {

struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, inside [0,1]
  std::vector<double> weights;  // positive, sum to 1

  static QuadratureRule gauss_legendre(int points);
  // Composite Simpson on an even number of equal subintervals (subintervals + 1 nodes).
  static QuadratureRule composite_simpson(int subintervals);
  static QuadratureRule default_rule() { return gauss_legendre(32); }

  std::size_t size() const { return nodes.size(); }
};

Vector integrate(const std::function<Vector(double)>& f, const QuadratureRule& rule);
double integrate_scalar(const std::function<double(double)>& f, const QuadratureRule& rule);

Matrix expm(const Matrix& m);

enum class OdeMethod { rk4 };

struct OdeConfig {
  int step_count = 200;
  OdeMethod method = OdeMethod::rk4;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;

  const Vector& final_state() const { return states.back(); }
  double final_time() const { return times.back(); }
};

using TimeField = std::function<Vector(double t, const Vector& y)>;
// Returns false when a state has left the admissible region.
using StatePredicate = std::function<bool(const Vector& y)>;

// Uniform RK4 with exactly cfg.step_count steps on [t0, t1] (t1 < t0 allowed).
// Throws DivergenceError on a non-finite state and OutOfDomainError when
// `inside` rejects a step state.
Trajectory solve_ivp(const TimeField& field, double t0, double t1, const Vector& y0, const OdeConfig& cfg,
                     const StatePredicate& inside = {});

// Number of uniform steps used when integrating over a sub-interval of length
// `span`: step_count steps per unit time, at least one.
int steps_for_span(const OdeConfig& cfg, double span);

// Dense output: re-integrates from t0 to t with steps_for_span(|t - t0|) steps.
Vector flow_to(const TimeField& field, double t0, double t, const Vector& y0, const OdeConfig& cfg,
               const StatePredicate& inside = {});

// States at each of `times` (monotone, all on the same side of t0), obtained by
// integrating from t0 through the requested times in order; every requested
// time is hit exactly by a step boundary.
std::vector<Vector> flow_through(const TimeField& field, double t0, const std::vector<double>& times,
                                 const Vector& y0, const OdeConfig& cfg, const StatePredicate& inside = {});

struct FdConfig {
  double step = 1e-4;
  bool richardson = false;

  static FdConfig plain() { return {1e-4, false}; }
  static FdConfig extrapolated() { return {1e-3, true}; }
};

Vector central_diff(const std::function<Vector(double)>& f, double at, const FdConfig& cfg);
double central_diff_scalar(const std::function<double(double)>& f, double at, const FdConfig& cfg);

// Partial-pivot Gauss-Jordan inverse. Throws SingularMatrixError when a pivot
// falls below 1e-12 * ||m||_inf.
Matrix invert(const Matrix& m);

}  // namespace mcforge::numerics
