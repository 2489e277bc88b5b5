#include "mcforge/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace mcforge::numerics {

namespace {

bool all_finite(const Vector& v) { return v.allFinite(); }

// One-norm (max column sum).
double norm1(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff(); }

Vector rk4_step(const TimeField& f, double t, const Vector& y, double h) {
  const Vector k1 = f(t, y);
  const Vector k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const Vector k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const Vector k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Advances y from t0 to t1 in `steps` uniform steps, checking every state.
Vector advance(const TimeField& field, double t0, double t1, Vector y, int steps, const StatePredicate& inside,
               Trajectory* record) {
  const double h = (t1 - t0) / steps;
  for (int s = 0; s < steps; ++s) {
    const double t = t0 + s * h;
    const double t_next = (s + 1 == steps) ? t1 : t0 + (s + 1) * h;
    Vector next = rk4_step(field, t, y, h);
    if (!all_finite(next))
      throw DivergenceError("ode: non-finite state after t=" + std::to_string(t), t);
    if (inside && !inside(next))
      throw OutOfDomainError("ode: trajectory left the domain at t=" + std::to_string(t_next), t_next);
    y = std::move(next);
    if (record) {
      record->times.push_back(t_next);
      record->states.push_back(y);
    }
  }
  return y;
}

}  // namespace

QuadratureRule QuadratureRule::gauss_legendre(int points) {
  if (points < 1) throw DimensionError("gauss_legendre: need at least one point");
  const int n = points;
  // P_n(x) and P_n'(x) by the three-term recurrence.
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    return std::pair{p1, dp};
  };

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1,1] -> [0,1]; x >= 0 here, so the mirrored node comes first
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
  return rule;
}

QuadratureRule QuadratureRule::composite_simpson(int subintervals) {
  if (subintervals < 2 || subintervals % 2 != 0)
    throw DimensionError("composite_simpson: subinterval count must be even and >= 2");
  QuadratureRule rule;
  const double h = 1.0 / subintervals;
  for (int i = 0; i <= subintervals; ++i) {
    rule.nodes.push_back(i == subintervals ? 1.0 : i * h);
    const double c = (i == 0 || i == subintervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    rule.weights.push_back(c * h / 3.0);
  }
  return rule;
}

Vector integrate(const std::function<Vector(double)>& f, const QuadratureRule& rule) {
  Vector acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    Vector v = f(rule.nodes[i]);
    if (i == 0)
      acc = rule.weights[i] * v;
    else
      acc += rule.weights[i] * v;
  }
  return acc;
}

double integrate_scalar(const std::function<double(double)>& f, const QuadratureRule& rule) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

Matrix expm(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("expm: matrix must be square");
  if (!m.allFinite()) throw OverflowError("expm: non-finite input");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;

  // Scale so that ||A/2^s||_1 <= 1/2, then a degree-18 Taylor polynomial
  // leaves a remainder below 1e-22 relative.
  const double norm = norm1(m);
  int s = 0;
  if (norm > 0.5) s = int(std::ceil(std::log2(norm / 0.5)));
  if (s > 1000) throw OverflowError("expm: norm too large");
  const Matrix a = m / std::ldexp(1.0, s);

  Matrix result = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k <= 18; ++k) {
    term = (term * a) / double(k);
    result += term;
  }
  for (int i = 0; i < s; ++i) {
    result = result * result;
    if (!result.allFinite()) throw OverflowError("expm: overflow during squaring");
  }
  return result;
}

Trajectory solve_ivp(const TimeField& field, double t0, double t1, const Vector& y0, const OdeConfig& cfg,
                     const StatePredicate& inside) {
  if (cfg.step_count < 1) throw DimensionError("solve_ivp: step_count must be >= 1");
  if (!all_finite(y0)) throw DivergenceError("solve_ivp: non-finite initial state", t0);
  Trajectory traj;
  traj.times.reserve(cfg.step_count + 1);
  traj.states.reserve(cfg.step_count + 1);
  traj.times.push_back(t0);
  traj.states.push_back(y0);
  if (t1 == t0) {
    traj.times.push_back(t1);
    traj.states.push_back(y0);
    return traj;
  }
  advance(field, t0, t1, y0, cfg.step_count, inside, &traj);
  return traj;
}

int steps_for_span(const OdeConfig& cfg, double span) {
  if (cfg.step_count < 1) throw DimensionError("ode: step_count must be >= 1");
  // the small slack keeps exact multiples (e.g. span 1.0) from rounding up
  return std::max(1, int(std::ceil(cfg.step_count * std::abs(span) - 1e-9)));
}

Vector flow_to(const TimeField& field, double t0, double t, const Vector& y0, const OdeConfig& cfg,
               const StatePredicate& inside) {
  if (t == t0) return y0;
  return advance(field, t0, t, y0, steps_for_span(cfg, t - t0), inside, nullptr);
}

std::vector<Vector> flow_through(const TimeField& field, double t0, const std::vector<double>& times,
                                 const Vector& y0, const OdeConfig& cfg, const StatePredicate& inside) {
  std::vector<Vector> out;
  out.reserve(times.size());
  double t = t0;
  Vector y = y0;
  for (double target : times) {
    if (target != t) {
      y = advance(field, t, target, y, steps_for_span(cfg, target - t), inside, nullptr);
      t = target;
    }
    out.push_back(y);
  }
  return out;
}

Vector central_diff(const std::function<Vector(double)>& f, double at, const FdConfig& cfg) {
  const double h = cfg.step;
  const Vector coarse = (f(at + h) - f(at - h)) / (2.0 * h);
  if (!cfg.richardson) return coarse;
  const double hh = 0.5 * h;
  const Vector fine = (f(at + hh) - f(at - hh)) / (2.0 * hh);
  return fine + (fine - coarse) / 3.0;
}

double central_diff_scalar(const std::function<double(double)>& f, double at, const FdConfig& cfg) {
  const double h = cfg.step;
  const double coarse = (f(at + h) - f(at - h)) / (2.0 * h);
  if (!cfg.richardson) return coarse;
  const double hh = 0.5 * h;
  const double fine = (f(at + hh) - f(at - hh)) / (2.0 * hh);
  return fine + (fine - coarse) / 3.0;
}

Matrix invert(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("invert: matrix must be square");
  const Eigen::Index n = m.rows();
  const double norm = n == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
  const double threshold = 1e-12 * norm;
  Matrix a = m;
  Matrix inv = Matrix::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (!(std::abs(a(pivot, col)) > threshold))
      throw SingularMatrixError("invert: pivot " + std::to_string(std::abs(a(pivot, col))) +
                                " below threshold in column " + std::to_string(col));
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      inv.row(pivot).swap(inv.row(col));
    }
    const double p = a(col, col);
    a.row(col) /= p;
    inv.row(col) /= p;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = a(r, col);
      if (factor == 0.0) continue;
      a.row(r) -= factor * a.row(col);
      inv.row(r) -= factor * inv.row(col);
    }
  }
  return inv;
}

}  // namespace mcforge::numerics
