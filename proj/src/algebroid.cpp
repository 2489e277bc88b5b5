#include "mcforge/algebroid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mcforge::algebroid {

using numerics::FdConfig;
using numerics::OdeConfig;
using numerics::TimeField;
using numerics::Trajectory;

PreLieAlgebroid::PreLieAlgebroid(std::string name, int base_dim, int rank, Box domain, AnchorFn anchor,
                                 StructureFn structure)
    : name_(std::move(name)),
      base_dim_(base_dim),
      rank_(rank),
      domain_(std::move(domain)),
      anchor_(std::move(anchor)),
      structure_(std::move(structure)) {
  if (base_dim_ < 1 || rank_ < 1) throw DimensionError("PreLieAlgebroid: base dimension and rank must be positive");
  if (domain_.dim() != base_dim_ || domain_.upper.size() != base_dim_)
    throw DimensionError("PreLieAlgebroid: domain dimension does not match the base");
}

Matrix PreLieAlgebroid::anchor(const Vector& x) const {
  require_size(x, base_dim_, "anchor");
  if (!domain_.contains(x))
    throw OutOfDomainError("anchor: point outside the domain", std::numeric_limits<double>::quiet_NaN());
  return anchor_(x);
}

Tensor3 PreLieAlgebroid::structure(const Vector& x) const {
  require_size(x, base_dim_, "structure");
  if (!domain_.contains(x))
    throw OutOfDomainError("structure: point outside the domain", std::numeric_limits<double>::quiet_NaN());
  return structure_(x);
}

AConnection AConnection::zero(int rank) {
  return {[rank](const Vector&) { return Tensor3(rank, rank, rank); }};
}

AConnection AConnection::constant(Tensor3 symbols) {
  return {[symbols = std::move(symbols)](const Vector&) { return symbols; }};
}

AuxConnection AuxConnection::zero(int base_dim, int rank) {
  return {[base_dim, rank](const Vector&) { return Tensor3(rank, base_dim, rank); }};
}

AuxConnection AuxConnection::constant(Tensor3 symbols) {
  return {[symbols = std::move(symbols)](const Vector&) { return symbols; }};
}

namespace {

// Antisymmetric contraction sum_{i<j} T(k,i,j) (u_i v_j - u_j v_i).
Vector antisymmetric_contract(const Tensor3& t, const Vector& u, const Vector& v) {
  Vector out = Vector::Zero(t.dim0());
  const int r = t.dim1();
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const double w = u[i] * v[j] - u[j] * v[i];
      if (w == 0.0) continue;
      for (int k = 0; k < t.dim0(); ++k) out[k] += t(k, i, j) * w;
    }
  return out;
}

// Directional derivative of a section along v at x.
Vector directional(const Section& f, const Vector& x, const Vector& v, const FdConfig& fd) {
  if (max_abs(v) == 0.0) return Vector::Zero(f(x).size());
  return numerics::central_diff([&](double s) -> Vector { return f(x + s * v); }, 0.0, fd);
}

// State layout (gamma, g) and (gamma, g, u).
TimeField geodesic_field(const PreLieAlgebroid& alg, const AConnection& conn) {
  const int m = alg.base_dim();
  const int r = alg.rank();
  return [&alg, &conn, m, r](double, const Vector& y) -> Vector {
    const Vector gam = y.head(m);
    const Vector g = y.segment(m, r);
    Vector dy(y.size());
    dy.head(m) = alg.anchor_unchecked(gam) * g;
    dy.segment(m, r) = -conn.gamma(gam).contract(g, g);
    if (y.size() > m + r) {
      const Vector u = y.tail(r);
      dy.tail(r) = -antisymmetric_contract(alg.structure_unchecked(gam), g, u);
    }
    return dy;
  };
}

numerics::StatePredicate base_inside(const PreLieAlgebroid& alg) {
  const int m = alg.base_dim();
  return [&alg, m](const Vector& y) { return alg.domain().contains(y.head(m)); };
}

Vector stack(const Vector& a, const Vector& b) {
  Vector out(a.size() + b.size());
  out << a, b;
  return out;
}

Vector stack(const Vector& a, const Vector& b, const Vector& c) {
  Vector out(a.size() + b.size() + c.size());
  out << a, b, c;
  return out;
}

void check_point(const PreLieAlgebroid& alg, const Vector& x, const Vector& a, const char* what) {
  require_size(x, alg.base_dim(), what);
  require_size(a, alg.rank(), what);
  if (!alg.domain().contains(x)) throw OutOfDomainError(std::string(what) + ": base point outside the domain", 0.0);
}

std::string not_in_a0(const char* what, double exit_time) {
  return std::string(what) + ": geodesic leaves the domain at t = " + std::to_string(exit_time);
}

// Fiber values g_a(t_i) at the given (increasing, positive) times.
std::vector<Vector> fiber_at(const PreLieAlgebroid& alg, const AConnection& conn, const Vector& x, const Vector& a,
                             const std::vector<double>& times, const OdeConfig& ode) {
  try {
    const auto states =
        numerics::flow_through(geodesic_field(alg, conn), 0.0, times, stack(x, a), ode, base_inside(alg));
    std::vector<Vector> out;
    out.reserve(states.size());
    for (const Vector& s : states) out.push_back(s.tail(alg.rank()));
    return out;
  } catch (const OutOfDomainError& e) {
    throw NotInA0Error(not_in_a0("solve_one_form", e.exit_time()));
  }
}

// Field of the general transport on (gamma, u) for a time-dependent section.
TimeField transport_field(const PreLieAlgebroid& alg, const TimeDependentSection& xi, const FdConfig& fd) {
  const int m = alg.base_dim();
  const int r = alg.rank();
  return [&alg, &xi, &fd, m, r](double t, const Vector& y) -> Vector {
    const Vector gam = y.head(m);
    const Vector u = y.tail(r);
    const Matrix rho = alg.anchor_unchecked(gam);
    const Vector xv = xi(t, gam);
    Vector dy(m + r);
    dy.head(m) = rho * xv;
    Vector du = -antisymmetric_contract(alg.structure_unchecked(gam), xv, u);
    const Vector dir = rho * u;
    if (max_abs(dir) != 0.0)
      du += numerics::central_diff([&](double s) -> Vector { return xi(t, gam + s * dir); }, 0.0, fd);
    dy.tail(r) = du;
    return dy;
  };
}

// Horner accumulation of sum_i w_i psi^{1,t_i} v_i along the flow of `field`,
// whose state ends in the r transported components.
Vector accumulate(const TimeField& field, const Vector& start, const numerics::QuadratureRule& rule,
                  const std::vector<Vector>& values, int r, const OdeConfig& ode,
                  const numerics::StatePredicate& inside) {
  Vector state = start;
  double t = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double node = rule.nodes[i];
    if (node != t) state = numerics::flow_to(field, t, node, state, ode, inside);
    t = node;
    state.tail(r) += rule.weights[i] * values[i];
  }
  if (t != 1.0) state = numerics::flow_to(field, t, 1.0, state, ode, inside);
  return state.tail(r);
}

}  // namespace

double structure_antisymmetry_defect(const PreLieAlgebroid& alg, const Vector& x) {
  const Tensor3 c = alg.structure(x);
  double worst = 0.0;
  for (int k = 0; k < c.dim0(); ++k)
    for (int i = 0; i < c.dim1(); ++i)
      for (int j = 0; j < c.dim2(); ++j) worst = std::max(worst, std::abs(c(k, i, j) + c(k, j, i)));
  return worst;
}

double anchor_compatibility_defect(const PreLieAlgebroid& alg, const Vector& x, const FdConfig& fd) {
  require_size(x, alg.base_dim(), "anchor_compatibility_defect");
  const int r = alg.rank();
  const Matrix rho = alg.anchor(x);
  const Tensor3 c = alg.structure(x);
  double worst = 0.0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      Vector cij(r);
      for (int k = 0; k < r; ++k) cij[k] = c(k, i, j);
      const Section fi = [&alg, i](const Vector& y) -> Vector { return alg.anchor(y).col(i); };
      const Section fj = [&alg, j](const Vector& y) -> Vector { return alg.anchor(y).col(j); };
      const Vector lie = directional(fj, x, rho.col(i), fd) - directional(fi, x, rho.col(j), fd);
      worst = std::max(worst, max_abs(Vector(rho * cij - lie)));
    }
  return worst;
}

Vector section_bracket(const PreLieAlgebroid& alg, const Section& alpha, const Section& beta, const Vector& x,
                       const FdConfig& fd) {
  require_size(x, alg.base_dim(), "section_bracket");
  const Vector av = alpha(x);
  const Vector bv = beta(x);
  require_size(av, alg.rank(), "section_bracket");
  require_size(bv, alg.rank(), "section_bracket");
  const Matrix rho = alg.anchor(x);
  return antisymmetric_contract(alg.structure(x), av, bv) + directional(beta, x, rho * av, fd) -
         directional(alpha, x, rho * bv, fd);
}

Vector jacobiator_frame(const PreLieAlgebroid& alg, const Vector& x, int i, int j, int k, const FdConfig& fd) {
  const int r = alg.rank();
  if (i < 0 || j < 0 || k < 0 || i >= r || j >= r || k >= r)
    throw DimensionError("jacobiator_frame: frame index out of range");
  const auto frame = [r](int idx) -> Section { return [r, idx](const Vector&) { return unit(r, idx); }; };
  const auto frame_bracket = [&alg, r](int p, int q) -> Section {
    return [&alg, r, p, q](const Vector& y) {
      const Tensor3 c = alg.structure(y);
      Vector out(r);
      for (int l = 0; l < r; ++l) out[l] = c(l, p, q);
      return out;
    };
  };
  return section_bracket(alg, frame_bracket(i, j), frame(k), x, fd) +
         section_bracket(alg, frame_bracket(j, k), frame(i), x, fd) +
         section_bracket(alg, frame_bracket(k, i), frame(j), x, fd);
}

Vector FrameJacobiator::contract(const Vector& u, const Vector& v, const Vector& w) const {
  Vector out = Vector::Zero(values_.empty() ? 0 : values_.front().size());
  for (int i = 0; i < rank_; ++i) {
    if (u[i] == 0.0) continue;
    for (int j = 0; j < rank_; ++j) {
      if (v[j] == 0.0) continue;
      for (int k = 0; k < rank_; ++k) out += (u[i] * v[j] * w[k]) * at(i, j, k);
    }
  }
  return out;
}

double FrameJacobiator::max_norm() const {
  double worst = 0.0;
  for (const Vector& v : values_) worst = std::max(worst, max_abs(v));
  return worst;
}

FrameJacobiator frame_jacobiator(const PreLieAlgebroid& alg, const Vector& x, const FdConfig& fd) {
  const int r = alg.rank();
  // Antisymmetric in each pair, so only i < j < k needs computing.
  std::vector<Vector> values(std::size_t(r) * r * r, Vector::Zero(r));
  const auto idx = [r](int i, int j, int k) { return std::size_t((i * r + j) * r + k); };
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int k = j + 1; k < r; ++k) {
        const Vector v = jacobiator_frame(alg, x, i, j, k, fd);
        values[idx(i, j, k)] = v;
        values[idx(j, k, i)] = v;
        values[idx(k, i, j)] = v;
        values[idx(j, i, k)] = -v;
        values[idx(i, k, j)] = -v;
        values[idx(k, j, i)] = -v;
      }
  return FrameJacobiator(r, std::move(values));
}

GeodesicResult geodesic(const PreLieAlgebroid& alg, const AConnection& conn, const Vector& x, const Vector& a,
                        const OdeConfig& ode) {
  check_point(alg, x, a, "geodesic");
  const int m = alg.base_dim();
  const int r = alg.rank();
  GeodesicResult out;
  Trajectory full;
  try {
    full = numerics::solve_ivp(geodesic_field(alg, conn), 0.0, 1.0, stack(x, a), ode, base_inside(alg));
    out.reached_time_one = true;
  } catch (const OutOfDomainError& e) {
    // Keep the valid prefix: the steps before the first rejected state.
    const int steps = int(std::lround(e.exit_time() * ode.step_count)) - 1;
    if (steps < 1) {
      full.times = {0.0};
      full.states = {stack(x, a)};
    } else {
      full = numerics::solve_ivp(geodesic_field(alg, conn), 0.0, double(steps) / ode.step_count, stack(x, a),
                                 OdeConfig{steps, ode.method}, base_inside(alg));
    }
  }
  for (std::size_t i = 0; i < full.times.size(); ++i) {
    out.base.times.push_back(full.times[i]);
    out.base.states.push_back(full.states[i].head(m));
    out.fiber.times.push_back(full.times[i]);
    out.fiber.states.push_back(full.states[i].segment(m, r));
  }
  return out;
}

GeodesicPoint geodesic_point(const PreLieAlgebroid& alg, const AConnection& conn, const Vector& x, const Vector& a,
                             double t, const OdeConfig& ode) {
  check_point(alg, x, a, "geodesic_point");
  try {
    const Vector s = numerics::flow_to(geodesic_field(alg, conn), 0.0, t, stack(x, a), ode, base_inside(alg));
    return {s.head(alg.base_dim()), s.tail(alg.rank())};
  } catch (const OutOfDomainError& e) {
    throw NotInA0Error(not_in_a0("geodesic_point", e.exit_time()));
  }
}

ExpTarget exp_and_target(const PreLieAlgebroid& alg, const AConnection& conn, const Vector& x, const Vector& a,
                         const OdeConfig& ode) {
  const GeodesicPoint p = geodesic_point(alg, conn, x, a, 1.0, ode);
  return {p.fiber, p.base};
}

Vector transport(const PreLieAlgebroid& alg, const TimeDependentSection& xi, const Trajectory& base, double s,
                 double t, const Vector& u0, const OdeConfig& ode, const FdConfig& fd) {
  const int m = alg.base_dim();
  require_size(u0, alg.rank(), "transport");
  if (base.times.empty() || base.times.size() != base.states.size())
    throw BaseMismatchError("transport: base trajectory is empty or malformed");
  for (const Vector& st : base.states) require_size(st, m, "transport");

  // The base must be an integral curve of rho(xi).
  const TimeField curve = [&alg, &xi](double tt, const Vector& y) -> Vector {
    return alg.anchor_unchecked(y) * xi(tt, y);
  };
  const auto inside = [&alg](const Vector& y) { return alg.domain().contains(y); };
  const double t0 = base.times.front();
  const Vector y0 = base.states.front();
  try {
    Vector y = y0;
    double at = t0;
    for (std::size_t i = 1; i < base.times.size(); ++i) {
      y = numerics::flow_to(curve, at, base.times[i], y, ode, inside);
      at = base.times[i];
      const double tol = 1e-6 * (1.0 + max_abs(base.states[i]));
      if (max_abs(Vector(y - base.states[i])) > tol)
        throw BaseMismatchError("transport: base is not an integral curve of the anchored section at t = " +
                                std::to_string(at));
    }
    const Vector start = numerics::flow_to(curve, t0, s, y0, ode, inside);
    if (s == t) return u0;
    const TimeField field = transport_field(alg, xi, fd);
    const auto inside_aug = [&alg, m](const Vector& y) { return alg.domain().contains(y.head(m)); };
    return numerics::flow_to(field, s, t, stack(start, u0), ode, inside_aug).tail(alg.rank());
  } catch (const OutOfDomainError& e) {
    throw NotInA0Error(not_in_a0("transport", e.exit_time()));
  }
}

Vector transport_along_geodesic(const PreLieAlgebroid& alg, const AConnection& conn, const Vector& x,
                                const Vector& a, double s, double t, const Vector& u0, const OdeConfig& ode) {
  require_size(u0, alg.rank(), "transport_along_geodesic");
  if (s == t) return u0;
  const GeodesicPoint p = geodesic_point(alg, conn, x, a, s, ode);
  try {
    return numerics::flow_to(geodesic_field(alg, conn), s, t, stack(p.base, p.fiber, u0), ode, base_inside(alg))
        .tail(alg.rank());
  } catch (const OutOfDomainError& e) {
    throw NotInA0Error(not_in_a0("transport_along_geodesic", e.exit_time()));
  }
}

Vector solve_one_form(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a, const Vector& b) {
  const PreLieAlgebroid& alg = form.algebroid();
  check_point(alg, x, a, "solve_one_form");
  require_size(b, alg.rank(), "solve_one_form");
  const int r = alg.rank();
  const auto& rule = form.rule();
  const std::size_t n = rule.size();

  // d/de g_{a+eb}(t_i) for all nodes at once.
  const Vector stacked = numerics::central_diff(
      [&](double e) -> Vector {
        const auto fibers = fiber_at(alg, form.connection(), x, a + e * b, rule.nodes, form.ode());
        Vector out(Eigen::Index(n) * r);
        for (std::size_t i = 0; i < n; ++i) out.segment(Eigen::Index(i) * r, r) = fibers[i];
        return out;
      },
      0.0, form.fd());
  std::vector<Vector> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) values.push_back(stacked.segment(Eigen::Index(i) * r, r));

  try {
    return accumulate(geodesic_field(alg, form.connection()), stack(x, a, Vector::Zero(r)), rule, values, r,
                      form.ode(), base_inside(alg));
  } catch (const OutOfDomainError& e) {
    throw NotInA0Error(not_in_a0("solve_one_form", e.exit_time()));
  }
}

Vector solve_one_form_with_extension(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a,
                                     const Vector& b, const Extension& extension) {
  const PreLieAlgebroid& alg = form.algebroid();
  check_point(alg, x, a, "solve_one_form_with_extension");
  require_size(b, alg.rank(), "solve_one_form_with_extension");
  const int m = alg.base_dim();
  const int r = alg.rank();
  const auto& rule = form.rule();
  std::vector<Vector> values;
  values.reserve(rule.size());
  try {
    const auto states = numerics::flow_through(geodesic_field(alg, form.connection()), 0.0, rule.nodes,
                                               stack(x, a), form.ode(), base_inside(alg));
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double t = rule.nodes[i];
      const Vector y = states[i].head(m);
      values.push_back(
          numerics::central_diff([&](double e) -> Vector { return extension(t, e, y); }, 0.0, form.fd()));
    }
    const TimeDependentSection xi0 = [&extension](double t, const Vector& y) { return extension(t, 0.0, y); };
    const auto inside = [&alg, m](const Vector& y) { return alg.domain().contains(y.head(m)); };
    return accumulate(transport_field(alg, xi0, form.fd()), stack(x, Vector::Zero(r)), rule, values, r,
                      form.ode(), inside);
  } catch (const OutOfDomainError& e) {
    throw NotInA0Error(not_in_a0("solve_one_form_with_extension", e.exit_time()));
  }
}

Vector target(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a) {
  return exp_and_target(form.algebroid(), form.connection(), x, a, form.ode()).target;
}

Vector target_differential(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a, const Vector& b) {
  require_size(b, form.algebroid().rank(), "target_differential");
  return numerics::central_diff([&](double s) -> Vector { return target(form, x, a + s * b); }, 0.0, form.fd());
}

double anchoredness_defect(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a, const Vector& b) {
  const Vector tau = target(form, x, a);
  const Vector lhs = form.algebroid().anchor(tau) * solve_one_form(form, x, a, b);
  return max_abs(Vector(lhs - target_differential(form, x, a, b)));
}

Vector torsion_bracket(const PreLieAlgebroid& alg, const AuxConnection& aux, const Vector& x, const Vector& u,
                       const Vector& v) {
  require_size(u, alg.rank(), "torsion_bracket");
  require_size(v, alg.rank(), "torsion_bracket");
  const int r = alg.rank();
  const int m = alg.base_dim();
  const Matrix rho = alg.anchor(x);
  const Tensor3 c = alg.structure(x);
  const Tensor3 g = aux.gamma_tilde(x);
  Tensor3 t(r, r, r);
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        double val = c(k, i, j);
        for (int l = 0; l < m; ++l) val += -rho(l, i) * g(k, l, j) + rho(l, j) * g(k, l, i);
        t(k, i, j) = val;
      }
  return antisymmetric_contract(t, u, v);
}

Vector mc_defect(const AlgebroidMCOneForm& form, const AuxConnection& aux, const Vector& x, const Vector& a,
                 const Vector& b, const Vector& c, const FdConfig& fd) {
  const PreLieAlgebroid& alg = form.algebroid();
  require_size(c, alg.rank(), "mc_defect");
  const Vector tau = target(form, x, a);
  const Vector pb = solve_one_form(form, x, a, b);
  const Vector pc = solve_one_form(form, x, a, c);
  const Tensor3 g = aux.gamma_tilde(tau);
  const auto covariant = [&](const Vector& dir, const Vector& arg, const Vector& phi_arg) -> Vector {
    const Vector d = numerics::central_diff(
        [&](double s) -> Vector { return solve_one_form(form, x, a + s * dir, arg); }, 0.0, fd);
    return d + g.contract(target_differential(form, x, a, dir), phi_arg);
  };
  return covariant(b, c, pc) - covariant(c, b, pb) + torsion_bracket(alg, aux, tau, pb, pc);
}

double verify_connection_independence(const AlgebroidMCOneForm& form, const AuxConnection& aux1,
                                      const AuxConnection& aux2, const std::vector<Sample>& samples,
                                      const FdConfig& fd, double anchored_tol) {
  double worst = 0.0;
  for (const Sample& s : samples) {
    const double defect =
        std::max(anchoredness_defect(form, s.x, s.a, s.b), anchoredness_defect(form, s.x, s.a, s.c));
    if (defect > anchored_tol)
      throw NotAnchoredError("verify_connection_independence: solution is not anchored", defect);
    const Vector d1 = mc_defect(form, aux1, s.x, s.a, s.b, s.c, fd);
    const Vector d2 = mc_defect(form, aux2, s.x, s.a, s.b, s.c, fd);
    worst = std::max(worst, max_abs(Vector(d1 - d2)));
  }
  return worst;
}

IdentityPair verify_derivative_identity(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a,
                                        const Vector& b, const Vector& c, const FdConfig& inner,
                                        const FdConfig& outer) {
  const PreLieAlgebroid& alg = form.algebroid();
  const AuxConnection aux = AuxConnection::zero(alg.base_dim(), alg.rank());
  const Vector lhs = frame_jacobiator(alg, x, inner).contract(a, b, c);
  const Vector slope = numerics::central_diff(
      [&](double t) -> Vector {
        const Vector defect = mc_defect(form, aux, x, t * a, b, c, inner);
        return transport_along_geodesic(alg, form.connection(), x, a, t, 0.0, defect, form.ode());
      },
      0.0, outer);
  return {lhs, -3.0 * slope};
}

IdentityPair verify_integral_identity(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a,
                                      const Vector& b, const Vector& c, const FdConfig& fd) {
  const PreLieAlgebroid& alg = form.algebroid();
  const int m = alg.base_dim();
  const int r = alg.rank();
  const Vector lhs = mc_defect(form, AuxConnection::zero(m, r), x, a, b, c, fd);
  const auto& rule = form.rule();
  try {
    const auto states = numerics::flow_through(geodesic_field(alg, form.connection()), 0.0, rule.nodes,
                                               stack(x, a), form.ode(), base_inside(alg));
    std::vector<Vector> values;
    values.reserve(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double t = rule.nodes[i];
      // (1/t) exp(ta) = g_a(t) by the scaling identity of geodesics.
      const Vector point = states[i].head(m);
      const Vector dir = states[i].tail(r);
      const Vector pb = solve_one_form(form, x, t * a, t * b);
      const Vector pc = solve_one_form(form, x, t * a, t * c);
      values.push_back(frame_jacobiator(alg, point, fd).contract(dir, pb, pc));
    }
    const Vector rhs = -accumulate(geodesic_field(alg, form.connection()), stack(x, a, Vector::Zero(r)), rule,
                                   values, r, form.ode(), base_inside(alg));
    return {lhs, rhs};
  } catch (const OutOfDomainError& e) {
    throw NotInA0Error(not_in_a0("verify_integral_identity", e.exit_time()));
  }
}

PreLieAlgebroid from_lie_algebra(const prelie::PreLieAlgebra& alg) {
  const int r = alg.dim();
  const Tensor3 c = alg.constants();
  return PreLieAlgebroid(alg.name() + "_bundle", 1, r, Box::cube(1, 10.0),
                         [r](const Vector&) { return Matrix(Matrix::Zero(1, r)); },
                         [c](const Vector&) { return c; });
}

PreLieAlgebroid cotangent_algebroid(const poisson::BivectorField& bv, const FdConfig& fd) {
  const int n = bv.dim();
  return PreLieAlgebroid(
      "cotangent(" + bv.name() + ")", n, n, bv.domain(),
      [bv](const Vector& x) -> Matrix { return bv.evaluate_unchecked(x).transpose(); },
      [bv, fd, n](const Vector& x) {
        Tensor3 c(n, n, n);
        for (int k = 0; k < n; ++k) {
          const Matrix dk = bv.partial(x, k, fd);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) c(k, i, j) = dk(i, j);
        }
        return c;
      });
}

IdentityPair poisson_algebroid_bridge_pair(const poisson::BivectorField& bv, const BridgeSample& sample,
                                           const BridgeConfig& cfg) {
  const int n = bv.dim();
  require_size(sample.x, n, "poisson_algebroid_bridge_pair");
  const poisson::PoissonMCOneForm pform(bv, cfg.rule, cfg.ode);
  const AlgebroidMCOneForm aform(cotangent_algebroid(bv, cfg.fd), AConnection::zero(n), cfg.rule, cfg.ode, cfg.fd);
  const poisson::Covector xi{sample.xi};
  const poisson::Covector zeta{sample.zeta};
  Vector grad(n);
  for (int l = 0; l < n; ++l)
    grad[l] = numerics::central_diff_scalar(
        [&](double h) { return poisson::solve_one_form(pform, sample.x + h * unit(n, l), xi, zeta); }, 0.0, cfg.fd);
  return {grad, solve_one_form(aform, sample.x, sample.xi, sample.zeta)};
}

double verify_poisson_algebroid_bridge(const poisson::BivectorField& bv, const std::vector<BridgeSample>& samples,
                                       const BridgeConfig& cfg) {
  double worst = 0.0;
  for (const BridgeSample& s : samples) worst = std::max(worst, poisson_algebroid_bridge_pair(bv, s, cfg).residual());
  return worst;
}

}  // namespace mcforge::algebroid
