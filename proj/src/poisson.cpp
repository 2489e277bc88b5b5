#include "mcforge/poisson.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace mcforge::poisson {

namespace {

constexpr double kNoTime = std::numeric_limits<double>::quiet_NaN();

// Jacobian d A_k / d y_l of the solution coefficients in the base point.
Matrix base_jacobian(const PoissonMCOneForm& form, const Vector& y, const Vector& xi, const numerics::FdConfig& fd) {
  const int n = form.bivector().dim();
  Matrix jac(n, n);
  for (int l = 0; l < n; ++l) {
    const Vector e = unit(n, l);
    jac.col(l) = numerics::central_diff(
        [&](double s) -> Vector { return solution_coefficients(form, y + s * e, xi); }, 0.0, fd);
  }
  return jac;
}

// Jacobian d A_k / d xi_l at fixed base point.
Matrix fiber_jacobian(const PoissonMCOneForm& form, const Vector& x, const Vector& xi, const numerics::FdConfig& fd) {
  const int n = form.bivector().dim();
  Matrix jac(n, n);
  for (int l = 0; l < n; ++l) {
    const Vector e = unit(n, l);
    jac.col(l) = numerics::central_diff(
        [&](double s) -> Vector { return solution_coefficients(form, x, xi + s * e); }, 0.0, fd);
  }
  return jac;
}

// {{a,b},c} at a point, from pi and its partials: sum_k d_k(a^T pi b) (pi c)_k.
double outer_bracket(const Matrix& pi, const std::vector<Matrix>& dpi, const Vector& a, const Vector& b,
                     const Vector& c) {
  const Vector pc = pi * c;
  double acc = 0.0;
  for (std::size_t k = 0; k < dpi.size(); ++k) acc += a.dot(dpi[k] * b) * pc[Eigen::Index(k)];
  return acc;
}

double jacobiator_at(const BivectorField& bv, const Vector& x, const Vector& a, const Vector& b, const Vector& c,
                     const numerics::FdConfig& fd) {
  const Matrix pi = bv(x);
  std::vector<Matrix> dpi;
  dpi.reserve(bv.dim());
  for (int k = 0; k < bv.dim(); ++k) dpi.push_back(bv.partial(x, k, fd));
  return outer_bracket(pi, dpi, a, b, c) + outer_bracket(pi, dpi, b, c, a) + outer_bracket(pi, dpi, c, a, b);
}

}  // namespace

Coefficient Coefficient::from_polynomial(const expr::Polynomial& p) {
  std::vector<expr::Polynomial> partials;
  for (int i = 0; i < p.variables(); ++i) partials.push_back(p.derivative(i));
  return Coefficient{[p](const Vector& x) { return p(x); },
                     [partials](const Vector& x) {
                       Vector g(Eigen::Index(partials.size()));
                       for (std::size_t i = 0; i < partials.size(); ++i) g[Eigen::Index(i)] = partials[i](x);
                       return g;
                     }};
}

Coefficient Coefficient::constant(int dim, double c) {
  return Coefficient{[c](const Vector&) { return c; }, [dim](const Vector&) { return Vector(Vector::Zero(dim)); }};
}

BivectorField::BivectorField(std::string name, int dim, Box domain, UpperEntries upper)
    : name_(std::move(name)), dim_(dim), domain_(std::move(domain)), upper_(std::move(upper)) {
  if (dim_ < 1) throw DimensionError("BivectorField: dimension must be positive");
  if (domain_.dim() != dim_) throw DimensionError("BivectorField: domain dimension mismatch");
  for (const auto& [ij, coef] : upper_) {
    if (ij.first < 0 || ij.second >= dim_ || ij.first >= ij.second)
      throw DimensionError("BivectorField: entries must be (i, j) with 0 <= i < j < dim");
    if (!coef.value) throw DimensionError("BivectorField: empty coefficient");
  }
}

BivectorField BivectorField::from_polynomials(std::string name, int dim, Box domain,
                                              const std::map<std::pair<int, int>, expr::Polynomial>& upper) {
  UpperEntries entries;
  for (const auto& [ij, p] : upper) {
    if (p.variables() != dim) throw DimensionError("BivectorField: polynomial variable count mismatch");
    entries.emplace(ij, Coefficient::from_polynomial(p));
  }
  return BivectorField(std::move(name), dim, std::move(domain), std::move(entries));
}

bool BivectorField::closed_form_gradient() const {
  for (const auto& [ij, coef] : upper_)
    if (!coef.gradient) return false;
  return true;
}

Matrix BivectorField::evaluate_unchecked(const Vector& x) const {
  Matrix pi = Matrix::Zero(dim_, dim_);
  for (const auto& [ij, coef] : upper_) {
    const double v = coef.value(x);
    pi(ij.first, ij.second) = v;
    pi(ij.second, ij.first) = -v;
  }
  return pi;
}

Matrix BivectorField::operator()(const Vector& x) const {
  require_size(x, dim_, "BivectorField");
  if (!domain_.contains(x)) throw OutOfDomainError("bivector '" + name_ + "' evaluated outside its domain", kNoTime);
  return evaluate_unchecked(x);
}

Matrix BivectorField::partial(const Vector& x, int l, const numerics::FdConfig& fd) const {
  require_size(x, dim_, "BivectorField::partial");
  if (l < 0 || l >= dim_) throw DimensionError("BivectorField::partial: direction out of range");
  if (!domain_.contains(x)) throw OutOfDomainError("bivector '" + name_ + "' differentiated outside its domain", kNoTime);
  Matrix d = Matrix::Zero(dim_, dim_);
  if (closed_form_gradient()) {
    for (const auto& [ij, coef] : upper_) {
      const double v = coef.gradient(x)[l];
      d(ij.first, ij.second) = v;
      d(ij.second, ij.first) = -v;
    }
    return d;
  }
  const Vector e = unit(dim_, l);
  for (const auto& [ij, coef] : upper_) {
    const double v =
        numerics::central_diff_scalar([&](double s) { return coef.value(x + s * e); }, 0.0, fd);
    d(ij.first, ij.second) = v;
    d(ij.second, ij.first) = -v;
  }
  return d;
}

BivectorField zero_bivector(int dim, double half_width) {
  return BivectorField("zero_r" + std::to_string(dim), dim, Box::cube(dim, half_width), {});
}

BivectorField nonpoisson_r3() {
  return BivectorField::from_polynomials("nonpoisson_r3", 3, Box::cube(3, 3.0),
                                         {{{0, 1}, expr::parse("x1", 3)}, {{0, 2}, expr::parse("-1", 3)}});
}

BivectorField so3_dual() {
  return BivectorField::from_polynomials(
      "so3_dual", 3, Box::cube(3, 3.0),
      {{{0, 1}, expr::parse("x3", 3)}, {{0, 2}, expr::parse("-x2", 3)}, {{1, 2}, expr::parse("x1", 3)}});
}

BivectorField symplectic_r2() {
  return BivectorField::from_polynomials("symplectic_r2", 2, Box::cube(2, 3.0), {{{0, 1}, expr::parse("1", 2)}});
}

std::function<Vector(const Vector&)> hamiltonian_field(const BivectorField& bv, const Covector& xi) {
  require_size(xi.components, bv.dim(), "hamiltonian_field");
  return [bv, xi](const Vector& x) -> Vector { return bv(x).transpose() * xi.components; };
}

Vector solution_coefficients(const PoissonMCOneForm& form, const Vector& x, const Vector& xi) {
  const BivectorField& bv = form.bivector();
  require_size(x, bv.dim(), "solve_one_form");
  require_size(xi, bv.dim(), "solve_one_form");
  if (!bv.domain().contains(x)) throw OutOfDomainError("solve_one_form: base point outside the domain", 0.0);
  // backward flow of X_xi: y' = -X_xi(y) = -pi(y)^T xi
  const numerics::TimeField field = [&](double, const Vector& y) -> Vector {
    return -(bv.evaluate_unchecked(y).transpose() * xi);
  };
  const numerics::StatePredicate inside = [&](const Vector& y) { return bv.domain().contains(y); };
  const auto states = numerics::flow_through(field, 0.0, form.rule().nodes, x, form.ode(), inside);
  Vector acc = Vector::Zero(bv.dim());
  for (std::size_t i = 0; i < states.size(); ++i) acc += form.rule().weights[i] * states[i];
  return acc;
}

double solve_one_form(const PoissonMCOneForm& form, const Vector& x, const Covector& xi, const Covector& zeta) {
  require_size(zeta.components, form.bivector().dim(), "solve_one_form");
  return zeta.components.dot(solution_coefficients(form, x, xi.components));
}

double mc_defect(const PoissonMCOneForm& form, const Vector& x, const Covector& xi, const Covector& zeta,
                 const Covector& eta, const numerics::FdConfig& fd) {
  const Vector& k = xi.components;
  const Vector& z = zeta.components;
  const Vector& e = eta.components;
  const double d_z = numerics::central_diff_scalar(
      [&](double s) { return e.dot(solution_coefficients(form, x, k + s * z)); }, 0.0, fd);
  const double d_e = numerics::central_diff_scalar(
      [&](double s) { return z.dot(solution_coefficients(form, x, k + s * e)); }, 0.0, fd);
  const Matrix jac = base_jacobian(form, x, k, fd);
  const Vector grad_f = jac.transpose() * z;
  const Vector grad_g = jac.transpose() * e;
  const double poisson_bracket = grad_f.dot(form.bivector()(x) * grad_g);
  return (d_z - d_e) + poisson_bracket;
}

double jacobiator_linear(const BivectorField& bv, const Covector& xi, const Covector& zeta, const Covector& eta,
                         const Vector& x, const numerics::FdConfig& fd) {
  require_size(xi.components, bv.dim(), "jacobiator_linear");
  require_size(zeta.components, bv.dim(), "jacobiator_linear");
  require_size(eta.components, bv.dim(), "jacobiator_linear");
  return jacobiator_at(bv, x, xi.components, zeta.components, eta.components, fd);
}

ScalarPair verify_derivative_identity(const PoissonMCOneForm& form, const Vector& x, const Covector& xi,
                                      const Covector& zeta, const Covector& eta, const numerics::FdConfig& inner,
                                      const numerics::FdConfig& outer) {
  const double lhs = jacobiator_linear(form.bivector(), xi, zeta, eta, x, inner);
  const double slope = numerics::central_diff_scalar(
      [&](double t) { return mc_defect(form, x, Covector{t * xi.components}, zeta, eta, inner); }, 0.0, outer);
  return {lhs, -3.0 * slope};
}

ScalarPair verify_integral_identity(const PoissonMCOneForm& form, const Vector& x, const Covector& xi,
                                    const Covector& zeta, const Covector& eta, const numerics::FdConfig& fd) {
  const BivectorField& bv = form.bivector();
  const Vector& k = xi.components;
  const auto& rule = form.rule();
  const std::size_t count = rule.size();

  // y_i = flow of X_xi for time t_i - 1 starting at x, i.e. the backward flow
  // for duration 1 - t_i. Durations are visited in increasing order.
  std::vector<double> durations(count);
  for (std::size_t i = 0; i < count; ++i) durations[i] = 1.0 - rule.nodes[count - 1 - i];
  const numerics::TimeField backward = [&](double, const Vector& y) -> Vector {
    return -(bv.evaluate_unchecked(y).transpose() * k);
  };
  const numerics::StatePredicate inside = [&](const Vector& y) { return bv.domain().contains(y); };
  const auto reversed = numerics::flow_through(backward, 0.0, durations, x, form.ode(), inside);

  double integral = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = rule.nodes[i];
    const Vector& y = reversed[count - 1 - i];
    const Matrix jac = base_jacobian(form, y, t * k, fd);
    const Vector grad_f = t * (jac.transpose() * zeta.components);
    const Vector grad_g = t * (jac.transpose() * eta.components);
    integral += rule.weights[i] * jacobiator_at(bv, y, k, grad_f, grad_g, fd);
  }
  return {mc_defect(form, x, xi, zeta, eta, fd), -integral};
}

SymplecticCandidate symplectic_matrix(const PoissonMCOneForm& form, const Vector& x, const Covector& xi,
                                      const numerics::FdConfig& fd) {
  const int n = form.bivector().dim();
  require_size(xi.components, n, "symplectic_matrix");
  // phi~ = sum_k A_k(x, xi) dxi_k; W(a, b) = d_a phi~_b
  Matrix w = Matrix::Zero(2 * n, 2 * n);
  w.block(0, n, n, n) = base_jacobian(form, x, xi.components, fd).transpose();
  w.block(n, n, n, n) = fiber_jacobian(form, x, xi.components, fd).transpose();
  return {x, xi.components, w - w.transpose()};
}

Matrix realization_defect(const PoissonMCOneForm& form, const Vector& x, const Covector& xi,
                          const numerics::FdConfig& fd) {
  const int n = form.bivector().dim();
  const SymplecticCandidate candidate = symplectic_matrix(form, x, xi, fd);
  const Matrix inverse = numerics::invert(candidate.omega);
  const Matrix projected = -inverse.block(0, 0, n, n);
  return projected - form.bivector()(x);
}

}  // namespace mcforge::poisson
