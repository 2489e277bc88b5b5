#pragma once

// Pre-Poisson structures (bivector fields that need not satisfy [pi,pi] = 0)
// on an open box O in R^n, with
//
//   phi_xi(zeta)(x) = \int_0^1 zeta( flow of X_xi for time -t, from x ) dt
//
// and the MC defect, the Jacobiator identities and the symplectic-realization
// defect of the induced 1-form on O x V*.
//
// Conventions: {f,g} = pi^{ij} d_i f d_j g, X_f(g) = {f,g} (so X_xi^j = pi^{ij} xi_i),
// omega(u,v) = u^T omega v with omega_ab = d_a phi~_b - d_b phi~_a in
// coordinates (x, xi), and the bivector of omega is -omega^{-1}
// (equivalently i_{X_f} omega = -df). With these, dphi~ at the zero section of
// the zero bivector is dx ^ dxi.

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "mcforge/linalg.hpp"
#include "mcforge/numerics.hpp"
#include "mcforge/polynomial.hpp"

namespace mcforge::poisson {

inline constexpr const char* kSignConvention =
    "{f,g} = pi^{ij} d_i f d_j g; X_f(g) = {f,g}; omega_ab = d_a phi~_b - d_b phi~_a in (x, xi) order; "
    "Poisson bivector of omega = -omega^{-1}; zero-section canonical form = dx ^ dxi";

// A smooth coefficient function with an optional closed-form gradient. When
// the gradient is absent, spatial derivatives fall back to central differences.
struct Coefficient {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;

  static Coefficient from_polynomial(const expr::Polynomial& p);
  static Coefficient constant(int dim, double c);
};

class BivectorField {
 public:
  using UpperEntries = std::map<std::pair<int, int>, Coefficient>;

  // `upper` maps (i, j) with i < j (zero-based) to pi^{ij}; missing entries are
  // zero. The lower triangle is the negated upper one, so pi(x) is exactly
  // antisymmetric.
  BivectorField(std::string name, int dim, Box domain, UpperEntries upper);

  static BivectorField from_polynomials(std::string name, int dim, Box domain,
                                        const std::map<std::pair<int, int>, expr::Polynomial>& upper);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const Box& domain() const { return domain_; }
  bool closed_form_gradient() const;

  // Throws OutOfDomainError outside the box.
  Matrix operator()(const Vector& x) const;
  Matrix evaluate_unchecked(const Vector& x) const;
  // d pi / d x_l at x: closed form when every entry provides a gradient,
  // otherwise central differences with `fd`.
  Matrix partial(const Vector& x, int l, const numerics::FdConfig& fd = {}) const;

 private:
  std::string name_;
  int dim_;
  Box domain_;
  UpperEntries upper_;
};

BivectorField zero_bivector(int dim, double half_width = 3.0);
// pi^{12} = x1, pi^{13} = -1, pi^{23} = 0: Jacobiator of coordinate functions is -1.
BivectorField nonpoisson_r3();
// Linear Poisson structure dual to so(3): pi^{ij}(x) = eps_{ijk} x_k.
BivectorField so3_dual();
// Constant pi^{12} = 1 on R^2.
BivectorField symplectic_r2();

struct Covector {
  Vector components;
  double operator()(const Vector& x) const { return components.dot(x); }
};

// X_xi as a vector field on the box.
std::function<Vector(const Vector&)> hamiltonian_field(const BivectorField& bv, const Covector& xi);

class PoissonMCOneForm {
 public:
  explicit PoissonMCOneForm(BivectorField bv, numerics::QuadratureRule rule = numerics::QuadratureRule::default_rule(),
                            numerics::OdeConfig ode = {})
      : bv_(std::move(bv)), rule_(std::move(rule)), ode_(ode) {}

  const BivectorField& bivector() const { return bv_; }
  const numerics::QuadratureRule& rule() const { return rule_; }
  const numerics::OdeConfig& ode() const { return ode_; }

 private:
  BivectorField bv_;
  numerics::QuadratureRule rule_;
  numerics::OdeConfig ode_;
};

// Coefficient vector A(x, xi) with phi_xi(zeta)(x) = zeta . A(x, xi). Throws
// OutOfDomainError (carrying the exit time) when the backward flow leaves the box.
Vector solution_coefficients(const PoissonMCOneForm& form, const Vector& x, const Vector& xi);

double solve_one_form(const PoissonMCOneForm& form, const Vector& x, const Covector& xi, const Covector& zeta);

double mc_defect(const PoissonMCOneForm& form, const Vector& x, const Covector& xi, const Covector& zeta,
                 const Covector& eta, const numerics::FdConfig& fd = {});

// Cyclic sum {{xi,zeta},eta} + ... at x for linear functionals. Since the
// Jacobiator is a trivector field, the same contraction with the differentials
// of arbitrary functions gives their Jacobiator.
double jacobiator_linear(const BivectorField& bv, const Covector& xi, const Covector& zeta, const Covector& eta,
                         const Vector& x, const numerics::FdConfig& fd = {});

struct ScalarPair {
  double lhs;
  double rhs;
  double residual() const { return std::abs(lhs - rhs); }
};

ScalarPair verify_derivative_identity(const PoissonMCOneForm& form, const Vector& x, const Covector& xi,
                                      const Covector& zeta, const Covector& eta,
                                      const numerics::FdConfig& inner = {},
                                      const numerics::FdConfig& outer = {1e-3, false});

ScalarPair verify_integral_identity(const PoissonMCOneForm& form, const Vector& x, const Covector& xi,
                                    const Covector& zeta, const Covector& eta, const numerics::FdConfig& fd = {});

struct SymplecticCandidate {
  Vector base_point;
  Vector fiber_point;
  Matrix omega;  // 2n x 2n in (x, xi) coordinates, exactly antisymmetric
};

SymplecticCandidate symplectic_matrix(const PoissonMCOneForm& form, const Vector& x, const Covector& xi,
                                      const numerics::FdConfig& fd = {});

// Base-base block of the bivector -omega^{-1}, minus pi(x). Throws
// SingularMatrixError when omega is degenerate.
Matrix realization_defect(const PoissonMCOneForm& form, const Vector& x, const Covector& xi,
                          const numerics::FdConfig& fd = {});

}  // namespace mcforge::poisson
