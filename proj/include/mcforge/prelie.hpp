#pragma once

// Finite-dimensional pre-Lie algebras (antisymmetric brackets that need not
// satisfy Jacobi) and the explicit Maurer-Cartan 1-form
//
//   phi_x(y) = \int_0^1 exp(-t ad_x) y dt
//
// together with its MC defect and the two identities tying that defect to the
// Jacobiator.

#include <string>
#include <vector>

#include "mcforge/linalg.hpp"
#include "mcforge/numerics.hpp"

namespace mcforge::prelie {

struct BracketEntry {
  int i;
  int j;
  Vector value;  // [e_i, e_j]
};

class PreLieAlgebra {
 public:
  // constants(k, i, j) is the e_k component of [e_i, e_j]. Throws
  // DimensionError if the constants are not exactly antisymmetric in (i, j).
  PreLieAlgebra(std::string name, Tensor3 constants);

  // Sets [e_i, e_j] = value and [e_j, e_i] = -value for every entry; all other
  // brackets of basis vectors vanish.
  static PreLieAlgebra from_brackets(std::string name, int dim, const std::vector<BracketEntry>& entries);

  int dim() const { return constants_.dim0(); }
  const std::string& name() const { return name_; }
  const Tensor3& constants() const { return constants_; }
  double constant(int k, int i, int j) const { return constants_(k, i, j); }

 private:
  std::string name_;
  Tensor3 constants_;
};

PreLieAlgebra abelian(int dim);
PreLieAlgebra so3();
// [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e1; Jac(e1,e2,e3) = e3.
PreLieAlgebra broken_bracket();

// Matrix of ad_x: column j is [x, e_j].
struct AdOperator {
  Matrix matrix;
  Vector apply(const Vector& y) const { return matrix * y; }
};

// Evaluated over pairs i < j so that bracket(x, y) == -bracket(y, x) holds
// bit for bit and bracket(x, x) is exactly zero.
Vector bracket(const PreLieAlgebra& alg, const Vector& x, const Vector& y);
AdOperator ad(const PreLieAlgebra& alg, const Vector& x);
Vector jacobiator(const PreLieAlgebra& alg, const Vector& x, const Vector& y, const Vector& z);
double max_basis_jacobiator(const PreLieAlgebra& alg);
bool is_lie(const PreLieAlgebra& alg, double tol);

class LieMCOneForm {
 public:
  explicit LieMCOneForm(PreLieAlgebra alg, numerics::QuadratureRule rule = numerics::QuadratureRule::default_rule())
      : alg_(std::move(alg)), rule_(std::move(rule)) {}

  const PreLieAlgebra& algebra() const { return alg_; }
  const numerics::QuadratureRule& rule() const { return rule_; }

 private:
  PreLieAlgebra alg_;
  numerics::QuadratureRule rule_;
};

Vector solve_one_form(const LieMCOneForm& form, const Vector& x, const Vector& y);

// Independent route to phi_x(y): beta(t) = phi_{tx}(ty) solves
// beta' = y - ad_x beta, beta(0) = 0; integrated with RK4 up to t = 1.
Vector solve_one_form_by_ode(const PreLieAlgebra& alg, const Vector& x, const Vector& y,
                             const numerics::OdeConfig& ode = {});

// (MC_phi)_x(y, z) = d phi_x(y, z) + [phi_x(y), phi_x(z)] with constant
// coordinate directions y, z.
Vector mc_defect(const LieMCOneForm& form, const Vector& x, const Vector& y, const Vector& z,
                 const numerics::FdConfig& fd = {});

Vector verify_weak_equation(const LieMCOneForm& form, const Vector& x, const Vector& y,
                            const numerics::FdConfig& fd = {});

// lhs = Jac(x,y,z); rhs = -3 d/dt (MC_phi)_{tx}(y,z) at t = 0. `outer` is the
// stencil of the t-derivative, `inner` the one inside mc_defect.
IdentityPair verify_derivative_identity(const LieMCOneForm& form, const Vector& x, const Vector& y,
                                        const Vector& z, const numerics::FdConfig& inner = {},
                                        const numerics::FdConfig& outer = {1e-3, false});

// lhs = (MC_phi)_x(y,z) by finite differences; rhs by quadrature of
// -exp((t-1) ad_x) Jac(x, phi_{tx}(ty), phi_{tx}(tz)).
IdentityPair verify_integral_identity(const LieMCOneForm& form, const Vector& x, const Vector& y,
                                      const Vector& z, const numerics::FdConfig& fd = {});

}  // namespace mcforge::prelie
