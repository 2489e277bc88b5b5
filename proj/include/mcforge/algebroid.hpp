#pragma once

// Pre-Lie algebroids over an open box M in R^m with a trivialized bundle
// A = M x R^r. Sections are written in the trivializing frame e_1..e_r; the
// bracket is [e_i, e_j] = c^k_{ij}(x) e_k extended by the Leibniz rule.
//
// Conventions used throughout:
//  * geodesics of the A-connection use the spatially constant extension of the
//    fiber curve, so  d gamma/dt = rho(gamma) g,  dg^k/dt = -Gamma^k_{ij} g^i g^j;
//  * the infinitesimal flow of a time-dependent section xi moves u along the
//    integral curve of rho(xi) by
//      du^k/dt = -c^k_{ij} xi^i u^j + (d xi^k / d x^l) rho^l_j u^j;
//  * the explicit MC solution is
//      phi_a(b) = \int_0^1 psi^{1,t} d/de|_0 g_{a+eb}(t) dt.

#include <functional>
#include <string>
#include <vector>

#include "mcforge/linalg.hpp"
#include "mcforge/numerics.hpp"
#include "mcforge/poisson.hpp"
#include "mcforge/prelie.hpp"

namespace mcforge::algebroid {

using AnchorFn = std::function<Matrix(const Vector&)>;      // m x r, column i is rho(e_i)
using StructureFn = std::function<Tensor3(const Vector&)>;  // (k, i, j) -> c^k_{ij}
using Section = std::function<Vector(const Vector&)>;
using TimeDependentSection = std::function<Vector(double, const Vector&)>;

class PreLieAlgebroid {
 public:
  PreLieAlgebroid(std::string name, int base_dim, int rank, Box domain, AnchorFn anchor, StructureFn structure);

  const std::string& name() const { return name_; }
  int base_dim() const { return base_dim_; }
  int rank() const { return rank_; }
  const Box& domain() const { return domain_; }

  // Both throw OutOfDomainError outside the box.
  Matrix anchor(const Vector& x) const;
  Tensor3 structure(const Vector& x) const;
  Matrix anchor_unchecked(const Vector& x) const { return anchor_(x); }
  Tensor3 structure_unchecked(const Vector& x) const { return structure_(x); }

 private:
  std::string name_;
  int base_dim_;
  int rank_;
  Box domain_;
  AnchorFn anchor_;
  StructureFn structure_;
};

// Gamma^k_{ij}(x): nabla-bar_{e_i} e_j = Gamma^k_{ij} e_k. Stored as (k, i, j).
struct AConnection {
  std::function<Tensor3(const Vector&)> gamma;

  static AConnection zero(int rank);
  static AConnection constant(Tensor3 symbols);
};

// Gamma~^k_{lj}(x): nabla_{d_l} e_j = Gamma~^k_{lj} e_k. Stored as (k, l, j).
struct AuxConnection {
  std::function<Tensor3(const Vector&)> gamma_tilde;

  static AuxConnection zero(int base_dim, int rank);
  static AuxConnection constant(Tensor3 symbols);
};

// max |c^k_{ij} + c^k_{ji}| at x.
double structure_antisymmetry_defect(const PreLieAlgebroid& alg, const Vector& x);
// max over frame pairs of |rho([e_i,e_j]) - [rho(e_i), rho(e_j)]| at x.
double anchor_compatibility_defect(const PreLieAlgebroid& alg, const Vector& x, const numerics::FdConfig& fd = {});

Vector section_bracket(const PreLieAlgebroid& alg, const Section& alpha, const Section& beta, const Vector& x,
                       const numerics::FdConfig& fd = {});

Vector jacobiator_frame(const PreLieAlgebroid& alg, const Vector& x, int i, int j, int k,
                        const numerics::FdConfig& fd = {});

// All frame values Jac(e_i, e_j, e_k) at one point.
class FrameJacobiator {
 public:
  FrameJacobiator(int rank, std::vector<Vector> values) : rank_(rank), values_(std::move(values)) {}
  const Vector& at(int i, int j, int k) const { return values_[std::size_t((i * rank_ + j) * rank_ + k)]; }
  Vector contract(const Vector& u, const Vector& v, const Vector& w) const;
  double max_norm() const;

 private:
  int rank_;
  std::vector<Vector> values_;
};

FrameJacobiator frame_jacobiator(const PreLieAlgebroid& alg, const Vector& x, const numerics::FdConfig& fd = {});

struct GeodesicResult {
  numerics::Trajectory base;   // gamma_a
  numerics::Trajectory fiber;  // g_a
  bool reached_time_one = false;
};

GeodesicResult geodesic(const PreLieAlgebroid& alg, const AConnection& conn, const Vector& x, const Vector& a,
                        const numerics::OdeConfig& ode = {});

struct GeodesicPoint {
  Vector base;
  Vector fiber;
};

// (gamma_a(t), g_a(t)) by re-integration from 0 (t may be negative). Throws
// NotInA0Error if the base curve leaves the box first.
GeodesicPoint geodesic_point(const PreLieAlgebroid& alg, const AConnection& conn, const Vector& x, const Vector& a,
                             double t, const numerics::OdeConfig& ode = {});

struct ExpTarget {
  Vector exp;     // g_a(1)
  Vector target;  // gamma_a(1)
};

ExpTarget exp_and_target(const PreLieAlgebroid& alg, const AConnection& conn, const Vector& x, const Vector& a,
                         const numerics::OdeConfig& ode = {});

// psi^{t,s}_xi u0 for a general time-dependent section. `base` must be an
// integral curve of rho(xi) (checked against re-integration; BaseMismatchError
// otherwise); the transport starts at the base point at time s.
Vector transport(const PreLieAlgebroid& alg, const TimeDependentSection& xi, const numerics::Trajectory& base,
                 double s, double t, const Vector& u0, const numerics::OdeConfig& ode = {},
                 const numerics::FdConfig& fd = {});

// psi^{t,s} for the constant extension of the geodesic g_a through (x, a).
Vector transport_along_geodesic(const PreLieAlgebroid& alg, const AConnection& conn, const Vector& x,
                                const Vector& a, double s, double t, const Vector& u0,
                                const numerics::OdeConfig& ode = {});

class AlgebroidMCOneForm {
 public:
  AlgebroidMCOneForm(PreLieAlgebroid alg, AConnection conn,
                     numerics::QuadratureRule rule = numerics::QuadratureRule::default_rule(),
                     numerics::OdeConfig ode = {}, numerics::FdConfig fd = {})
      : alg_(std::move(alg)), conn_(std::move(conn)), rule_(std::move(rule)), ode_(ode), fd_(fd) {}

  const PreLieAlgebroid& algebroid() const { return alg_; }
  const AConnection& connection() const { return conn_; }
  const numerics::QuadratureRule& rule() const { return rule_; }
  const numerics::OdeConfig& ode() const { return ode_; }
  // Stencil of the epsilon-derivative inside the solution and of d tau.
  const numerics::FdConfig& fd() const { return fd_; }

 private:
  PreLieAlgebroid alg_;
  AConnection conn_;
  numerics::QuadratureRule rule_;
  numerics::OdeConfig ode_;
  numerics::FdConfig fd_;
};

Vector solve_one_form(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a, const Vector& b);

// extension(t, eps, y) must satisfy extension(t, eps, gamma_{a+eps b}(t)) = g_{a+eps b}(t).
using Extension = std::function<Vector(double t, double eps, const Vector& y)>;
Vector solve_one_form_with_extension(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a,
                                     const Vector& b, const Extension& extension);

Vector target(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a);
// d tau_a(b) by central differences of tau(a + s b).
Vector target_differential(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a, const Vector& b);
// |rho(phi_a(b)) - d tau_a(b)|_inf
double anchoredness_defect(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a, const Vector& b);

Vector torsion_bracket(const PreLieAlgebroid& alg, const AuxConnection& aux, const Vector& x, const Vector& u,
                       const Vector& v);

Vector mc_defect(const AlgebroidMCOneForm& form, const AuxConnection& aux, const Vector& x, const Vector& a,
                 const Vector& b, const Vector& c, const numerics::FdConfig& fd = {});

struct Sample {
  Vector x;
  Vector a;
  Vector b;
  Vector c;
};

// Max deviation of the MC defect between two auxiliary connections. Throws
// NotAnchoredError if the form is not anchored (within `anchored_tol`) at a sample.
double verify_connection_independence(const AlgebroidMCOneForm& form, const AuxConnection& aux1,
                                      const AuxConnection& aux2, const std::vector<Sample>& samples,
                                      const numerics::FdConfig& fd = {}, double anchored_tol = 1e-5);

IdentityPair verify_derivative_identity(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a,
                                        const Vector& b, const Vector& c, const numerics::FdConfig& inner = {},
                                        const numerics::FdConfig& outer = {1e-3, false});

IdentityPair verify_integral_identity(const AlgebroidMCOneForm& form, const Vector& x, const Vector& a,
                                      const Vector& b, const Vector& c, const numerics::FdConfig& fd = {});

// One-point base (m = 1), zero anchor, constant structure functions.
PreLieAlgebroid from_lie_algebra(const prelie::PreLieAlgebra& alg);

// T*O with rho^l_i = pi^{il} and c^k_{ij} = d_k pi^{ij}.
PreLieAlgebroid cotangent_algebroid(const poisson::BivectorField& bv, const numerics::FdConfig& fd = {});

struct BridgeSample {
  Vector x;
  Vector xi;
  Vector zeta;
};

struct BridgeConfig {
  numerics::QuadratureRule rule = numerics::QuadratureRule::default_rule();
  numerics::OdeConfig ode = {};
  numerics::FdConfig fd = {};
};

// (grad_x phi_xi(zeta)(x), phi^{T*O}_{xi}(zeta)) at one sample.
IdentityPair poisson_algebroid_bridge_pair(const poisson::BivectorField& bv, const BridgeSample& sample,
                                           const BridgeConfig& cfg = {});

// Max over samples of |grad_x phi_xi(zeta)(x) - phi^{T*O}_{xi}(zeta)|_inf, the
// algebroid side built on cotangent_algebroid(bv) with the zero A-connection.
double verify_poisson_algebroid_bridge(const poisson::BivectorField& bv, const std::vector<BridgeSample>& samples,
                                       const BridgeConfig& cfg = {});

}  // namespace mcforge::algebroid
