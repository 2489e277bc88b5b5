#include <doctest.h>

#include <cmath>

#include "mcforge/poisson.hpp"
#include "mcforge/prelie.hpp"
#include "mcforge/sampling.hpp"

using namespace mcforge;
using namespace mcforge::poisson;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(Eigen::Index(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}

Covector cov(std::initializer_list<double> v) { return Covector{vec(v)}; }

Covector basis(int n, int i) { return Covector{unit(n, i)}; }

}  // namespace

TEST_CASE("bivector fields are antisymmetric and domain checked") {
  const BivectorField bv = nonpoisson_r3();
  const Vector x = vec({0.4, -1.0, 2.0});
  const Matrix p = bv(x);
  CHECK(p == Matrix(-p.transpose()));
  CHECK(p(0, 1) == 0.4);
  CHECK(p(0, 2) == -1.0);
  CHECK(p(1, 2) == 0.0);
  CHECK_THROWS_AS(bv(vec({3.5, 0, 0})), OutOfDomainError);
  CHECK(bv.closed_form_gradient());
  const Matrix d0 = bv.partial(x, 0);
  CHECK(d0(0, 1) == 1.0);
  CHECK(d0(1, 0) == -1.0);
}

TEST_CASE("hamiltonian_field") {
  const Vector x = vec({0.1, 0.2});
  CHECK(max_abs(hamiltonian_field(zero_bivector(2), cov({1, 0}))(x)) == 0.0);
  CHECK(hamiltonian_field(symplectic_r2(), cov({1, 0}))(x) == vec({0, 1}));
  // On so(3)*, X_{e1}(x) = ad_{e1}^T x.
  const Vector y = vec({0, 0, 1});
  const Matrix adt = prelie::ad(prelie::so3(), unit(3, 0)).matrix.transpose();
  CHECK(max_abs(Vector(hamiltonian_field(so3_dual(), basis(3, 0))(y) - adt * y)) < 1e-15);
}

TEST_CASE("solve_one_form: closed forms and boundary condition") {
  const Vector x = vec({0.3, -0.4, 0.1});
  const PoissonMCOneForm zero(zero_bivector(3));
  CHECK(solve_one_form(zero, x, cov({0.5, 0.1, 0.2}), cov({1, 2, 3})) == doctest::Approx(0.3 - 0.8 + 0.3));

  const PoissonMCOneForm sym(symplectic_r2());
  CHECK(std::abs(solve_one_form(sym, vec({0, 0}), cov({1, 0}), cov({0, 1})) + 0.5) < 1e-12);

  sampling::Sampler rng(4);
  for (const auto& bv : {nonpoisson_r3(), so3_dual()}) {
    const PoissonMCOneForm f(bv);
    for (int i = 0; i < 10; ++i) {
      const Vector p = rng.in_cube(3, 0.5);
      const Covector xi{rng.in_ball(3, 0.3)};
      CHECK(std::abs(solve_one_form(f, p, xi, xi) - xi(p)) < 1e-10);
      CHECK(std::abs(solve_one_form(f, p, Covector{Vector::Zero(3)}, xi) - xi(p)) < 1e-14);
    }
  }
}

TEST_CASE("solve_one_form reports the exit time when the flow leaves the box") {
  const PoissonMCOneForm f(symplectic_r2());
  try {
    solve_one_form(f, vec({0, 2.9}), cov({10, 0}), cov({0, 1}));
    FAIL("expected OutOfDomainError");
  } catch (const OutOfDomainError& e) {
    CHECK(e.exit_time() > 0.0);
    CHECK(e.exit_time() <= 1.0);
  }
}

TEST_CASE("linear Poisson bridge to so(3)") {
  const PoissonMCOneForm f(so3_dual());
  const prelie::LieMCOneForm lie(prelie::so3());
  sampling::Sampler rng(8);
  for (int i = 0; i < 20; ++i) {
    const Vector x = rng.in_cube(3, 1.0);
    const Vector xi = rng.in_ball(3, 0.5), zeta = rng.in_ball(3, 1.0);
    // The coadjoint sign: pi^{ij}(x) = eps_ijk x_k gives {xi, zeta} = <[xi, zeta], x>.
    CHECK(std::abs(solve_one_form(f, x, {xi}, {zeta}) - prelie::solve_one_form(lie, xi, zeta).dot(x)) < 1e-8);
  }
}

TEST_CASE("jacobiator_linear") {
  const Vector x = vec({0.2, 0.1, -0.3});
  CHECK(jacobiator_linear(zero_bivector(3), basis(3, 0), basis(3, 1), basis(3, 2), x) == 0.0);
  CHECK(jacobiator_linear(so3_dual(), basis(3, 0), basis(3, 1), basis(3, 2), x) == 0.0);
  sampling::Sampler rng(1);
  for (int i = 0; i < 10; ++i)
    CHECK(jacobiator_linear(nonpoisson_r3(), basis(3, 0), basis(3, 1), basis(3, 2), rng.in_cube(3, 2.0)) == -1.0);
}

TEST_CASE("mc_defect") {
  const Vector x = vec({0.3, -0.2, 0.5});
  const Covector xi = cov({0.2, -0.1, 0.15}), zeta = cov({0.3, 0.8, -0.5}), eta = cov({-0.6, 0.1, 0.4});
  CHECK(std::abs(mc_defect(PoissonMCOneForm(zero_bivector(3)), x, xi, zeta, eta)) < 1e-10);
  const PoissonMCOneForm so(so3_dual());
  CHECK(std::abs(mc_defect(so, x, xi, zeta, eta)) < 1e-4);
  const PoissonMCOneForm np(nonpoisson_r3());
  const double d = mc_defect(np, x, xi, zeta, eta);
  CHECK(std::abs(d) > 1e-3);
  CHECK(std::abs(d + mc_defect(np, x, xi, eta, zeta)) < 1e-8);
  CHECK(std::abs(d - verify_integral_identity(np, x, xi, zeta, eta).rhs) < 1e-4);
}

TEST_CASE("derivative and integral identities") {
  const Vector x = vec({0.3, -0.2, 0.5});
  const Covector xi = cov({0.2, -0.1, 0.15});
  const PoissonMCOneForm np(nonpoisson_r3());
  const auto d = verify_derivative_identity(np, x, basis(3, 0), basis(3, 1), basis(3, 2));
  CHECK(d.lhs == -1.0);
  CHECK(d.residual() < 2e-3);
  const auto in = verify_integral_identity(np, x, xi, basis(3, 1), basis(3, 2));
  CHECK(in.residual() < 1e-3);

  const PoissonMCOneForm so(so3_dual());
  const auto ds = verify_derivative_identity(so, x, basis(3, 0), basis(3, 1), basis(3, 2));
  CHECK(ds.lhs == 0.0);
  CHECK(std::abs(ds.rhs) < 2e-3);
  const auto is = verify_integral_identity(so, x, xi, basis(3, 1), basis(3, 2));
  CHECK(std::abs(is.lhs) < 1e-4);
  CHECK(std::abs(is.rhs) < 1e-4);

  const PoissonMCOneForm zero(zero_bivector(3));
  const auto dz = verify_derivative_identity(zero, x, basis(3, 0), basis(3, 1), basis(3, 2));
  CHECK(dz.lhs == 0.0);
  CHECK(std::abs(dz.rhs) < 1e-10);
}

TEST_CASE("symplectic matrix at the zero section") {
  const Vector z2 = Vector::Zero(2);
  const SymplecticCandidate zero = symplectic_matrix(PoissonMCOneForm(zero_bivector(2)), z2, Covector{z2});
  Matrix canonical = Matrix::Zero(4, 4);
  canonical.topRightCorner(2, 2) = Matrix::Identity(2, 2);
  canonical.bottomLeftCorner(2, 2) = -Matrix::Identity(2, 2);
  CHECK(max_abs(Matrix(zero.omega - canonical)) < 1e-8);
  CHECK(zero.omega == Matrix(-zero.omega.transpose()));

  // With pi != 0 the fiber-fiber block at xi = 0 is omega(xi_l, xi_k) = pi^{kl}.
  const SymplecticCandidate sym = symplectic_matrix(PoissonMCOneForm(symplectic_r2()), z2, Covector{z2});
  Matrix want = canonical;
  want(2, 3) = -1.0;
  want(3, 2) = 1.0;
  CHECK(max_abs(Matrix(sym.omega - want)) < 1e-8);
}

TEST_CASE("realization defect") {
  sampling::Sampler rng(6);
  for (const auto& bv : {nonpoisson_r3(), so3_dual(), zero_bivector(3)}) {
    const PoissonMCOneForm f(bv);
    const Vector x = rng.in_cube(3, 0.5);
    CHECK(max_abs(realization_defect(f, x, Covector{Vector::Zero(3)})) < 1e-6);
  }
  CHECK(max_abs(realization_defect(PoissonMCOneForm(symplectic_r2()), vec({0.1, 0.2}), cov({0, 0}))) < 1e-6);

  const PoissonMCOneForm so(so3_dual());
  for (int i = 0; i < 10; ++i)
    CHECK(max_abs(realization_defect(so, rng.in_cube(3, 0.5), Covector{rng.in_ball(3, 0.2)})) < 1e-4);

  // Frozen sample for the non-Poisson fixture. The constant was obtained by
  // brute-force inversion of omega (Eigen full-pivot LU) at norm 0.2.
  const PoissonMCOneForm np(nonpoisson_r3());
  const Vector x = vec({0.3, -0.2, 0.5});
  const Vector dir = vec({0.2, -0.1, 0.15}).normalized();
  for (double s : {0.05, 0.1, 0.15, 0.2}) {
    const Covector xi{s * dir};
    const SymplecticCandidate c = symplectic_matrix(np, x, xi);
    const Matrix brute = Matrix(-c.omega.fullPivLu().inverse()).topLeftCorner(3, 3) - np.bivector()(x);
    const Matrix defect = realization_defect(np, x, xi);
    CHECK(max_abs(Matrix(defect - brute)) < 1e-9);
    CHECK(max_abs(defect) >= 1e-3 * s);
  }
  CHECK(max_abs(realization_defect(np, x, Covector{0.2 * dir})) >= 0.0499);
}

TEST_CASE("Poisson iff the MC equation holds") {
  sampling::Sampler rng(12);
  for (const auto& bv : {nonpoisson_r3(), so3_dual(), zero_bivector(3)}) {
    const PoissonMCOneForm f(bv);
    double jac = 0.0, mc = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Vector x = rng.in_cube(3, 0.5);
      jac = std::max(jac, std::abs(jacobiator_linear(bv, basis(3, 0), basis(3, 1), basis(3, 2), x)));
      mc = std::max(mc, std::abs(mc_defect(f, x, Covector{rng.in_ball(3, 0.2)}, basis(3, 1), basis(3, 2))));
    }
    CHECK((jac < 1e-8) == (mc < 1e-4));
  }
}
