#include <doctest.h>

#include <cmath>

#include "mcforge/prelie.hpp"
#include "mcforge/sampling.hpp"

using namespace mcforge;
using namespace mcforge::prelie;

namespace {

Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

const Vector e1 = unit(3, 0), e2 = unit(3, 1), e3 = unit(3, 2);

std::vector<PreLieAlgebra> registered() { return {abelian(3), so3(), broken_bracket()}; }

}  // namespace

TEST_CASE("construction rejects non-antisymmetric constants") {
  Tensor3 c(2, 2, 2);
  c(0, 0, 1) = 1.0;
  CHECK_THROWS_AS(PreLieAlgebra("bad", c), DimensionError);
  c(0, 1, 0) = -1.0;
  CHECK_NOTHROW(PreLieAlgebra("ok", c));
  CHECK(abelian(3).name() == "abelian3");
}

TEST_CASE("bracket") {
  sampling::Sampler rng(3);
  const Vector x = rng.in_ball(3, 1.0), y = rng.in_ball(3, 1.0);
  CHECK(max_abs(bracket(abelian(3), x, y)) == 0.0);
  CHECK(bracket(so3(), e1, e2) == e3);
  for (const auto& alg : registered()) {
    CHECK(max_abs(bracket(alg, x, x)) == 0.0);
    CHECK(bracket(alg, x, y) == Vector(-bracket(alg, y, x)));
  }
  CHECK_THROWS_AS(bracket(so3(), x, Vector::Zero(2)), DimensionError);
}

TEST_CASE("ad operator") {
  CHECK(max_abs(ad(so3(), Vector::Zero(3)).matrix) == 0.0);
  Matrix want = Matrix::Zero(3, 3);
  want(2, 1) = 1.0;
  want(1, 2) = -1.0;
  CHECK(ad(so3(), e1).matrix == want);
  const Vector x = vec3(0.3, -0.4, 0.9);
  for (const auto& alg : registered()) {
    const AdOperator op = ad(alg, x);
    CHECK(max_abs(op.apply(x)) < 1e-15);
    for (int j = 0; j < 3; ++j) CHECK(op.apply(unit(3, j)) == bracket(alg, x, unit(3, j)));
  }
}

TEST_CASE("jacobiator and is_lie") {
  CHECK(max_abs(jacobiator(so3(), e1, e2, e3)) == 0.0);
  CHECK(jacobiator(broken_bracket(), e1, e2, e3) == vec3(0, 0, 1));
  const Vector x = vec3(0.2, 0.5, -0.1), z = vec3(-0.7, 0.1, 0.4);
  for (const auto& alg : registered()) CHECK(max_abs(jacobiator(alg, x, x, z)) < 1e-16);
  CHECK(is_lie(so3(), 1e-10));
  CHECK(is_lie(abelian(3), 1e-10));
  CHECK_FALSE(is_lie(broken_bracket(), 1e-10));
}

TEST_CASE("solve_one_form: closed forms and boundary conditions") {
  const LieMCOneForm ab(abelian(3));
  const Vector y = vec3(0.4, -0.2, 0.8);
  CHECK(max_abs(Vector(solve_one_form(ab, vec3(1, 2, 3), y) - y)) < 1e-14);

  // Rotation about e1 by angle theta t: int_0^1 exp(-t theta ad_e1) e2 dt.
  const LieMCOneForm form(so3());
  const double th = M_PI / 2.0;
  const Vector phi = solve_one_form(form, vec3(th, 0, 0), e2);
  CHECK(std::abs(phi[0]) < 1e-10);
  CHECK(std::abs(phi[1] - std::sin(th) / th) < 1e-10);
  CHECK(std::abs(phi[2] + (1.0 - std::cos(th)) / th) < 1e-10);
  CHECK(std::abs(phi[1] - 2.0 / M_PI) < 1e-10);

  sampling::Sampler rng(5);
  for (const auto& alg : registered()) {
    const LieMCOneForm f(alg);
    for (int i = 0; i < 100; ++i) {
      const Vector x = rng.in_ball(3, 1.0);
      CHECK(max_abs(Vector(solve_one_form(f, x, x) - x)) < 1e-12);
    }
    const Vector yy = rng.in_ball(3, 1.0), zz = rng.in_ball(3, 1.0), x = rng.in_ball(3, 1.0);
    CHECK(max_abs(Vector(solve_one_form(f, Vector::Zero(3), yy) - yy)) < 1e-14);
    const Vector lin = solve_one_form(f, x, 2.0 * yy - 0.5 * zz);
    CHECK(max_abs(Vector(lin - 2.0 * solve_one_form(f, x, yy) + 0.5 * solve_one_form(f, x, zz))) < 1e-12);
  }
}

TEST_CASE("solve_one_form agrees with the ODE route") {
  sampling::Sampler rng(9);
  for (const auto& alg : registered()) {
    const LieMCOneForm f(alg);
    for (int i = 0; i < 10; ++i) {
      const Vector x = rng.in_ball(3, 1.0), y = rng.in_ball(3, 1.0);
      CHECK(max_abs(Vector(solve_one_form(f, x, y) - solve_one_form_by_ode(alg, x, y, {200}))) < 1e-8);
    }
  }
}

TEST_CASE("mc_defect") {
  const Vector x = vec3(0.3, -0.5, 0.2), y = vec3(0.1, 0.9, -0.4), z = vec3(-0.6, 0.2, 0.7);
  CHECK(max_abs(mc_defect(LieMCOneForm(abelian(3)), x, y, z)) < 1e-10);
  for (const auto& alg : registered()) {
    const LieMCOneForm f(alg);
    CHECK(mc_defect(f, x, y, z) == Vector(-mc_defect(f, x, z, y)));
  }
  const LieMCOneForm so(so3());
  for (const Vector& p : sampling::halton_ball(3, 50))
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) CHECK(max_abs(mc_defect(so, p, unit(3, i), unit(3, j))) < 5e-7);
}

TEST_CASE("weak equation holds with or without Jacobi") {
  CHECK(max_abs(verify_weak_equation(LieMCOneForm(broken_bracket()), e1, e2)) < 5e-7);
  CHECK(max_abs(verify_weak_equation(LieMCOneForm(abelian(3)), e1, e2)) < 5e-7);
  sampling::Sampler rng(21);
  const LieMCOneForm so(so3());
  for (int i = 0; i < 10; ++i)
    CHECK(max_abs(verify_weak_equation(so, rng.in_ball(3, 1.0), rng.in_ball(3, 1.0))) < 5e-7);
}

TEST_CASE("derivative identity") {
  const auto ab = verify_derivative_identity(LieMCOneForm(abelian(3)), e1, e2, e3);
  CHECK(max_abs(ab.lhs) == 0.0);
  CHECK(max_abs(ab.rhs) < 1e-10);
  const auto br = verify_derivative_identity(LieMCOneForm(broken_bracket()), e1, e2, e3);
  CHECK(br.lhs == vec3(0, 0, 1));
  CHECK(br.residual() < 1e-4);
  sampling::Sampler rng(2);
  const LieMCOneForm so(so3());
  for (int i = 0; i < 5; ++i) {
    const auto r = verify_derivative_identity(so, rng.in_ball(3, 1.0), rng.in_ball(3, 1.0), rng.in_ball(3, 1.0));
    CHECK(max_abs(r.lhs) < 1e-15);
    CHECK(max_abs(r.rhs) < 1e-4);
  }
}

TEST_CASE("integral identity") {
  const auto so = verify_integral_identity(LieMCOneForm(so3()), vec3(0.3, 0.2, -0.4), e2, e3);
  CHECK(max_abs(so.lhs) < 5e-7);
  CHECK(max_abs(so.rhs) < 5e-7);
  const auto br = verify_integral_identity(LieMCOneForm(broken_bracket()), 0.3 * e1, e2, e3);
  CHECK(max_abs(br.lhs) > 1e-3);
  CHECK(br.residual() < 1e-5);
  const Vector y = vec3(0.5, -0.1, 0.2);
  const auto same = verify_integral_identity(LieMCOneForm(broken_bracket()), e1, y, y);
  CHECK(max_abs(same.lhs) == 0.0);
  CHECK(max_abs(same.rhs) == 0.0);
}

TEST_CASE("Lie iff the MC equation holds") {
  const auto points = sampling::halton_ball(3, 50);
  for (const auto& alg : registered()) {
    const LieMCOneForm f(alg);
    double worst = 0.0;
    for (const Vector& p : points)
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) worst = std::max(worst, max_abs(mc_defect(f, p, unit(3, i), unit(3, j))));
    CHECK(is_lie(alg, 1e-10) == (worst < 1e-5));
  }
}
