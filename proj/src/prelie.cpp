#include "mcforge/prelie.hpp"

#include <cmath>
#include <string>

namespace mcforge::prelie {

PreLieAlgebra::PreLieAlgebra(std::string name, Tensor3 constants)
    : name_(std::move(name)), constants_(std::move(constants)) {
  const int n = constants_.dim0();
  if (n < 1 || constants_.dim1() != n || constants_.dim2() != n)
    throw DimensionError("PreLieAlgebra: structure constants must be n x n x n with n >= 1");
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (constants_(k, i, j) != -constants_(k, j, i))
          throw DimensionError("PreLieAlgebra '" + name_ + "': constants not antisymmetric at (" +
                               std::to_string(k) + "," + std::to_string(i) + "," + std::to_string(j) + ")");
}

PreLieAlgebra PreLieAlgebra::from_brackets(std::string name, int dim, const std::vector<BracketEntry>& entries) {
  Tensor3 c(dim, dim, dim);
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.i >= dim || e.j >= dim) throw DimensionError("from_brackets: index out of range");
    require_size(e.value, dim, "from_brackets");
    for (int k = 0; k < dim; ++k) {
      c(k, e.i, e.j) = e.value[k];
      c(k, e.j, e.i) = -e.value[k];
    }
  }
  return PreLieAlgebra(std::move(name), std::move(c));
}

PreLieAlgebra abelian(int dim) { return PreLieAlgebra("abelian" + std::to_string(dim), Tensor3(dim, dim, dim)); }

PreLieAlgebra so3() {
  return PreLieAlgebra::from_brackets("so3", 3,
                                      {{0, 1, unit(3, 2)}, {1, 2, unit(3, 0)}, {2, 0, unit(3, 1)}});
}

PreLieAlgebra broken_bracket() {
  return PreLieAlgebra::from_brackets("broken_bracket", 3,
                                      {{0, 1, unit(3, 2)}, {1, 2, unit(3, 0)}, {2, 0, unit(3, 0)}});
}

Vector bracket(const PreLieAlgebra& alg, const Vector& x, const Vector& y) {
  const int n = alg.dim();
  require_size(x, n, "bracket");
  require_size(y, n, "bracket");
  Vector out = Vector::Zero(n);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) acc += alg.constant(k, i, j) * (x[i] * y[j] - x[j] * y[i]);
    out[k] = acc;
  }
  return out;
}

AdOperator ad(const PreLieAlgebra& alg, const Vector& x) {
  const int n = alg.dim();
  require_size(x, n, "ad");
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += alg.constant(k, i, j) * x[i];
      m(k, j) = acc;
    }
  return {m};
}

Vector jacobiator(const PreLieAlgebra& alg, const Vector& x, const Vector& y, const Vector& z) {
  return bracket(alg, bracket(alg, x, y), z) + bracket(alg, bracket(alg, y, z), x) +
         bracket(alg, bracket(alg, z, x), y);
}

double max_basis_jacobiator(const PreLieAlgebra& alg) {
  const int n = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        worst = std::max(worst, max_abs(jacobiator(alg, unit(n, i), unit(n, j), unit(n, k))));
  return worst;
}

bool is_lie(const PreLieAlgebra& alg, double tol) { return max_basis_jacobiator(alg) <= tol; }

Vector solve_one_form(const LieMCOneForm& form, const Vector& x, const Vector& y) {
  const PreLieAlgebra& alg = form.algebra();
  require_size(y, alg.dim(), "solve_one_form");
  const Matrix adx = ad(alg, x).matrix;
  return numerics::integrate([&](double t) -> Vector { return numerics::expm(-t * adx) * y; }, form.rule());
}

Vector solve_one_form_by_ode(const PreLieAlgebra& alg, const Vector& x, const Vector& y,
                             const numerics::OdeConfig& ode) {
  require_size(y, alg.dim(), "solve_one_form_by_ode");
  const Matrix adx = ad(alg, x).matrix;
  const auto field = [&](double, const Vector& beta) -> Vector { return y - adx * beta; };
  return numerics::solve_ivp(field, 0.0, 1.0, Vector::Zero(alg.dim()), ode).final_state();
}

Vector mc_defect(const LieMCOneForm& form, const Vector& x, const Vector& y, const Vector& z,
                 const numerics::FdConfig& fd) {
  const auto along = [&](const Vector& dir, const Vector& arg) {
    return numerics::central_diff([&](double s) -> Vector { return solve_one_form(form, x + s * dir, arg); }, 0.0,
                                  fd);
  };
  const Vector d_phi = along(y, z) - along(z, y);
  return d_phi + bracket(form.algebra(), solve_one_form(form, x, y), solve_one_form(form, x, z));
}

Vector verify_weak_equation(const LieMCOneForm& form, const Vector& x, const Vector& y,
                            const numerics::FdConfig& fd) {
  return mc_defect(form, x, x, y, fd);
}

IdentityPair verify_derivative_identity(const LieMCOneForm& form, const Vector& x, const Vector& y,
                                        const Vector& z, const numerics::FdConfig& inner,
                                        const numerics::FdConfig& outer) {
  const Vector lhs = jacobiator(form.algebra(), x, y, z);
  const Vector slope =
      numerics::central_diff([&](double t) -> Vector { return mc_defect(form, t * x, y, z, inner); }, 0.0, outer);
  return {lhs, -3.0 * slope};
}

IdentityPair verify_integral_identity(const LieMCOneForm& form, const Vector& x, const Vector& y,
                                      const Vector& z, const numerics::FdConfig& fd) {
  const PreLieAlgebra& alg = form.algebra();
  const Vector lhs = mc_defect(form, x, y, z, fd);
  const Matrix adx = ad(alg, x).matrix;
  const Vector integral = numerics::integrate(
      [&](double t) -> Vector {
        const Vector py = solve_one_form(form, t * x, t * y);
        const Vector pz = solve_one_form(form, t * x, t * z);
        return numerics::expm((t - 1.0) * adx) * jacobiator(alg, x, py, pz);
      },
      form.rule());
  return {lhs, -integral};
}

}  // namespace mcforge::prelie
