#include "mcforge/fixtures.hpp"

namespace mcforge::fixtures {

using algebroid::AConnection;
using algebroid::PreLieAlgebroid;

AlgebroidFixture tangent_r2() {
  return {PreLieAlgebroid(
              "tangent_r2", 2, 2, Box::cube(2, 5.0), [](const Vector&) { return Matrix(Matrix::Identity(2, 2)); },
              [](const Vector&) { return Tensor3(2, 2, 2); }),
          AConnection::zero(2)};
}

AlgebroidFixture so3_bundle() { return {algebroid::from_lie_algebra(prelie::so3()), AConnection::zero(3)}; }

AlgebroidFixture geodesic_1d() {
  Tensor3 gamma(1, 1, 1);
  gamma(0, 0, 0) = 1.0;
  return {PreLieAlgebroid(
              "geodesic_1d", 1, 1, Box::cube(1, 10.0), [](const Vector&) { return Matrix(Matrix::Zero(1, 1)); },
              [](const Vector&) { return Tensor3(1, 1, 1); }),
          AConnection::constant(gamma)};
}

std::vector<std::string> algebra_names() { return {"abelian3", "so3", "broken_bracket"}; }

std::vector<std::string> bivector_names() { return {"nonpoisson_r3", "so3_dual", "symplectic_r2"}; }

std::vector<std::string> algebroid_names() {
  std::vector<std::string> out{"tangent_r2"};
  for (const auto& a : algebra_names())
    out.push_back(a + "_bundle");
  for (const auto& b : bivector_names()) out.push_back("cotangent(" + b + ")");
  return out;
}

std::optional<prelie::PreLieAlgebra> find_algebra(const std::string& name) {
  if (name == "abelian3") return prelie::abelian(3);
  if (name == "so3") return prelie::so3();
  if (name == "broken_bracket") return prelie::broken_bracket();
  return std::nullopt;
}

std::optional<poisson::BivectorField> find_bivector(const std::string& name) {
  if (name == "nonpoisson_r3") return poisson::nonpoisson_r3();
  if (name == "so3_dual") return poisson::so3_dual();
  if (name == "symplectic_r2") return poisson::symplectic_r2();
  return std::nullopt;
}

std::optional<AlgebroidFixture> find_algebroid(const std::string& name) {
  if (name == "tangent_r2") return tangent_r2();
  const std::string bundle = "_bundle";
  if (name.size() > bundle.size() && name.compare(name.size() - bundle.size(), bundle.size(), bundle) == 0) {
    if (auto alg = find_algebra(name.substr(0, name.size() - bundle.size())))
      return AlgebroidFixture{algebroid::from_lie_algebra(*alg), AConnection::zero(alg->dim())};
    return std::nullopt;
  }
  const std::string prefix = "cotangent(";
  if (name.rfind(prefix, 0) == 0 && name.back() == ')') {
    if (auto bv = find_bivector(name.substr(prefix.size(), name.size() - prefix.size() - 1)))
      return AlgebroidFixture{algebroid::cotangent_algebroid(*bv), AConnection::zero(bv->dim())};
  }
  return std::nullopt;
}

}  // namespace mcforge::fixtures
