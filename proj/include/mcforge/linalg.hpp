#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mcforge/errors.hpp"

namespace mcforge {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Dense rank-3 array with index order (k, i, j). Used for structure
// functions c^k_{ij}, connection symbols and frame Jacobiators.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int d0, int d1, int d2) : d0_(d0), d1_(d1), d2_(d2), data_(std::size_t(d0) * d1 * d2, 0.0) {}

  double& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }
  double operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }

  int dim0() const { return d0_; }
  int dim1() const { return d1_; }
  int dim2() const { return d2_; }
  const std::vector<double>& data() const { return data_; }

  // sum_{i,j} T(k,i,j) u_i v_j
  Vector contract(const Vector& u, const Vector& v) const {
    Vector out = Vector::Zero(d0_);
    for (int k = 0; k < d0_; ++k)
      for (int i = 0; i < d1_; ++i)
        for (int j = 0; j < d2_; ++j) out[k] += (*this)(k, i, j) * u[i] * v[j];
    return out;
  }

 private:
  std::size_t index(int k, int i, int j) const { return (std::size_t(k) * d1_ + i) * d2_ + j; }

  int d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<double> data_;
};

// Open axis-aligned box in R^n.
struct Box {
  Vector lower;
  Vector upper;

  static Box cube(int n, double half_width) {
    return Box{Vector::Constant(n, -half_width), Vector::Constant(n, half_width)};
  }

  int dim() const { return int(lower.size()); }

  bool contains(const Vector& x) const {
    if (x.size() != lower.size()) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (!(x[i] > lower[i] && x[i] < upper[i])) return false;
    return true;
  }
};

inline void require_size(const Vector& v, Eigen::Index n, const char* what) {
  if (v.size() != n)
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(n) + ", got " +
                         std::to_string(v.size()));
}

inline double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }
inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline Vector unit(int n, int i) {
  Vector e = Vector::Zero(n);
  e[i] = 1.0;
  return e;
}

// Residual pair returned by every identity verifier.
struct IdentityPair {
  Vector lhs;
  Vector rhs;
  double residual() const { return max_abs(Vector(lhs - rhs)); }
};

}  // namespace mcforge
