#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mcforge/linalg.hpp"

namespace mcforge::sampling {

// Deterministic uniform source. Uses the raw 64-bit mt19937_64 stream and maps
// it to doubles by hand, so sample points are identical on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Vector in_cube(int n, double half_width) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(-half_width, half_width);
    return v;
  }

  // Uniform in the closed Euclidean ball of the given radius (rejection).
  Vector in_ball(int n, double radius) {
    for (;;) {
      Vector v = in_cube(n, 1.0);
      if (v.squaredNorm() <= 1.0) return radius * v;
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Radical inverse of i in the given prime base.
inline double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * double(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

// First `count` points of the Halton sequence mapped into the unit ball by
// rejection from the cube [-1,1]^n. Deterministic, no seed.
inline std::vector<Vector> halton_ball(int n, int count, double radius = 1.0) {
  static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  if (n > int(std::size(primes))) throw DimensionError("halton_ball: dimension too large");
  std::vector<Vector> out;
  for (std::uint64_t i = 1; int(out.size()) < count; ++i) {
    Vector v(n);
    for (int d = 0; d < n; ++d) v[d] = 2.0 * radical_inverse(i, primes[d]) - 1.0;
    if (v.squaredNorm() <= 1.0) out.push_back(radius * v);
  }
  return out;
}

}  // namespace mcforge::sampling
