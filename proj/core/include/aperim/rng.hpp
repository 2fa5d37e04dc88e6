#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "aperim/types.hpp"

namespace aperim {

/// Deterministic random source. The engine sequence is fixed by the standard;
/// the real-valued transforms are written out here because the standard
/// distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for (seed, stream id); stable across runs and platforms.
  static Rng split(std::uint64_t seed, std::uint64_t stream) { return Rng(mix(mix(seed) ^ mix(stream + 0x632be59bd9b4e019ULL))); }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., n-1}.
  int below(int n) { return static_cast<int>(uniform() * n); }
  bool bernoulli(double p) { return uniform() < p; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * std::numbers::pi * v);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * v);
  }

  Vector gaussian(int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }
  Vector on_sphere(int dim) {
    Vector v = gaussian(dim);
    double n = v.norm();
    while (n == 0.0) {
      v = gaussian(dim);
      n = v.norm();
    }
    return v / n;
  }
  Vector in_ball(int dim) { return on_sphere(dim) * std::pow(uniform(), 1.0 / dim); }
  Vector in_box(int dim, double lo, double hi) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace aperim
