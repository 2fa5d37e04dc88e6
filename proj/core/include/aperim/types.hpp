#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace aperim {

/// Largest ambient dimension supported. Vectors live on the stack up to this size.
inline constexpr int kMaxDim = 6;

using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using PointList = std::vector<Vector>;

// Relative tolerances; multiply by a length scale (usually the diameter).
inline constexpr double kUnitTol = 1e-12;
inline constexpr double kGeoTol = 1e-9;
inline constexpr double kProjTol = 1e-8;

inline Vector make_vector(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline Vector unit_vector(int dim, int axis) {
  Vector v = Vector::Zero(dim);
  v[axis] = 1.0;
  return v;
}

/// Lexicographic order on coordinates; used to make outputs deterministic.
inline bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Volume of the k-dimensional unit ball (omega_1 = 2, omega_2 = pi, ...).
double unit_ball_volume(int k);

}  // namespace aperim
