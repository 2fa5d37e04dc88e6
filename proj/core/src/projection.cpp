// Wolfe's minimum-norm-point algorithm over a finite point set.
//
// The iterate is kept as a convex combination of an affinely independent
// active set. A major cycle adds the point minimizing <x, q_j>; minor cycles
// move toward the affine minimizer of the active set and drop points whose
// weight reaches zero. The method is finite in exact arithmetic and returns
// the affine minimizer of the optimal face, so no step-size tolerance enters
// the answer.

#include <algorithm>
#include <limits>

#include <Eigen/QR>

#include "aperim/geometry.hpp"

namespace aperim {
namespace {

constexpr double kGapTol = 1e-14;
constexpr double kWeightTol = 1e-12;

// Minimizer of |sum a_i q_i| subject to sum a_i = 1 over the active set.
std::vector<double> affine_minimizer(const PointList& q, const std::vector<int>& active) {
  const int k = static_cast<int>(active.size());
  if (k == 1) return {1.0};
  const int n = static_cast<int>(q[active[0]].size());
  Eigen::MatrixXd d(n, k - 1);
  for (int i = 1; i < k; ++i) d.col(i - 1) = q[active[i]] - q[active[0]];
  Eigen::VectorXd rhs = -Eigen::VectorXd(q[active[0]]);
  Eigen::VectorXd beta = d.colPivHouseholderQr().solve(rhs);
  std::vector<double> alpha(k);
  double rest = 1.0;
  for (int i = 1; i < k; ++i) {
    alpha[i] = beta[i - 1];
    rest -= beta[i - 1];
  }
  alpha[0] = rest;
  return alpha;
}

Vector combine(const PointList& q, const std::vector<int>& active, const std::vector<double>& w) {
  Vector x = Vector::Zero(q[active[0]].size());
  for (std::size_t i = 0; i < active.size(); ++i) x += w[i] * q[active[i]];
  return x;
}

}  // namespace

Projection project_onto_hull(const PointList& points, const Vector& y, int max_iterations) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "projection onto an empty set");
  PointList q;
  q.reserve(points.size());
  double scale = 0.0;
  int start = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "projection point dimension");
    q.push_back(points[i] - y);
    scale = std::max(scale, q.back().squaredNorm());
    if (q.back().squaredNorm() < q[start].squaredNorm()) start = static_cast<int>(i);
  }
  if (scale == 0.0) return {y, 0.0, 0};

  std::vector<int> active{start};
  std::vector<double> weight{1.0};
  Vector x = q[start];
  int iter = 0;
  for (;; ++iter) {
    if (iter >= max_iterations) throw Error(ErrorCode::NoConvergence, "minimum-norm-point iteration cap reached");
    int j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double v = x.dot(q[i]);
      if (v < best) {
        best = v;
        j = static_cast<int>(i);
      }
    }
    if (x.squaredNorm() - best <= kGapTol * scale) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    if (static_cast<int>(active.size()) > static_cast<int>(y.size())) break;  // affinely dependent: numerically optimal
    active.push_back(j);
    weight.push_back(0.0);

    for (;;) {
      std::vector<double> alpha = affine_minimizer(q, active);
      bool interior = true;
      for (double a : alpha) interior = interior && a > kWeightTol;
      if (interior) {
        weight = std::move(alpha);
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] <= kWeightTol) theta = std::min(theta, weight[i] / (weight[i] - alpha[i]));
      for (std::size_t i = 0; i < alpha.size(); ++i) weight[i] = theta * alpha[i] + (1.0 - theta) * weight[i];
      std::vector<int> keep_active;
      std::vector<double> keep_weight;
      for (std::size_t i = 0; i < weight.size(); ++i) {
        if (weight[i] > kWeightTol) {
          keep_active.push_back(active[i]);
          keep_weight.push_back(weight[i]);
        }
      }
      if (keep_active.empty()) {  // cannot happen with theta <= 1; guard against round-off
        keep_active.push_back(j);
        keep_weight.push_back(1.0);
      }
      double total = 0.0;
      for (double w : keep_weight) total += w;
      for (double& w : keep_weight) w /= total;
      active = std::move(keep_active);
      weight = std::move(keep_weight);
      if (++iter >= max_iterations) throw Error(ErrorCode::NoConvergence, "minimum-norm-point iteration cap reached");
    }
    x = combine(q, active, weight);
  }
  return {y + x, x.norm(), iter};
}

Projection project_point(const ConvexPolytope& p, const Vector& y) {
  if (y.size() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "projection point dimension");
  if (p.max_violation(y) <= 0.0) return {y, 0.0, 0};
  return project_onto_hull(p.vertices(), y);
}

double hull_distance(const PointList& a, const PointList& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "distance to an empty set");
  PointList diff;
  diff.reserve(a.size() * b.size());
  for (const Vector& u : a)
    for (const Vector& v : b) diff.push_back(u - v);
  return project_onto_hull(diff, Vector::Zero(a.front().size())).distance;
}

}  // namespace aperim
