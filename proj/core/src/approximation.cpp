#include "aperim/approximation.hpp"

#include <array>
#include <cmath>
#include <map>

#include "aperim/hausdorff.hpp"

namespace aperim {

namespace {

constexpr double kMaxCells = 1e8;

// Box-versus-body intersection with the body's bounding box and facets cached.
class BoxTester {
 public:
  BoxTester(const ConvexPolytope& e, double tol) : e_(e), tol_(tol) {
    const int n = e.dim();
    lo_ = Vector::Constant(n, std::numeric_limits<double>::infinity());
    hi_ = -lo_;
    for (const Vector& v : e.vertices()) {
      lo_ = lo_.cwiseMin(v);
      hi_ = hi_.cwiseMax(v);
    }
  }

  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }

  bool meets(const Vector& lo, const Vector& hi) const {
    const int n = e_.dim();
    for (int i = 0; i < n; ++i)
      if (lo_[i] > hi[i] + tol_ || hi_[i] < lo[i] - tol_) return false;
    const Vector c = 0.5 * (lo + hi);
    const Vector half = 0.5 * (hi - lo);
    // A facet plane separating the box from E proves disjointness.
    for (const Facet& f : e_.facets())
      if (f.inner_normal.dot(c) + f.inner_normal.cwiseAbs().dot(half) < f.offset - tol_) return false;
    if (e_.max_violation(c) <= tol_) return true;
    for (const Vector& v : e_.vertices()) {
      bool inside = true;
      for (int i = 0; i < n && inside; ++i) inside = v[i] >= lo[i] - tol_ && v[i] <= hi[i] + tol_;
      if (inside) return true;
    }
    PointList corners;
    for (int mask = 0; mask < (1 << n); ++mask) {
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1 ? hi[i] : lo[i];
      if (e_.max_violation(x) <= tol_) return true;
      corners.push_back(x);
    }
    // Neither contains a point of the other; decide by the exact distance.
    return hull_distance(e_.vertices(), corners) <= tol_;
  }

 private:
  const ConvexPolytope& e_;
  double tol_;
  Vector lo_, hi_;
};

double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  if (m < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = m * sxx - sx * sx;
  return den != 0.0 ? (m * sxy - sx * sy) / den : 0.0;
}

}  // namespace

bool box_meets(const ConvexPolytope& e, const Vector& lo, const Vector& hi, double tol) {
  if (lo.size() != e.dim() || hi.size() != e.dim()) throw Error(ErrorCode::DimensionMismatch, "box dimension");
  return BoxTester(e, tol).meets(lo, hi);
}

ApproxItem grid_approximation(const ConvexPolytope& e, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "grid approximation needs k >= 1");
  const int n = e.dim();
  const double s = 1.0 / (k * std::sqrt(static_cast<double>(n)));
  const BoxTester tester(e, e.tolerance());

  std::array<long long, kMaxDim> zlo{}, zhi{};
  double total = 1.0;
  for (int i = 0; i < n; ++i) {
    zlo[i] = static_cast<long long>(std::floor(tester.lo()[i] / s)) - 1;
    zhi[i] = static_cast<long long>(std::floor(tester.hi()[i] / s)) + 1;
    total *= static_cast<double>(zhi[i] - zlo[i] + 1);
  }
  if (total > kMaxCells) throw Error(ErrorCode::GridTooFine, "grid approximation would scan more than 1e8 cells");

  // Cubes meeting E in one column (fixed first n-1 indices) form an interval
  // of the last index, and only its two ends contribute extreme corners. The
  // hull input keeps, per corner position in the first n-1 coordinates, the
  // lowest and highest last coordinate seen.
  using Key = std::array<long long, kMaxDim>;
  std::map<Key, std::pair<long long, long long>> extremes;
  ApproxItem item;
  item.k = k;
  const int last = n - 1;
  Key z{};
  for (int i = 0; i < last; ++i) z[i] = zlo[i];
  Vector lo(n), hi(n);
  for (bool more = true; more;) {
    for (int i = 0; i < last; ++i) {
      lo[i] = z[i] * s;
      hi[i] = (z[i] + 1) * s;
    }
    lo[last] = zlo[last] * s;
    hi[last] = (zhi[last] + 1) * s;
    if (tester.meets(lo, hi)) {
      auto cell_meets = [&](long long j) {
        lo[last] = j * s;
        hi[last] = (j + 1) * s;
        return tester.meets(lo, hi);
      };
      long long a = zlo[last], b = zhi[last];
      while (a <= b && !cell_meets(a)) ++a;
      while (b >= a && !cell_meets(b)) --b;
      if (a <= b) {
        item.cells += b - a + 1;
        for (int mask = 0; mask < (1 << last); ++mask) {
          Key corner{};
          for (int i = 0; i < last; ++i) corner[i] = z[i] + ((mask >> i) & 1);
          auto [it, fresh] = extremes.try_emplace(corner, a, b + 1);
          if (!fresh) {
            it->second.first = std::min(it->second.first, a);
            it->second.second = std::max(it->second.second, b + 1);
          }
        }
      }
    }
    // Advance the odometer over the first n-1 indices.
    more = false;
    for (int i = 0; i < last; ++i) {
      if (++z[i] <= zhi[i]) {
        more = true;
        break;
      }
      z[i] = zlo[i];
    }
  }
  if (extremes.empty()) throw Error(ErrorCode::DegenerateInput, "no grid cube meets the body");

  PointList pts;
  for (const auto& [corner, range] : extremes) {
    Vector x(n);
    for (int i = 0; i < last; ++i) x[i] = corner[i] * s;
    x[last] = range.first * s;
    pts.push_back(x);
    x[last] = range.second * s;
    pts.push_back(x);
  }
  item.polytope = ConvexPolytope::hull(pts);
  item.lambda = hausdorff_nested(e, item.polytope).h;
  item.vol_gap = item.polytope.volume() - e.volume();
  item.perim = item.polytope.boundary_measure();
  item.perim_gap = item.perim - e.boundary_measure();
  return item;
}

ConvergenceTable convergence_suite(const ConvexPolytope& e, int k_max) {
  if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "convergence suite needs k_max >= 1");
  ConvergenceTable t;
  std::vector<double> lk, lv, lkp, lp;
  for (int k = 1; k <= k_max; ++k) {
    ApproxItem item = grid_approximation(e, k);
    t.vol_constant = std::max(t.vol_constant, k * item.vol_gap);
    t.perim_constant = std::max(t.perim_constant, k * item.perim_gap);
    if (item.vol_gap > 0.0) {
      lk.push_back(std::log(k));
      lv.push_back(std::log(item.vol_gap));
    }
    if (item.perim_gap > 0.0) {
      lkp.push_back(std::log(k));
      lp.push_back(std::log(item.perim_gap));
    }
    t.items.push_back(std::move(item));
  }
  t.vol_gap_decreased = t.items.back().vol_gap <= t.items.front().vol_gap;
  t.perim_gap_decreased = t.items.back().perim_gap <= t.items.front().perim_gap;
  t.vol_rate = log_slope(lk, lv);
  t.perim_rate = log_slope(lkp, lp);
  return t;
}

Vector gauss_measure_pairing(const ConvexPolytope& p, const Vector& c, double d) {
  if (c.size() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "pairing gradient dimension");
  Vector out = Vector::Zero(p.dim());
  for (const Facet& f : p.facets()) out += f.inner_normal * (f.measure * (c.dot(f.centroid) + d));
  return out;
}

}  // namespace aperim
