// Convex hull construction for ConvexPolytope.
//
// d = 1: min/max. d = 2: Andrew's monotone chain with a collinearity
// tolerance. d >= 3: beneath-beyond (quickhull order) on a deterministically
// perturbed copy of the input, so that every simplicial facet is
// non-degenerate; the simplicial facets are then flood-filled into true
// facets in the original coordinates and every facet is rebuilt recursively
// in its own (d-1)-frame. Extreme points are exactly the vertices of the
// facet polytopes, which drops points that only became vertices through the
// perturbation.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>

#include <Eigen/QR>

#include "aperim/geometry.hpp"

namespace aperim {
namespace {

constexpr double kPerturbation = 1e-11;  // relative to the bounding-box diagonal
constexpr double kDegenerateSpan = 1e-10;
constexpr double kCoplanar = 1e-10;
constexpr double kCollinear = 1e-13;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double hash_unit(std::uint64_t key) {
  return static_cast<double>(splitmix64(key) >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

double bbox_diagonal(const PointList& pts, const std::vector<int>& ids) {
  const auto d = pts[ids.front()].size();
  Vector lo = pts[ids.front()], hi = pts[ids.front()];
  for (int id : ids) {
    lo = lo.cwiseMin(pts[id]);
    hi = hi.cwiseMax(pts[id]);
  }
  (void)d;
  return (hi - lo).norm();
}

// Indices of pairwise distinct points (first occurrence wins).
std::vector<int> dedupe(const PointList& pts, double tol) {
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pts[a][0] != pts[b][0]) return pts[a][0] < pts[b][0];
    return a < b;
  });
  std::vector<char> dropped(pts.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (dropped[order[i]]) continue;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (pts[order[j]][0] - pts[order[i]][0] > tol) break;
      if (!dropped[order[j]] && (pts[order[j]] - pts[order[i]]).norm() <= tol) {
        // keep the smaller input index
        if (order[j] < order[i]) {
          dropped[order[i]] = 1;
          break;
        }
        dropped[order[j]] = 1;
      }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i)
    if (!dropped[i]) out.push_back(i);
  return out;
}

struct FacetGroup {
  Vector inner_normal;
  std::vector<int> ids;
};

double cross2(const Vector& o, const Vector& a, const Vector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<FacetGroup> polygon_groups(const PointList& pts, std::vector<int> ids, double scale) {
  std::sort(ids.begin(), ids.end(), [&](int a, int b) { return lex_less(pts[a], pts[b]); });
  const double tol = kCollinear * scale * scale;
  std::vector<int> chain(2 * ids.size());
  std::size_t k = 0;
  // Exact-sign chain first: a tolerance here can drop a true corner when the
  // lexicographic order of a near-vertical column is decided by round-off.
  for (int id : ids) {
    while (k >= 2 && cross2(pts[chain[k - 2]], pts[chain[k - 1]], pts[id]) <= 0.0) --k;
    chain[k++] = id;
  }
  for (std::size_t i = ids.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(pts[chain[k - 2]], pts[chain[k - 1]], pts[ids[i]]) <= 0.0) --k;
    chain[k++] = ids[i];
  }
  chain.resize(k > 0 ? k - 1 : 0);
  // Then drop vertices that are collinear within tolerance.
  for (bool changed = true; changed && chain.size() >= 3;) {
    changed = false;
    for (std::size_t i = 0; i < chain.size() && chain.size() >= 3; ++i) {
      const std::size_t m = chain.size();
      if (cross2(pts[chain[(i + m - 1) % m]], pts[chain[i]], pts[chain[(i + 1) % m]]) <= tol) {
        chain.erase(chain.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (chain.size() < 3) throw Error(ErrorCode::DegenerateInput, "points are collinear");
  // Restart the cycle at the lexicographically smallest vertex.
  std::rotate(chain.begin(), std::min_element(chain.begin(), chain.end(), [&](int a, int b) { return lex_less(pts[a], pts[b]); }), chain.end());

  std::vector<FacetGroup> groups;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const int a = chain[i];
    const int b = chain[(i + 1) % chain.size()];
    const Vector e = pts[b] - pts[a];
    Vector n(2);
    n << -e[1], e[0];
    groups.push_back({n / n.norm(), {a, b}});
  }
  return groups;
}

// Hyperplane through d points of R^d. Returns the (d-1)-measure of their simplex.
double plane_through(const PointList& pts, const int* ids, int d, Vector& normal, double& offset) {
  Matrix m(d, d - 1);
  for (int j = 1; j < d; ++j) m.col(j - 1) = pts[ids[j]] - pts[ids[0]];
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  normal = q.col(d - 1);
  offset = normal.dot(pts[ids[0]]);
  double measure = 1.0;
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < d - 1; ++j) measure *= std::abs(r(j, j)) / static_cast<double>(j + 1);
  return measure;
}

struct SimplexFacet {
  std::array<int, kMaxDim> v{};
  std::array<int, kMaxDim> nb{};
  Vector normal;  // outward
  double offset = 0.0;
  std::vector<int> outside;
  int far = -1;
  double far_dist = 0.0;
  bool alive = true;
  int visit = -1;
  bool visible = false;
};

class BeneathBeyond {
 public:
  BeneathBeyond(const PointList& pts, int d, double eps) : pts_(pts), d_(d), eps_(eps) {}

  std::vector<SimplexFacet>& facets() { return facets_; }
  const Vector& interior() const { return interior_; }

  void run(const std::vector<int>& simplex, const std::vector<int>& others) {
    interior_ = Vector::Zero(d_);
    for (int id : simplex) interior_ += pts_[id];
    interior_ /= static_cast<double>(simplex.size());

    for (int i = 0; i <= d_; ++i) {
      SimplexFacet f;
      int slot = 0;
      for (int j = 0; j <= d_; ++j) {
        if (j == i) continue;
        f.v[slot] = simplex[j];
        f.nb[slot] = j;  // facet j is opposite vertex simplex[j]
        ++slot;
      }
      orient(f);
      facets_.push_back(std::move(f));
    }
    std::vector<int> fresh(facets_.size());
    std::iota(fresh.begin(), fresh.end(), 0);
    distribute(others, fresh);

    std::vector<int> work;
    for (int i = 0; i <= d_; ++i)
      if (!facets_[i].outside.empty()) work.push_back(i);

    int round = 0;
    while (!work.empty()) {
      const int fi = work.back();
      work.pop_back();
      if (!facets_[fi].alive || facets_[fi].outside.empty()) continue;
      const int apex = facets_[fi].far;
      add_point(fi, apex, round++, work);
    }
  }

 private:
  double dist(const SimplexFacet& f, int p) const { return f.normal.dot(pts_[p]) - f.offset; }

  void orient(SimplexFacet& f) {
    plane_through(pts_, f.v.data(), d_, f.normal, f.offset);
    if (f.normal.dot(interior_) - f.offset > 0.0) {
      f.normal = -f.normal;
      f.offset = -f.offset;
    }
  }

  void distribute(const std::vector<int>& points, const std::vector<int>& targets) {
    for (int p : points) {
      for (int t : targets) {
        SimplexFacet& f = facets_[t];
        const double dd = dist(f, p);
        if (dd > eps_) {
          f.outside.push_back(p);
          if (dd > f.far_dist) {
            f.far_dist = dd;
            f.far = p;
          }
          break;
        }
      }
    }
  }

  void add_point(int start, int apex, int round, std::vector<int>& work) {
    std::vector<int> visible{start};
    facets_[start].visit = round;
    facets_[start].visible = true;
    std::vector<std::pair<int, int>> horizon;  // (visible facet, slot)
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const int fi = visible[q];
      for (int s = 0; s < d_; ++s) {
        const int ni = facets_[fi].nb[s];
        SimplexFacet& n = facets_[ni];
        if (n.visit != round) {
          n.visit = round;
          n.visible = dist(n, apex) > eps_;
          if (n.visible) visible.push_back(ni);
        }
        if (!n.visible) horizon.emplace_back(fi, s);
      }
    }

    using RidgeKey = std::array<int, kMaxDim>;
    std::map<RidgeKey, std::pair<int, int>> open;
    std::vector<int> created;
    for (auto [fi, s] : horizon) {
      SimplexFacet nf;
      nf.v = facets_[fi].v;
      nf.v[s] = apex;
      const int outer = facets_[fi].nb[s];
      nf.nb[s] = outer;
      orient(nf);
      const int id = static_cast<int>(facets_.size());
      facets_.push_back(std::move(nf));
      created.push_back(id);
      SimplexFacet& o = facets_[outer];
      for (int k = 0; k < d_; ++k)
        if (o.nb[k] == fi) o.nb[k] = id;

      for (int j = 0; j < d_; ++j) {
        if (j == s) continue;
        RidgeKey key;
        key.fill(-1);
        int c = 0;
        for (int k = 0; k < d_; ++k)
          if (k != j) key[c++] = facets_[id].v[k];
        std::sort(key.begin(), key.begin() + c);
        auto it = open.find(key);
        if (it == open.end()) {
          open.emplace(key, std::make_pair(id, j));
        } else {
          facets_[id].nb[j] = it->second.first;
          facets_[it->second.first].nb[it->second.second] = id;
          open.erase(it);
        }
      }
    }

    std::vector<int> orphans;
    for (int fi : visible) {
      SimplexFacet& f = facets_[fi];
      f.alive = false;
      for (int p : f.outside)
        if (p != apex) orphans.push_back(p);
      f.outside.clear();
      f.outside.shrink_to_fit();
    }
    distribute(orphans, created);
    for (int id : created)
      if (!facets_[id].outside.empty()) work.push_back(id);
  }

  const PointList& pts_;
  int d_;
  double eps_;
  Vector interior_;
  std::vector<SimplexFacet> facets_;
};

std::vector<int> initial_simplex(const PointList& pts, const std::vector<int>& ids, int d, double scale) {
  std::vector<int> chosen;
  int first = ids.front();
  for (int id : ids)
    if (lex_less(pts[id], pts[first])) first = id;
  chosen.push_back(first);
  std::vector<Vector> basis;
  for (int k = 0; k < d; ++k) {
    int best = -1;
    double best_dist = -1.0;
    for (int id : ids) {
      Vector r = pts[id] - pts[first];
      for (const Vector& b : basis) r -= r.dot(b) * b;
      const double dd = r.norm();
      if (dd > best_dist) {
        best_dist = dd;
        best = id;
      }
    }
    if (best_dist <= kDegenerateSpan * scale)
      throw Error(ErrorCode::DegenerateInput, "points span fewer than " + std::to_string(d) + " dimensions");
    Vector r = pts[best] - pts[first];
    for (const Vector& b : basis) r -= r.dot(b) * b;
    basis.push_back(r / r.norm());
    chosen.push_back(best);
  }
  return chosen;
}

std::vector<FacetGroup> simplicial_groups(const PointList& pts, const std::vector<int>& ids, int d, double scale) {
  const std::vector<int> simplex = initial_simplex(pts, ids, d, scale);

  // Work on a compact perturbed copy; local index i <-> input id ids[i].
  PointList work(ids.size());
  std::vector<int> local_of(pts.size(), -1);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    local_of[ids[i]] = static_cast<int>(i);
    work[i] = pts[ids[i]];
    for (int a = 0; a < d; ++a)
      work[i][a] += kPerturbation * scale * hash_unit(static_cast<std::uint64_t>(ids[i]) * kMaxDim + a);
  }
  std::vector<int> local_simplex;
  std::vector<char> in_simplex(ids.size(), 0);
  for (int id : simplex) {
    local_simplex.push_back(local_of[id]);
    in_simplex[local_of[id]] = 1;
  }
  std::vector<int> others;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (!in_simplex[i]) others.push_back(static_cast<int>(i));

  BeneathBeyond bb(work, d, 1e-14 * scale);
  bb.run(local_simplex, others);

  // Re-evaluate every simplicial facet in the original coordinates.
  PointList orig(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) orig[i] = pts[ids[i]];
  auto& facets = bb.facets();
  struct Item {
    int facet;
    Vector normal;
    double offset;
    double measure;
  };
  std::vector<Item> items;
  std::vector<int> item_of(facets.size(), -1);
  for (std::size_t fi = 0; fi < facets.size(); ++fi) {
    if (!facets[fi].alive) continue;
    Item it{static_cast<int>(fi), Vector(), 0.0, 0.0};
    it.measure = plane_through(orig, facets[fi].v.data(), d, it.normal, it.offset);
    if (it.normal.dot(facets[fi].normal) < 0.0) {
      it.normal = -it.normal;
      it.offset = -it.offset;
    }
    item_of[fi] = static_cast<int>(items.size());
    items.push_back(std::move(it));
  }
  std::vector<int> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return items[a].measure > items[b].measure; });

  double max_measure = items.empty() ? 0.0 : items[order.front()].measure;
  const double sliver = 1e-9 * max_measure;
  const double plane_tol = kCoplanar * scale;
  std::vector<int> group_of(items.size(), -1);
  std::vector<int> visited(items.size(), -1);  // slivers may bridge several groups
  std::vector<FacetGroup> groups;
  std::vector<std::pair<Vector, double>> planes;
  for (int seed : order) {
    if (group_of[seed] >= 0 || items[seed].measure <= sliver) continue;
    const Vector& n = items[seed].normal;
    const double off = items[seed].offset;
    // Already covered when all of its vertices lie on an emitted facet plane.
    const SimplexFacet& sf = facets[items[seed].facet];
    bool known = false;
    for (const auto& [pn, po] : planes) {
      if (pn.dot(n) <= 0.0) continue;
      bool on = true;
      for (int k = 0; k < d && on; ++k) on = std::abs(pn.dot(orig[sf.v[k]]) - po) <= plane_tol;
      known = on;
      if (known) break;
    }
    if (known) continue;
    const int g = static_cast<int>(groups.size());
    group_of[seed] = g;
    visited[seed] = g;
    std::vector<int> members{seed};
    for (std::size_t q = 0; q < members.size(); ++q) {
      const SimplexFacet& f = facets[items[members[q]].facet];
      for (int s = 0; s < d; ++s) {
        const int other = item_of[f.nb[s]];
        if (other < 0 || group_of[other] >= 0 || visited[other] == g) continue;
        const SimplexFacet& h = facets[items[other].facet];
        bool coplanar = true;
        for (int k = 0; k < d && coplanar; ++k) coplanar = std::abs(n.dot(orig[h.v[k]]) - off) <= plane_tol;
        if (coplanar) {
          visited[other] = g;
          if (items[other].measure > sliver) group_of[other] = g;
          members.push_back(other);
        }
      }
    }
    // Every input point on the supporting plane belongs to the face.
    FacetGroup grp;
    grp.inner_normal = -n;
    for (std::size_t i = 0; i < orig.size(); ++i)
      if (std::abs(n.dot(orig[i]) - off) <= plane_tol) grp.ids.push_back(ids[i]);
    std::sort(grp.ids.begin(), grp.ids.end());
    groups.push_back(std::move(grp));
    planes.emplace_back(n, off);
  }
  return groups;
}

}  // namespace

struct PolytopeBuilder {
  static ConvexPolytope build(const PointList& pts);
  static ConvexPolytope build_segment(const PointList& pts, const std::vector<int>& ids);
};

ConvexPolytope PolytopeBuilder::build_segment(const PointList& pts, const std::vector<int>& ids) {
  int lo = ids.front(), hi = ids.front();
  for (int id : ids) {
    if (pts[id][0] < pts[lo][0]) lo = id;
    if (pts[id][0] > pts[hi][0]) hi = id;
  }
  const double a = pts[lo][0], b = pts[hi][0];
  if (!(b - a > 1e-13 * (std::abs(a) + std::abs(b))) || b - a <= 0.0)
    throw Error(ErrorCode::DegenerateInput, "segment has zero length");
  ConvexPolytope p;
  p.dim_ = 1;
  p.vertices_ = {pts[lo], pts[hi]};
  p.source_ids_ = {lo, hi};
  Vector plus = make_vector({1.0}), minus = make_vector({-1.0});
  Facet f0, f1;
  f0.inner_normal = plus;
  f0.offset = a;
  f0.measure = 1.0;
  f0.centroid = pts[lo];
  f0.vertex_ids = {0};
  f0.frame = Frame::householder(plus, pts[lo]);
  f1.inner_normal = minus;
  f1.offset = -b;
  f1.measure = 1.0;
  f1.centroid = pts[hi];
  f1.vertex_ids = {1};
  f1.frame = Frame::householder(minus, pts[hi]);
  p.facets_ = {std::move(f0), std::move(f1)};
  p.edges_ = {{0, 1}};
  p.volume_ = b - a;
  p.centroid_ = make_vector({0.5 * (a + b)});
  p.diameter_ = b - a;
  return p;
}

ConvexPolytope PolytopeBuilder::build(const PointList& pts) {
  if (pts.empty()) throw Error(ErrorCode::DegenerateInput, "no points");
  const int d = static_cast<int>(pts.front().size());
  if (d < 1 || d > kMaxDim) throw Error(ErrorCode::InvalidArgument, "dimension out of range: " + std::to_string(d));
  for (const Vector& p : pts) {
    if (p.size() != d) throw Error(ErrorCode::DimensionMismatch, "points of mixed dimension");
    if (!p.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
  }
  std::vector<int> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  const double scale = bbox_diagonal(pts, all);
  if (!(scale > 0.0)) throw Error(ErrorCode::DegenerateInput, "all points coincide");
  const std::vector<int> ids = dedupe(pts, 1e-13 * scale);
  if (static_cast<int>(ids.size()) < d + 1) throw Error(ErrorCode::DegenerateInput, "fewer than d+1 distinct points");

  if (d == 1) return build_segment(pts, ids);

  std::vector<FacetGroup> groups = d == 2 ? polygon_groups(pts, ids, scale) : simplicial_groups(pts, ids, d, scale);

  std::vector<Facet> facets;
  facets.reserve(groups.size());
  for (const FacetGroup& g : groups) {
    const Vector& u = g.inner_normal;
    double off = 0.0;
    for (int id : g.ids) off += u.dot(pts[id]);
    off /= static_cast<double>(g.ids.size());
    const Vector& x0 = pts[g.ids.front()];
    Frame frame = Frame::householder(u, x0 - (u.dot(x0) - off) * u);
    PointList local;
    local.reserve(g.ids.size());
    for (int id : g.ids) local.push_back(frame.coords(pts[id]));
    std::shared_ptr<const ConvexPolytope> face;
    try {
      face = std::make_shared<const ConvexPolytope>(build(local));
    } catch (const Error&) {
      continue;  // numerically flat facet group; carries no measure
    }
    Facet f;
    f.inner_normal = u;
    f.offset = off;
    f.measure = face->volume();
    f.centroid = frame.lift(face->centroid());
    for (int sid : face->source_ids()) f.vertex_ids.push_back(g.ids[sid]);  // input ids for now
    f.frame = std::move(frame);
    f.face = std::move(face);
    facets.push_back(std::move(f));
  }
  if (facets.size() < static_cast<std::size_t>(d + 1)) throw Error(ErrorCode::DegenerateInput, "hull has too few facets");

  std::vector<int> used;
  for (const Facet& f : facets) used.insert(used.end(), f.vertex_ids.begin(), f.vertex_ids.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::sort(used.begin(), used.end(), [&](int a, int b) { return lex_less(pts[a], pts[b]); });
  std::vector<int> vertex_of(pts.size(), -1);
  for (std::size_t i = 0; i < used.size(); ++i) vertex_of[used[i]] = static_cast<int>(i);

  ConvexPolytope p;
  p.dim_ = d;
  p.source_ids_ = used;
  for (int id : used) p.vertices_.push_back(pts[id]);
  for (Facet& f : facets) {
    for (int& v : f.vertex_ids) v = vertex_of[v];
    for (auto [a, b] : f.face->edges()) {
      int x = f.vertex_ids[a], y = f.vertex_ids[b];
      p.edges_.emplace_back(std::min(x, y), std::max(x, y));
    }
  }
  std::sort(p.edges_.begin(), p.edges_.end());
  p.edges_.erase(std::unique(p.edges_.begin(), p.edges_.end()), p.edges_.end());

  Vector c0 = Vector::Zero(d);
  for (const Vector& v : p.vertices_) c0 += v;
  c0 /= static_cast<double>(p.vertices_.size());
  CompensatedSum vol;
  Vector moment = Vector::Zero(d);
  const double ratio = static_cast<double>(d) / static_cast<double>(d + 1);
  for (const Facet& f : facets) {
    const double height = std::max(0.0, f.inner_normal.dot(c0) - f.offset);
    const double pyramid = f.measure * height / static_cast<double>(d);
    vol.add(pyramid);
    moment += pyramid * (c0 + ratio * (f.centroid - c0));
  }
  p.volume_ = vol.value();
  if (!(p.volume_ > 0.0)) throw Error(ErrorCode::DegenerateInput, "hull has zero volume");
  p.centroid_ = moment / p.volume_;
  p.facets_ = std::move(facets);

  double diam2 = 0.0;
  for (std::size_t i = 0; i < p.vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < p.vertices_.size(); ++j)
      diam2 = std::max(diam2, (p.vertices_[i] - p.vertices_[j]).squaredNorm());
  p.diameter_ = std::sqrt(diam2);
  return p;
}

ConvexPolytope ConvexPolytope::hull(const PointList& points) { return PolytopeBuilder::build(points); }

}  // namespace aperim
