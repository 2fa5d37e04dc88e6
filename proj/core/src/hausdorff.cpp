#include "aperim/hausdorff.hpp"

namespace aperim {

HausdorffWitness hausdorff_nested(const ConvexPolytope& a, const ConvexPolytope& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "hausdorff: bodies of different dimension");
  if (!contains(b, a)) throw Error(ErrorCode::NotNested, "inner body is not contained in the outer body");
  // Vertices are already in lexicographic order, so keeping the first of
  // (numerically) tied maxima gives the lexicographically smallest b.
  const double tie = 1e-12 * b.diameter();
  HausdorffWitness w;
  for (std::size_t i = 0; i < b.vertices().size(); ++i) {
    const Vector& v = b.vertices()[i];
    Projection pr = project_point(a, v);
    if (pr.distance <= tie) pr = {v, 0.0, pr.iterations};  // on A up to round-off
    if (w.b_vertex < 0 || pr.distance > w.h + tie) {
      w.h = pr.distance;
      w.a = pr.point;
      w.b = v;
      w.b_vertex = static_cast<int>(i);
    }
  }
  return w;
}

HalfspaceWitness halfspace_witness(const HausdorffWitness& w) {
  if (!(w.h > 0.0)) throw Error(ErrorCode::ZeroDistance, "Hausdorff distance is zero; there is no cut");
  const Vector n = (w.b - w.a) / w.h;
  HalfspaceWitness hw;
  hw.plane.normal = n;
  hw.plane.offset = n.dot(w.a);
  hw.side = Side::Below;
  hw.nu_h = -n;
  return hw;
}

HalfspaceWitness halfspace_witness(const HausdorffWitness& w, const ConvexPolytope& a) {
  HalfspaceWitness hw = halfspace_witness(w);
  const double tol = a.tolerance();
  for (const Vector& v : a.vertices())
    if (!hw.contains(v, tol)) throw Error(ErrorCode::NoConvergence, "projection certificate failed: plane does not support A");
  return hw;
}

}  // namespace aperim
