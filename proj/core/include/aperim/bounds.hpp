#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aperim/gauges.hpp"
#include "aperim/geometry.hpp"
#include "aperim/hausdorff.hpp"

namespace aperim {

/// Witnesses, cut half-space and the slice B ∩ ∂H for a nested pair. Shared
/// by every bound formula so that a pair is cut once.
struct CutGeometry {
  int dim = 0;
  HausdorffWitness witness;
  std::optional<HalfspaceWitness> halfspace;  // absent when h == 0
  /// B ∩ ∂H in the Householder frame of nu_H based at a (so a has coordinates 0).
  std::optional<EmbeddedPolytope> slice;
  double slice_measure = 0.0;
  /// True when ∂H only touches B (all of B on one side); then the slice is a
  /// face of B and ∂B ∩ ∂H differs from the relative boundary of the slice.
  bool slice_is_face = false;
};

/// Throws NotNested unless A ⊂ B.
CutGeometry cut_geometry(const ConvexPolytope& a, const ConvexPolytope& b);

struct BoundOptions {
  int wulff_resolution = 512;
  /// Samples for checking a user-supplied decomposition; the default
  /// decomposition is admissible by construction and is not sampled.
  int admissibility_samples = 10000;
  std::uint64_t seed = 0;
  double admissibility_tolerance = 1e-9;
};

enum class BoundReason {
  None,
  ZeroDistance,     // h = 0, nothing to cut
  DegenerateSlice,  // slice of measure zero with n >= 3
  Clipped,          // g(h, r) <= Phi(nu_H) r, the positive part is 0
};

std::string_view to_string(BoundReason reason);

struct BoundReport {
  std::string formula;  // theorem, corollary, planar or r3
  std::string gauge;
  std::string decomposition;
  int dim = 0;
  double h = 0.0;
  double slice_measure = 0.0;
  double r = 0.0;
  std::optional<double> d;  // r3 only
  double wulff_measure = 0.0;
  /// Bracket for H^(n-1)(W); equal to wulff_measure when it is exact.
  double wulff_measure_lower = 0.0;
  double wulff_measure_upper = 0.0;
  bool wulff_exact = true;
  double g_value = 0.0;
  double phi_nu = 0.0;
  /// Headline bound: computed from wulff_measure_lower, which is the
  /// conservative end because the bound is non-decreasing in H^(n-1)(W).
  double bound = 0.0;
  double bound_upper = 0.0;
  double perimeter_inner = 0.0;
  double perimeter_outer = 0.0;
  double deficit = 0.0;
  double slack = 0.0;
  HausdorffWitness witness;
  std::optional<HalfspaceWitness> halfspace;
  BoundReason reason = BoundReason::None;
  bool slice_is_face = false;
};

/// The main estimate: bound = H(W) r^(n-2) (g(h, r) - Phi(nu_H) r)^+ with
/// r^(n-1) H(W) = H^(n-1)(B ∩ ∂H). A structured decomposition is sampled
/// first and refused with AdmissibilityViolated if any probe fails.
BoundReport theorem_bound(const ConvexPolytope& a, const ConvexPolytope& b, const Gauge& phi,
                          const DecompositionSpec& spec = DecompositionSpec::default_spec(),
                          const BoundOptions& options = {});
BoundReport theorem_bound(const CutGeometry& cut, double perimeter_inner, double perimeter_outer, const Gauge& phi,
                          const DecompositionSpec& spec = DecompositionSpec::default_spec(),
                          const BoundOptions& options = {});

/// Euclidean case: omega_(n-1) r^(n-2) h^2 / (sqrt(h^2 + r^2) + r).
BoundReport corollary_bound(const ConvexPolytope& a, const ConvexPolytope& b);
BoundReport corollary_bound(const CutGeometry& cut, double perimeter_inner, double perimeter_outer);

/// n = 2: 2 h^2 / (sqrt((S/2)^2 + h^2) + S/2) with S the length of B ∩ L.
BoundReport planar_bound(const ConvexPolytope& a, const ConvexPolytope& b);
BoundReport planar_bound(const CutGeometry& cut, double perimeter_inner, double perimeter_outer);

/// n = 3: pi d h^2 / (sqrt(d^2 + h^2) + d) with d the distance from a to
/// the relative boundary of the slice.
BoundReport r3_bound(const ConvexPolytope& a, const ConvexPolytope& b);
BoundReport r3_bound(const CutGeometry& cut, double perimeter_inner, double perimeter_outer);

struct BoundComparison {
  BoundReport theorem;
  BoundReport corollary;
  std::optional<BoundReport> planar;
  std::optional<BoundReport> r3;
  /// n = 2: planar equals corollary (1e-10 relative); n = 3: corollary >= r3.
  bool consistent = true;
  /// corollary / planar for n = 2, corollary / r3 for n = 3 (inf if r3 is 0).
  double ratio = 1.0;
};

/// Throws InvalidArgument unless n is 2 or 3.
BoundComparison compare_bounds(const ConvexPolytope& a, const ConvexPolytope& b, const Gauge& phi,
                               const DecompositionSpec& spec = DecompositionSpec::default_spec(),
                               const BoundOptions& options = {});

}  // namespace aperim
