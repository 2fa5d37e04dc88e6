#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "aperim/approximation.hpp"
#include "aperim/bounds.hpp"
#include "aperim/cones.hpp"
#include "aperim/harness.hpp"
#include "aperim/perimeter.hpp"
#include "aperim/wulff.hpp"

namespace aperim::io {

using nlohmann::json;

/// Parses a file; malformed input throws InvalidArgument naming the file.
json read_file(const std::filesystem::path& path);

Vector vector_from_json(const json& j);
json to_json(const Vector& v);

/// {"dim": n, "vertices": [[...], ...]}. Facet data is recomputed.
ConvexPolytope polytope_from_json(const json& j);
json to_json(const ConvexPolytope& p);

/// {"normal": [...], "offset": t}
Hyperplane hyperplane_from_json(const json& j);
json to_json(const Hyperplane& h);

/// {"kind": "euclidean"} | {"kind": "scaled", "lambda": l} |
/// {"kind": "support", "K": polytope} | {"kind": "lp", "p": p}.
/// `dim` is used by the kinds that carry no body; an optional "dim" field
/// must agree with it.
Gauge gauge_from_json(const json& j, int dim);
json to_json(const Gauge& g);

/// {"kind": "default"} or {"g": {"kind": "conic", "c": c}, "phi": gauge}
/// with phi on R^(dim-1).
DecompositionSpec decomposition_from_json(const json& j, int dim);

/// Frame origin and normal plus the body in frame coordinates.
json to_json(const EmbeddedPolytope& e);
json to_json(const WulffShape& w);

json to_json(const PerimeterValue& v);
json to_json(const HausdorffWitness& w);
json to_json(const HalfspaceWitness& w);
json to_json(const BoundReport& r);
json to_json(const BoundComparison& c);
json to_json(const ConeLemmaResult& r);
json to_json(const ApproxItem& item);
json to_json(const ConvergenceTable& t);
json to_json(const CampaignReport& r);

/// Overrides the fields of `base` present in j: dim, cases, seed, tolerance,
/// gauges (list of gauge JSON), generator {min_points, max_points,
/// spike_probability, cut_probability}, check_cones, check_chain.
FuzzConfig fuzz_config_from_json(const json& j, FuzzConfig base);

}  // namespace aperim::io
