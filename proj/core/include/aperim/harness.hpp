#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "aperim/gauges.hpp"
#include "aperim/geometry.hpp"
#include "aperim/rng.hpp"

namespace aperim {

struct GeneratorParams {
  int min_points = 5;  // points drawn for a random body (at least dim + 1 are used)
  int max_points = 12;
  double spike_probability = 1.0 / 3.0;
  double cut_probability = 1.0 / 3.0;
};

enum class PairMode {
  Interior,  // A = hull of points inside B
  Cuts,      // A = B cut by random half-spaces
  Spike,     // B = hull of A and one point outside it
};

std::string_view to_string(PairMode mode);

struct NestedPair {
  ConvexPolytope inner;
  ConvexPolytope outer;
  PairMode mode = PairMode::Interior;
  int attempts = 1;
};

/// Random A ⊂ B in R^dim. Throws GenerationFailed after 100 degenerate draws.
NestedPair random_nested_pair(int dim, Rng& rng, const GeneratorParams& params = {});
NestedPair random_nested_pair(int dim, std::uint64_t seed, const GeneratorParams& params = {});

/// Support gauge of a simplex with 0 inside and no symmetry: vertices
/// (1 + i/4) e_i and -(0.6, 0.5, ...).
Gauge asymmetric_simplex_gauge(int dim);

/// euclidean, scaled(2), the asymmetric simplex gauge and lp(1).
std::vector<Gauge> standard_gauges(int dim);

struct FuzzConfig {
  int dim = 3;
  long long cases = 1000;
  std::uint64_t seed = 42;
  std::vector<Gauge> gauges;  // empty means standard_gauges(dim)
  GeneratorParams generator;
  /// Allowed negative margin, relative to max(1, size of the compared terms).
  double tolerance = 1e-7;
  bool check_cones = true;  // cone lemma on the cut slice
  bool check_chain = true;  // intermediate inequalities of the proof
  bool record_timing = false;
};

/// One evaluated inequality. It holds when margin >= limit.
struct Check {
  std::string inequality;
  std::string gauge;  // empty for gauge-independent checks
  double margin = 0.0;
  double limit = 0.0;

  bool holds() const { return margin >= limit; }
};

struct CaseResult {
  std::uint64_t id = 0;
  PairMode mode = PairMode::Interior;
  double h = 0.0;
  std::vector<Check> checks;
  std::vector<double> relative_slack;  // theorem slack / deficit, one per gauge
  std::string error;  // non-empty if the case could not be evaluated
};

/// Evaluates case `id` of a campaign; the pair is drawn from Rng::split(seed, id).
CaseResult run_case(const FuzzConfig& config, std::uint64_t id);

struct Violation {
  std::uint64_t case_id = 0;
  std::string gauge;
  std::string inequality;
  double margin = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct InequalityStats {
  std::string inequality;
  long long checked = 0;
  double min_margin = 0.0;
  std::uint64_t worst_case = 0;
  std::string worst_gauge;
};

struct CampaignReport {
  int dim = 0;
  long long cases = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::vector<std::string> gauges;
  long long checks = 0;
  std::array<long long, 3> modes{};  // cases per PairMode
  std::vector<Violation> violations;  // sorted by case id
  std::vector<InequalityStats> stats;  // sorted by inequality name
  /// Theorem slack relative to the deficit, bucketed.
  std::vector<std::pair<std::string, long long>> slack_histogram;
  bool timed = false;
  double seconds = 0.0;
  double cases_per_second = 0.0;

  bool passed() const { return violations.empty(); }
};

CampaignReport run_campaign(const FuzzConfig& config);

}  // namespace aperim
