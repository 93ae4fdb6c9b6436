#pragma once

// Brute-force and extended-precision references. Nothing here calls the
// production model; every formula is re-derived in long double.

#include <functional>
#include <string_view>
#include <vector>

#include "sagin/physics.hpp"

namespace sagin::oracle {

// ---- extended-precision model -------------------------------------------

long double rate_sat_uav(const ScenarioConfig& cfg);
long double prop_delay(const ScenarioConfig& cfg);
long double channel_gain(const ScenarioConfig& cfg, const Placement& pl, std::size_t k);
long double rate_uav_gt(const ScenarioConfig& cfg, const Placement& pl, long double b,
                        long double p, std::size_t k);
long double overhead(const OverheadCurve& curve, long double rho);

// Per-GT end-to-end latency; +inf where undefined.
std::vector<long double> latencies(const ScenarioConfig& cfg, const SolutionState& s);
// e_S + e_SU + e_U + e_UG; +inf where undefined.
long double total_energy(const ScenarioConfig& cfg, const SolutionState& s);
bool latency_feasible(const ScenarioConfig& cfg, const SolutionState& s, long double rel_tol = 1e-12L);

struct FormulaArgs {
  Placement placement;
  std::size_t gt = 0;
  double bandwidth = 0.0;
  double power = 0.0;
  double ratio = 1.0;
};

// Catalog: "r_SU", "t_P", "g_k", "r_k", "O_k". Throws InputError otherwise.
long double eval_formula_extended(std::string_view id, const ScenarioConfig& cfg,
                                  const FormulaArgs& args = {});

// ---- enumeration ---------------------------------------------------------

struct TaskEnumeration {
  std::vector<Task> task;
  long double objective = 0.0L;
  bool feasible = false;
};

// Exact minimizer over all 3^K assignments with everything else fixed.
// Throws InputError for K > 12.
TaskEnumeration enumerate_task_assignments(const ScenarioConfig& cfg, const SolutionState& s);

struct SegmentEnumeration {
  std::vector<int> segment;
  long double objective = 0.0L;
  bool feasible = false;
};

// Exact minimizer over all segment combinations, each GT's ratio placed at
// its segment midpoint. Throws InputError beyond 1e6 combinations.
SegmentEnumeration enumerate_segments(const ScenarioConfig& cfg, const SolutionState& s);

// ---- grid search ---------------------------------------------------------

struct GridAxis {
  double lower = 0.0;
  double upper = 1.0;
  int points = 2;
};

using GridPoint = std::vector<double>;

struct GridSpec {
  std::vector<GridAxis> axes;
  std::function<bool(const GridPoint&)> filter;  // empty: accept everything
  // Extra passes, each a grid of `zoom_points` per axis spanning one
  // previous cell on either side of the incumbent.
  int zoom_levels = 0;
  int zoom_points = 21;
  // Repeats allowed per zoom level when the incumbent lands on the window
  // edge, letting the search walk along a constraint boundary.
  int max_recenter = 0;
};

struct GridResult {
  GridPoint point;
  double value = 0.0;
  std::vector<double> cell;  // spacing of the coarse grid per axis
};

// Minimum over filtered grid points, lowest index winning ties. Throws
// InfeasibleError when nothing passes the filter.
GridResult grid_minimize(const std::function<double(const GridPoint&)>& objective,
                         const GridSpec& spec);

// ---- joint brute force ---------------------------------------------------

struct JointResult {
  SolutionState state;
  long double objective = 0.0L;
  bool feasible = false;
};

// Exhaustive coarse search over every variable of a single-GT instance.
// Bandwidth is the full budget and power the least meeting the latency,
// both exact reductions for one GT; the rest is gridded.
JointResult brute_force_single_gt(const ScenarioConfig& cfg, int points_per_axis = 24);

}  // namespace sagin::oracle
