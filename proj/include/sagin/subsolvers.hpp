#pragma once

#include <vector>

#include "sagin/options.hpp"
#include "sagin/physics.hpp"

namespace sagin {

struct DualState {
  std::vector<double> lambda;  // task-allocation latency multipliers
  std::vector<double> gamma;   // segment-selection latency multipliers
  int step_index = 0;
};

struct TaskAllocationResult {
  std::vector<Task> task;
  std::vector<double> multipliers;
  int iterations = 0;
  bool feasible = false;
  // GTs whose UAV option was removed because their CPU share is zero.
  std::vector<int> uav_blocked;
};

// Lagrangian dual of the binary task assignment.
TaskAllocationResult solve_task_allocation(const ScenarioConfig& cfg, const SolutionState& s,
                                           const SolverOptions& opts);

struct SegmentChoice {
  std::vector<std::vector<int>> alpha;       // [k][d], one 1 per row
  std::vector<int> chosen_segment;           // 0-based d*
  std::vector<std::vector<double>> midpoints;
  std::vector<double> multipliers;
  int iterations = 0;
  bool feasible = false;
};

// Segment level per GT, with each segment represented by its midpoint ratio.
SegmentChoice select_segments(const ScenarioConfig& cfg, const SolutionState& s,
                              const SolverOptions& opts);

struct RatioLpResult {
  std::vector<double> ratio;
  double objective = 0.0;  // ratio-dependent part of the energy
  bool feasible = false;
  // When infeasible: the GT whose latency row is most violated at the box center.
  int worst_constraint = -1;
  double worst_violation = 0.0;
};

// Exact LP over the ratios inside each GT's chosen segment. GTs with no
// compression task get the lower corner of their segment.
RatioLpResult solve_ratio_lp(const ScenarioConfig& cfg, const SolutionState& s,
                             const SegmentChoice& choice, const SolverOptions& opts);

struct CpuAllocationResult {
  std::vector<double> cpu;
  bool feasible = false;
};

// Minimal per-GT CPU meeting each UAV-computing GT's latency with equality.
CpuAllocationResult solve_cpu_allocation(const ScenarioConfig& cfg, const SolutionState& s);

struct PowerBandwidthResult {
  std::vector<double> bandwidth;
  std::vector<double> power;
  double bandwidth_multiplier = 0.0;
  double power_multiplier = 0.0;
  double kkt_residual = 0.0;
  bool feasible = false;
};

PowerBandwidthResult solve_power_bandwidth(const ScenarioConfig& cfg, const SolutionState& s,
                                           const SolverOptions& opts);

// The lowest altitude covering every GT at beamwidth theta.
double altitude_for_beamwidth(double l_max, double theta, double h_min);

struct AltitudeBeamwidthResult {
  double altitude = 0.0;
  double half_beamwidth = 0.0;
  double objective = 0.0;
  bool feasible = false;
  bool from_case1 = false;
};

AltitudeBeamwidthResult solve_altitude_beamwidth(const ScenarioConfig& cfg, const SolutionState& s,
                                                 const SolverOptions& opts);

struct LocationResult {
  Vec2 location;
  double objective = 0.0;
  bool feasible = false;
  std::vector<double> radii;  // per-GT feasible disk radius, -1 if empty
};

LocationResult solve_location(const ScenarioConfig& cfg, const SolutionState& s,
                              const SolverOptions& opts);

// UAV-to-GT energy sum p_k D_k factor_k / r_k at the given placement; +inf if
// any rate is zero.
double ug_energy_at(const ScenarioConfig& cfg, const SolutionState& s, const Placement& pl);

// Latency left for the UAV-to-GT hop after satellite stage and UAV compute.
std::vector<double> ug_latency_slack(const ScenarioConfig& cfg, const SolutionState& s);

}  // namespace sagin
