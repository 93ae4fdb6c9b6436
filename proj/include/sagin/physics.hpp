#pragma once

#include <string>
#include <vector>

#include "sagin/scenario.hpp"

namespace sagin {

// Where a GT's semantic compression runs. `none` means the raw data is
// relayed end to end.
enum class Task { none, satellite, uav };

const char* to_string(Task t);

struct Placement {
  Vec2 uav_xy;
  double altitude = 0.0;        // H_U, m
  double half_beamwidth = 0.0;  // Theta, rad

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct Allocation {
  std::vector<double> bandwidth;  // Hz
  std::vector<double> cpu;        // cycles/s
  std::vector<double> power;      // W
  std::vector<double> ratio;      // compressed / original size
  std::vector<Task> task;

  double a_sat(std::size_t k) const { return task[k] == Task::satellite ? 1.0 : 0.0; }
  double a_uav(std::size_t k) const { return task[k] == Task::uav ? 1.0 : 0.0; }

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct SolutionState {
  Placement placement;
  Allocation allocation;

  friend bool operator==(const SolutionState&, const SolutionState&) = default;
};

struct LatencyBreakdown {
  double sat_compute = 0.0;   // t_S
  double sat_uav_tx = 0.0;    // t_T
  double sat_uav_prop = 0.0;  // t_P
  std::vector<double> uav_compute;
  std::vector<double> uav_gt_tx;
  std::vector<double> total;

  // t_S + t_T + t_P, shared by every GT.
  double satellite_stage() const { return sat_compute + sat_uav_tx + sat_uav_prop; }
};

struct EnergyBreakdown {
  double sat_compute = 0.0;
  double sat_uav_comm = 0.0;
  double uav_compute = 0.0;
  double uav_gt_comm = 0.0;
  double total = 0.0;
};

double rate_sat_uav(const ScenarioConfig& cfg);
double prop_delay(const ScenarioConfig& cfg);

double channel_gain_ug(const ScenarioConfig& cfg, const Placement& pl, std::size_t k);

// Throws ModelError when b == 0 and p > 0.
double rate_uav_gt(const ScenarioConfig& cfg, const Placement& pl, double b, double p,
                   std::size_t k);

// Fraction of D_k that travels over the UAV-to-GT link.
double ug_payload_factor(Task t, double rho);

// Throw ModelError on a GT that computes on the UAV with zero CPU, or a GT
// with positive data and zero rate.
LatencyBreakdown latency_breakdown(const ScenarioConfig& cfg, const SolutionState& s);
EnergyBreakdown energy_breakdown(const ScenarioConfig& cfg, const SolutionState& s);

double total_energy(const ScenarioConfig& cfg, const SolutionState& s);

enum class Constraint {
  latency,
  power_budget,
  coverage,
  altitude,
  bandwidth_budget,
  cpu_budget,
  ratio_bounds,
  beamwidth,
  nonnegativity,
  shape,
};

const char* to_string(Constraint c);

struct Violation {
  Constraint constraint;
  int gt = -1;         // -1 for network-wide constraints
  double slack = 0.0;  // negative, in the constraint's own unit
  double relative = 0.0;  // |slack| over the constraint's scale

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct FeasibilityReport {
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }
  // Sum of relative violations; 0 when feasible, +inf when a latency term is
  // undefined.
  double measure() const;
};

inline constexpr double kFeasibilityTolerance = 1e-9;

FeasibilityReport check_feasibility(const ScenarioConfig& cfg, const SolutionState& s);

// Objective and violation measure without throwing; undefined latency or
// energy terms become +inf.
struct Evaluation {
  double objective = 0.0;
  double violation = 0.0;
  bool feasible = false;
};

Evaluation evaluate(const ScenarioConfig& cfg, const SolutionState& s);

}  // namespace sagin
