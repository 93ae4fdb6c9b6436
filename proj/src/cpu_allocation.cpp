#include <cmath>
#include <limits>

#include "sagin/subsolvers.hpp"

namespace sagin {

std::vector<double> ug_latency_slack(const ScenarioConfig& cfg, const SolutionState& s) {
  const std::size_t K = cfg.num_gts;
  std::vector<double> slack(K);
  const auto& al = s.allocation;

  double sat_overhead = 0.0;
  double sat_bits = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double aS = al.a_sat(k);
    if (aS > 0.0) sat_overhead += overhead_eval(cfg.overhead_curves[k], al.ratio[k]);
    sat_bits += aS * al.ratio[k] * cfg.data_bits[k] + (1.0 - aS) * cfg.data_bits[k];
  }
  const double stage = cfg.cycles_per_overhead * sat_overhead / cfg.sat_cpu +
                       sat_bits / rate_sat_uav(cfg) + prop_delay(cfg);
  for (std::size_t k = 0; k < K; ++k) {
    double tu = 0.0;
    if (al.task[k] == Task::uav) {
      const double work = cfg.cycles_per_overhead * overhead_eval(cfg.overhead_curves[k], al.ratio[k]);
      tu = al.cpu[k] > 0.0 ? work / al.cpu[k] : std::numeric_limits<double>::infinity();
    }
    slack[k] = cfg.latency_budget - stage - tu;
  }
  return slack;
}

CpuAllocationResult solve_cpu_allocation(const ScenarioConfig& cfg, const SolutionState& s) {
  const auto& al = s.allocation;
  const std::size_t K = cfg.num_gts;
  const LatencyBreakdown lat = [&] {
    // Zero the UAV compute term: only t_S, t_SU and t_UG enter the slack.
    SolutionState probe = s;
    for (std::size_t k = 0; k < K; ++k)
      if (probe.allocation.task[k] == Task::uav) probe.allocation.cpu[k] = 1.0;
    return latency_breakdown(cfg, probe);
  }();

  CpuAllocationResult out;
  out.cpu.assign(K, 0.0);
  out.feasible = true;
  double sum = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    if (al.task[k] != Task::uav) continue;
    const double slack = cfg.latency_budget - lat.satellite_stage() - lat.uav_gt_tx[k];
    if (!(slack > 0.0)) {
      out.feasible = false;
      out.cpu[k] = al.cpu[k];
      continue;
    }
    out.cpu[k] = cfg.cycles_per_overhead * overhead_eval(cfg.overhead_curves[k], al.ratio[k]) / slack;
    sum += out.cpu[k];
  }
  if (sum > cfg.uav_cpu_total) out.feasible = false;
  return out;
}

}  // namespace sagin
