#include <cmath>
#include <limits>
#include <numeric>

#include "sagin/dual_subgradient.hpp"
#include "sagin/subsolvers.hpp"

namespace sagin {

namespace {

// Energy and latency are affine in (a^S, a^U) once everything else is fixed.
// Latency of GT j is base_j + sum_k aS_k*shared_k + aS_j*own_sat_j + aU_j*own_uav_j.
struct TaskModel {
  double base_energy = 0.0;
  std::vector<double> energy_sat, energy_uav;
  std::vector<double> base_latency, shared, own_sat, own_uav;
  std::vector<bool> uav_allowed;
};

TaskModel build_model(const ScenarioConfig& cfg, const SolutionState& s) {
  const auto& al = s.allocation;
  const std::size_t K = cfg.num_gts;
  const double r_su = rate_sat_uav(cfg);
  const double tau_k = cfg.comp_energy_coeff * cfg.cycles_per_overhead;
  const double total_bits = std::accumulate(cfg.data_bits.begin(), cfg.data_bits.end(), 0.0);

  TaskModel m;
  m.energy_sat.resize(K);
  m.energy_uav.resize(K);
  m.base_latency.resize(K);
  m.shared.resize(K);
  m.own_sat.resize(K);
  m.own_uav.resize(K);
  m.uav_allowed.resize(K);
  m.base_energy = cfg.sat_tx_power * total_bits / r_su;
  for (std::size_t k = 0; k < K; ++k) {
    const double D = cfg.data_bits[k];
    const double rho = al.ratio[k];
    const double O = overhead_eval(cfg.overhead_curves[k], rho);
    const double p = al.power[k];
    const double r = rate_uav_gt(cfg, s.placement, al.bandwidth[k], p, k);
    const double saved = D * (1.0 - rho);
    const double f = al.cpu[k];

    m.base_energy += p * D / r;
    m.base_latency[k] = total_bits / r_su + prop_delay(cfg) + D / r;
    m.energy_sat[k] = tau_k * O * cfg.sat_cpu * cfg.sat_cpu - saved * (cfg.sat_tx_power / r_su + p / r);
    m.shared[k] = cfg.cycles_per_overhead * O / cfg.sat_cpu - saved / r_su;
    m.own_sat[k] = -saved / r;
    m.uav_allowed[k] = f > 0.0;
    m.energy_uav[k] = m.uav_allowed[k] ? tau_k * O * f * f - saved * p / r : 0.0;
    m.own_uav[k] = m.uav_allowed[k] ? cfg.cycles_per_overhead * O / f - saved / r : 0.0;
  }
  return m;
}

}  // namespace

TaskAllocationResult solve_task_allocation(const ScenarioConfig& cfg, const SolutionState& s,
                                           const SolverOptions& opts) {
  const std::size_t K = cfg.num_gts;
  TaskAllocationResult out;

  for (std::size_t k = 0; k < K; ++k) {
    const double r = rate_uav_gt(cfg, s.placement, s.allocation.bandwidth[k], s.allocation.power[k], k);
    if (!(r > 0.0)) {
      // No UAV-GT link: every assignment has unbounded latency.
      out.task = s.allocation.task;
      return out;
    }
  }

  const TaskModel m = build_model(cfg, s);
  for (std::size_t k = 0; k < K; ++k)
    if (!m.uav_allowed[k]) out.uav_blocked.push_back(static_cast<int>(k));

  const double T = cfg.latency_budget;
  const double scale = std::max(m.base_energy, std::numeric_limits<double>::min()) / T;

  DualAdapter adapter;
  adapter.num_constraints = K;
  adapter.minimize = [&](const std::vector<double>& mu) {
    const double mu_sum = std::accumulate(mu.begin(), mu.end(), 0.0);
    std::vector<int> x(K, static_cast<int>(Task::none));
    for (std::size_t k = 0; k < K; ++k) {
      const double as = m.energy_sat[k] + scale * (mu_sum * m.shared[k] + mu[k] * m.own_sat[k]);
      const double au = m.uav_allowed[k] ? m.energy_uav[k] + scale * mu[k] * m.own_uav[k]
                                         : std::numeric_limits<double>::infinity();
      if (std::min(as, au) >= 0.0) continue;
      x[k] = static_cast<int>(as <= au ? Task::satellite : Task::uav);
    }
    return x;
  };
  adapter.residuals = [&](const std::vector<int>& x) {
    double shared = 0.0;
    for (std::size_t k = 0; k < K; ++k)
      if (x[k] == static_cast<int>(Task::satellite)) shared += m.shared[k];
    std::vector<double> g(K);
    for (std::size_t j = 0; j < K; ++j) {
      double lat = m.base_latency[j] + shared;
      if (x[j] == static_cast<int>(Task::satellite)) lat += m.own_sat[j];
      if (x[j] == static_cast<int>(Task::uav)) lat += m.own_uav[j];
      g[j] = (lat - T) / T;
    }
    return g;
  };
  adapter.objective = [&](const std::vector<int>& x) {
    double e = m.base_energy;
    for (std::size_t k = 0; k < K; ++k) {
      if (x[k] == static_cast<int>(Task::satellite)) e += m.energy_sat[k];
      if (x[k] == static_cast<int>(Task::uav)) e += m.energy_uav[k];
    }
    return e;
  };

  for (std::size_t k = 0; k < K; ++k) adapter.choices.push_back(m.uav_allowed[k] ? 3 : 2);

  const DualResult res = dual_subgradient(
      adapter, {opts.dual_max_iters, opts.dual_step_scale, opts.dual_tolerance});
  out.task.resize(K);
  for (std::size_t k = 0; k < K; ++k) out.task[k] = static_cast<Task>(res.primal[k]);
  out.multipliers = res.multipliers;
  out.iterations = res.iterations;
  out.feasible = res.feasible;
  return out;
}

}  // namespace sagin
