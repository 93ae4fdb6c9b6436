#include <cmath>
#include <limits>
#include <numeric>

#include "sagin/dual_subgradient.hpp"
#include "sagin/subsolvers.hpp"

namespace sagin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per (k, d): energy, latency added to every GT, latency added to GT k alone.
struct SegmentModel {
  std::vector<std::vector<double>> energy, shared, own;
  std::vector<double> base_latency;
  double reference_energy = 0.0;
};

SegmentModel build_model(const ScenarioConfig& cfg, const SolutionState& s) {
  const auto& al = s.allocation;
  const std::size_t K = cfg.num_gts;
  const double r_su = rate_sat_uav(cfg);
  const double tau_k = cfg.comp_energy_coeff * cfg.cycles_per_overhead;
  const double kappa = cfg.cycles_per_overhead;

  SegmentModel m;
  m.energy.resize(K);
  m.shared.resize(K);
  m.own.resize(K);
  m.base_latency.assign(K, prop_delay(cfg));
  double uncompressed_to_uav = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double D = cfg.data_bits[k];
    const double p = al.power[k];
    const double r = rate_uav_gt(cfg, s.placement, al.bandwidth[k], p, k);
    m.reference_energy += cfg.sat_tx_power * D / r_su + p * D / r;
    if (al.task[k] != Task::satellite) uncompressed_to_uav += D / r_su;
    if (al.task[k] == Task::none) m.base_latency[k] += D / r;

    const auto& curve = cfg.overhead_curves[k];
    const std::size_t nd = curve.size();
    m.energy[k].assign(nd, 0.0);
    m.shared[k].assign(nd, 0.0);
    m.own[k].assign(nd, 0.0);
    if (al.task[k] == Task::none) continue;
    for (std::size_t d = 0; d < nd; ++d) {
      const double rho = curve.midpoint(d);
      const double O = curve.line(d, rho);
      const double ug = rho * D / r;
      if (al.task[k] == Task::satellite) {
        m.energy[k][d] = tau_k * O * cfg.sat_cpu * cfg.sat_cpu + cfg.sat_tx_power * rho * D / r_su + p * ug;
        m.shared[k][d] = kappa * O / cfg.sat_cpu + rho * D / r_su;
        m.own[k][d] = ug;
      } else {
        const double f = al.cpu[k];
        m.energy[k][d] = tau_k * O * f * f + p * ug;
        m.own[k][d] = f > 0.0 ? kappa * O / f + ug : kInf;
      }
    }
  }
  for (double& b : m.base_latency) b += uncompressed_to_uav;
  return m;
}

}  // namespace

SegmentChoice select_segments(const ScenarioConfig& cfg, const SolutionState& s,
                              const SolverOptions& opts) {
  const std::size_t K = cfg.num_gts;
  const SegmentModel m = build_model(cfg, s);
  const double T = cfg.latency_budget;
  const double scale = std::max(m.reference_energy, std::numeric_limits<double>::min()) / T;

  DualAdapter adapter;
  adapter.num_constraints = K;
  adapter.minimize = [&](const std::vector<double>& gamma) {
    const double g_sum = std::accumulate(gamma.begin(), gamma.end(), 0.0);
    std::vector<int> x(K, 0);
    for (std::size_t k = 0; k < K; ++k) {
      double best = kInf;
      for (std::size_t d = 0; d < m.energy[k].size(); ++d) {
        const double own = gamma[k] > 0.0 ? gamma[k] * m.own[k][d] : 0.0;
        const double sk = m.energy[k][d] + scale * (g_sum * m.shared[k][d] + own);
        if (sk < best) {
          best = sk;
          x[k] = static_cast<int>(d);
        }
      }
    }
    return x;
  };
  adapter.residuals = [&](const std::vector<int>& x) {
    double shared = 0.0;
    for (std::size_t k = 0; k < K; ++k) shared += m.shared[k][x[k]];
    std::vector<double> g(K);
    for (std::size_t j = 0; j < K; ++j)
      g[j] = (m.base_latency[j] + shared + m.own[j][x[j]] - T) / T;
    return g;
  };
  adapter.objective = [&](const std::vector<int>& x) {
    double e = 0.0;
    for (std::size_t k = 0; k < K; ++k) e += m.energy[k][x[k]];
    return e;
  };

  for (std::size_t k = 0; k < K; ++k) adapter.choices.push_back(static_cast<int>(m.energy[k].size()));

  const DualResult res = dual_subgradient(
      adapter, {opts.dual_max_iters, opts.dual_step_scale, opts.dual_tolerance});

  SegmentChoice out;
  out.chosen_segment = res.primal;
  out.multipliers = res.multipliers;
  out.iterations = res.iterations;
  out.feasible = res.feasible;
  out.alpha.resize(K);
  out.midpoints.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    const auto& curve = cfg.overhead_curves[k];
    out.alpha[k].assign(curve.size(), 0);
    out.alpha[k][out.chosen_segment[k]] = 1;
    for (std::size_t d = 0; d < curve.size(); ++d) out.midpoints[k].push_back(curve.midpoint(d));
  }
  return out;
}

}  // namespace sagin
