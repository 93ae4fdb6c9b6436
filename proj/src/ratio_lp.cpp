#include <cmath>
#include <limits>

#include "sagin/simplex.hpp"
#include "sagin/subsolvers.hpp"

namespace sagin {

RatioLpResult solve_ratio_lp(const ScenarioConfig& cfg, const SolutionState& s,
                             const SegmentChoice& choice, const SolverOptions& opts) {
  const auto& al = s.allocation;
  const std::size_t K = cfg.num_gts;
  const double r_su = rate_sat_uav(cfg);
  const double kappa = cfg.cycles_per_overhead;
  const double tau_k = cfg.comp_energy_coeff * kappa;
  const double T = cfg.latency_budget;

  RatioLpResult out;
  out.ratio.resize(K);
  std::vector<double> lo(K), hi(K), rate(K);
  for (std::size_t k = 0; k < K; ++k) {
    const auto& curve = cfg.overhead_curves[k];
    const std::size_t d = static_cast<std::size_t>(choice.chosen_segment[k]);
    lo[k] = curve.lower_boundary(d);
    hi[k] = curve.upper_boundary(d);
    out.ratio[k] = lo[k];
    rate[k] = rate_uav_gt(cfg, s.placement, al.bandwidth[k], al.power[k], k);
    if (al.task[k] == Task::uav && !(al.cpu[k] > 0.0)) return out;
    if (!(rate[k] > 0.0)) return out;
  }

  // Column index of each GT that has a ratio variable, -1 otherwise.
  std::vector<int> col(K, -1);
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < K; ++k) {
    if (al.task[k] == Task::none) continue;
    col[k] = static_cast<int>(active.size());
    active.push_back(k);
  }
  const std::size_t n = active.size();

  LinearProgram lp;
  lp.cost.assign(n, 0.0);
  lp.lower.resize(n);
  lp.upper.resize(n);
  lp.rows.assign(K, std::vector<double>(n, 0.0));
  lp.rhs.assign(K, T - prop_delay(cfg));

  std::vector<double> shared_coef(K, 0.0);
  double shared_const = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double D = cfg.data_bits[k];
    const auto& seg = cfg.overhead_curves[k].segment(choice.chosen_segment[k]);
    const double p = al.power[k];
    if (al.task[k] == Task::satellite) {
      shared_coef[k] = kappa * seg.slope / cfg.sat_cpu + D / r_su;
      shared_const += kappa * seg.intercept / cfg.sat_cpu;
      lp.cost[col[k]] = tau_k * seg.slope * cfg.sat_cpu * cfg.sat_cpu + cfg.sat_tx_power * D / r_su +
                        p * D / rate[k];
    } else {
      shared_const += D / r_su;
    }
    if (al.task[k] == Task::uav) {
      const double f = al.cpu[k];
      lp.cost[col[k]] = tau_k * seg.slope * f * f + p * D / rate[k];
      lp.rows[k][col[k]] += kappa * seg.slope / f;
      lp.rhs[k] -= kappa * seg.intercept / f;
    }
    if (al.task[k] == Task::none) {
      lp.rhs[k] -= D / rate[k];
    } else {
      lp.rows[k][col[k]] += D / rate[k];
      lp.lower[col[k]] = lo[k];
      lp.upper[col[k]] = hi[k];
    }
  }
  for (std::size_t j = 0; j < K; ++j) {
    lp.rhs[j] -= shared_const;
    for (std::size_t k = 0; k < K; ++k)
      if (col[k] >= 0) lp.rows[j][col[k]] += shared_coef[k];
  }

  auto objective_at = [&](const std::vector<double>& x) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += lp.cost[i] * x[i];
    return v;
  };

  if (n == 0) {
    out.feasible = true;
    for (std::size_t j = 0; j < K; ++j) out.feasible = out.feasible && lp.rhs[j] >= -1e-12 * T;
    if (!out.feasible) out.worst_constraint = 0;
    return out;
  }

  const LpSolution sol = solve_lp(lp, opts.lp_tolerance);
  if (sol.status == LpStatus::optimal) {
    for (std::size_t i = 0; i < n; ++i) out.ratio[active[i]] = sol.x[i];
    out.objective = objective_at(sol.x);
    out.feasible = true;
    return out;
  }

  // Most violated row at the center of the box, for diagnostics.
  for (std::size_t j = 0; j < K; ++j) {
    double lhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) lhs += lp.rows[j][i] * 0.5 * (lp.lower[i] + lp.upper[i]);
    const double v = (lhs - lp.rhs[j]) / T;
    if (out.worst_constraint < 0 || v > out.worst_violation) {
      out.worst_constraint = static_cast<int>(j);
      out.worst_violation = v;
    }
  }

  // Fall back to the ratios minimizing the largest normalized overrun.
  LinearProgram minmax;
  minmax.cost.assign(n + 1, 0.0);
  minmax.cost[n] = 1.0;
  minmax.lower = lp.lower;
  minmax.lower.push_back(0.0);
  minmax.upper = lp.upper;
  minmax.upper.push_back(std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < K; ++j) {
    std::vector<double> row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = lp.rows[j][i] / T;
    row[n] = -1.0;
    minmax.rows.push_back(std::move(row));
    minmax.rhs.push_back(lp.rhs[j] / T);
  }
  const LpSolution fb = solve_lp(minmax, opts.lp_tolerance);
  if (fb.status == LpStatus::optimal) {
    for (std::size_t i = 0; i < n; ++i) out.ratio[active[i]] = fb.x[i];
    std::vector<double> x(fb.x.begin(), fb.x.begin() + static_cast<long>(n));
    out.objective = objective_at(x);
  }
  return out;
}

}  // namespace sagin
