#include "sagin/physics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "sagin/errors.hpp"

namespace sagin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Latency terms with +inf in place of undefined quotients.
LatencyBreakdown latency_terms(const ScenarioConfig& cfg, const SolutionState& s) {
  const auto& al = s.allocation;
  const std::size_t K = cfg.num_gts;
  const double r_su = rate_sat_uav(cfg);

  LatencyBreakdown out;
  double sat_overhead = 0.0;
  double sat_bits = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double aS = al.a_sat(k);
    if (aS > 0.0) sat_overhead += overhead_eval(cfg.overhead_curves[k], al.ratio[k]);
    sat_bits += aS * al.ratio[k] * cfg.data_bits[k] + (1.0 - aS) * cfg.data_bits[k];
  }
  out.sat_compute = cfg.cycles_per_overhead * sat_overhead / cfg.sat_cpu;
  out.sat_uav_tx = sat_bits / r_su;
  out.sat_uav_prop = prop_delay(cfg);
  const double stage = out.satellite_stage();

  out.uav_compute.resize(K);
  out.uav_gt_tx.resize(K);
  out.total.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    double tu = 0.0;
    if (al.task[k] == Task::uav) {
      const double work = cfg.cycles_per_overhead * overhead_eval(cfg.overhead_curves[k], al.ratio[k]);
      tu = al.cpu[k] > 0.0 ? work / al.cpu[k] : kInf;
    }
    const double bits = cfg.data_bits[k] * ug_payload_factor(al.task[k], al.ratio[k]);
    double tug = 0.0;
    if (bits > 0.0) {
      const double b = al.bandwidth[k];
      const double p = al.power[k];
      const double r = (b > 0.0 && p > 0.0) ? rate_uav_gt(cfg, s.placement, b, p, k) : 0.0;
      tug = r > 0.0 ? bits / r : kInf;
    }
    out.uav_compute[k] = tu;
    out.uav_gt_tx[k] = tug;
    out.total[k] = stage + tu + tug;
  }
  return out;
}

EnergyBreakdown energy_terms(const ScenarioConfig& cfg, const SolutionState& s,
                             const LatencyBreakdown& lat) {
  const auto& al = s.allocation;
  EnergyBreakdown e;
  e.sat_compute = cfg.comp_energy_coeff * lat.sat_compute * std::pow(cfg.sat_cpu, 3);
  e.sat_uav_comm = lat.sat_uav_tx * cfg.sat_tx_power;
  for (std::size_t k = 0; k < cfg.num_gts; ++k) {
    if (lat.uav_compute[k] > 0.0)
      e.uav_compute += std::isinf(lat.uav_compute[k])
                           ? kInf
                           : cfg.comp_energy_coeff * lat.uav_compute[k] * std::pow(al.cpu[k], 3);
    if (lat.uav_gt_tx[k] > 0.0)
      e.uav_gt_comm += std::isinf(lat.uav_gt_tx[k]) ? kInf : lat.uav_gt_tx[k] * al.power[k];
  }
  e.total = e.sat_compute + e.sat_uav_comm + e.uav_compute + e.uav_gt_comm;
  return e;
}

bool shape_ok(const ScenarioConfig& cfg, const SolutionState& s) {
  const auto& al = s.allocation;
  const std::size_t K = cfg.num_gts;
  return al.bandwidth.size() == K && al.cpu.size() == K && al.power.size() == K &&
         al.ratio.size() == K && al.task.size() == K;
}

void require_shape(const ScenarioConfig& cfg, const SolutionState& s) {
  if (!shape_ok(cfg, s)) throw ModelError("allocation vectors must have one entry per GT");
}

}  // namespace

const char* to_string(Task t) {
  switch (t) {
    case Task::none: return "none";
    case Task::satellite: return "satellite";
    case Task::uav: return "uav";
  }
  return "?";
}

const char* to_string(Constraint c) {
  switch (c) {
    case Constraint::latency: return "latency";
    case Constraint::power_budget: return "power_budget";
    case Constraint::coverage: return "coverage";
    case Constraint::altitude: return "altitude";
    case Constraint::bandwidth_budget: return "bandwidth_budget";
    case Constraint::cpu_budget: return "cpu_budget";
    case Constraint::ratio_bounds: return "ratio_bounds";
    case Constraint::beamwidth: return "beamwidth";
    case Constraint::nonnegativity: return "nonnegativity";
    case Constraint::shape: return "shape";
  }
  return "?";
}

double rate_sat_uav(const ScenarioConfig& cfg) {
  const double h = std::sqrt(cfg.sat_beam_gain) * cfg.sat_wavelength /
                   (4.0 * std::numbers::pi * cfg.sat_uav_distance);
  const double snr = h * h * cfg.sat_tx_power / (cfg.sat_bandwidth * cfg.noise_psd);
  return cfg.sat_bandwidth * std::log1p(snr) / std::numbers::ln2;
}

double prop_delay(const ScenarioConfig& cfg) { return cfg.sat_uav_distance / cfg.lightspeed; }

double channel_gain_ug(const ScenarioConfig& cfg, const Placement& pl, std::size_t k) {
  const Vec2& g = cfg.gt_positions.at(k);
  const double dx = pl.uav_xy.x - g.x;
  const double dy = pl.uav_xy.y - g.y;
  return cfg.ref_channel_gain / (dx * dx + dy * dy + pl.altitude * pl.altitude);
}

double rate_uav_gt(const ScenarioConfig& cfg, const Placement& pl, double b, double p,
                   std::size_t k) {
  if (p == 0.0) return 0.0;
  if (!(b > 0.0)) throw ModelError("UAV-GT rate undefined for zero bandwidth with positive power");
  const double theta = pl.half_beamwidth;
  const double snr = cfg.antenna_gain_const * channel_gain_ug(cfg, pl, k) * p /
                     (theta * theta * b * cfg.noise_psd);
  return b * std::log1p(snr) / std::numbers::ln2;
}

double ug_payload_factor(Task t, double rho) { return t == Task::none ? 1.0 : rho; }

LatencyBreakdown latency_breakdown(const ScenarioConfig& cfg, const SolutionState& s) {
  require_shape(cfg, s);
  LatencyBreakdown lat = latency_terms(cfg, s);
  for (std::size_t k = 0; k < cfg.num_gts; ++k) {
    if (std::isinf(lat.uav_compute[k]))
      throw ModelError("GT " + std::to_string(k) + " computes on the UAV with zero CPU share");
    if (std::isinf(lat.uav_gt_tx[k]))
      throw ModelError("GT " + std::to_string(k) + " has positive data and zero UAV-GT rate");
  }
  return lat;
}

EnergyBreakdown energy_breakdown(const ScenarioConfig& cfg, const SolutionState& s) {
  return energy_terms(cfg, s, latency_breakdown(cfg, s));
}

double total_energy(const ScenarioConfig& cfg, const SolutionState& s) {
  return energy_breakdown(cfg, s).total;
}

double FeasibilityReport::measure() const {
  double m = 0.0;
  for (const auto& v : violations) m += v.relative;
  return m;
}

FeasibilityReport check_feasibility(const ScenarioConfig& cfg, const SolutionState& s) {
  FeasibilityReport rep;
  if (!shape_ok(cfg, s)) {
    rep.violations.push_back({Constraint::shape, -1, -kInf, kInf});
    return rep;
  }
  const auto& al = s.allocation;
  const auto& pl = s.placement;
  const std::size_t K = cfg.num_gts;

  // slack >= -tol*scale passes; the relative size is |slack|/scale.
  auto check = [&](Constraint c, int gt, double slack, double scale) {
    scale = std::max(std::abs(scale), std::numeric_limits<double>::min());
    if (std::isnan(slack) || slack < -kFeasibilityTolerance * scale)
      rep.violations.push_back({c, gt, slack, std::isnan(slack) ? kInf : -slack / scale});
  };

  for (std::size_t k = 0; k < K; ++k) {
    const int gt = static_cast<int>(k);
    if (al.bandwidth[k] < 0.0)
      check(Constraint::nonnegativity, gt, al.bandwidth[k], cfg.uav_bandwidth_total);
    if (al.cpu[k] < 0.0) check(Constraint::nonnegativity, gt, al.cpu[k], cfg.uav_cpu_total);
    if (al.power[k] < 0.0) check(Constraint::nonnegativity, gt, al.power[k], cfg.uav_power_budget);
    const auto& curve = cfg.overhead_curves[k];
    check(Constraint::ratio_bounds, gt, std::min(al.ratio[k] - curve.min_ratio(), 1.0 - al.ratio[k]),
          1.0);
  }
  // Latency needs the ratio inside the curve's domain.
  bool ratios_ok = true;
  for (const auto& v : rep.violations) ratios_ok = ratios_ok && v.constraint != Constraint::ratio_bounds;

  if (ratios_ok) {
    const LatencyBreakdown lat = latency_terms(cfg, s);
    for (std::size_t k = 0; k < K; ++k)
      check(Constraint::latency, static_cast<int>(k), cfg.latency_budget - lat.total[k],
            cfg.latency_budget);
  }

  const double sum_p = std::accumulate(al.power.begin(), al.power.end(), 0.0);
  const double sum_b = std::accumulate(al.bandwidth.begin(), al.bandwidth.end(), 0.0);
  const double sum_f = std::accumulate(al.cpu.begin(), al.cpu.end(), 0.0);
  check(Constraint::power_budget, -1, cfg.uav_power_budget - sum_p, cfg.uav_power_budget);
  check(Constraint::bandwidth_budget, -1, cfg.uav_bandwidth_total - sum_b, cfg.uav_bandwidth_total);
  check(Constraint::cpu_budget, -1, cfg.uav_cpu_total - sum_f, cfg.uav_cpu_total);

  const double radius = pl.altitude * std::tan(pl.half_beamwidth);
  for (std::size_t k = 0; k < K; ++k)
    check(Constraint::coverage, static_cast<int>(k),
          radius - distance(pl.uav_xy, cfg.gt_positions[k]), std::max(radius, 1.0));

  const Interval& h = cfg.altitude_range;
  check(Constraint::altitude, -1, std::min(pl.altitude - h.lower, h.upper - pl.altitude), h.upper);
  const Interval w = cfg.working_beamwidth();
  check(Constraint::beamwidth, -1,
        std::min(pl.half_beamwidth - w.lower, w.upper - pl.half_beamwidth), w.upper);
  return rep;
}

Evaluation evaluate(const ScenarioConfig& cfg, const SolutionState& s) {
  Evaluation ev;
  const FeasibilityReport rep = check_feasibility(cfg, s);
  ev.violation = rep.measure();
  ev.feasible = rep.feasible();
  bool domain_ok = shape_ok(cfg, s);
  for (const auto& v : rep.violations)
    domain_ok = domain_ok && v.constraint != Constraint::ratio_bounds;
  if (!domain_ok) {
    ev.objective = kInf;
    return ev;
  }
  ev.objective = energy_terms(cfg, s, latency_terms(cfg, s)).total;
  return ev;
}

}  // namespace sagin
