#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sagin/subsolvers.hpp"

namespace sagin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Spectral efficiency each GT must reach, in bit/s/Hz.
std::vector<double> required_efficiency(const ScenarioConfig& cfg, const SolutionState& s,
                                        const std::vector<double>& slack) {
  const auto& al = s.allocation;
  std::vector<double> J(cfg.num_gts);
  for (std::size_t k = 0; k < cfg.num_gts; ++k)
    J[k] = cfg.data_bits[k] * ug_payload_factor(al.task[k], al.ratio[k]) / (al.bandwidth[k] * slack[k]);
  return J;
}

bool slacks_usable(const std::vector<double>& slack) {
  return std::all_of(slack.begin(), slack.end(),
                     [](double v) { return v > 0.0 && std::isfinite(v); });
}

double max_distance(const ScenarioConfig& cfg, const Vec2& at) {
  double l = 0.0;
  for (const auto& g : cfg.gt_positions) l = std::max(l, distance(at, g));
  return l;
}

// True when every GT meets its rate at altitude h and beamwidth theta.
bool rates_met(const ScenarioConfig& cfg, const SolutionState& s, const std::vector<double>& J,
               const Vec2& at, double h, double theta) {
  const auto& al = s.allocation;
  for (std::size_t k = 0; k < cfg.num_gts; ++k) {
    const double d = distance(at, cfg.gt_positions[k]);
    const double I = d * d + h * h;
    const double bound2 = cfg.antenna_gain_const * cfg.ref_channel_gain * al.power[k] /
                          (I * al.bandwidth[k] * cfg.noise_psd * std::expm1(J[k] * std::numbers::ln2));
    if (!(theta * theta <= bound2 * (1.0 + kFeasibilityTolerance))) return false;
  }
  return true;
}

}  // namespace

double ug_energy_at(const ScenarioConfig& cfg, const SolutionState& s, const Placement& pl) {
  const auto& al = s.allocation;
  double e = 0.0;
  for (std::size_t k = 0; k < cfg.num_gts; ++k) {
    const double r = rate_uav_gt(cfg, pl, al.bandwidth[k], al.power[k], k);
    const double bits = cfg.data_bits[k] * ug_payload_factor(al.task[k], al.ratio[k]);
    if (!(r > 0.0)) return kInf;
    e += al.power[k] * bits / r;
  }
  return e;
}

double altitude_for_beamwidth(double l_max, double theta, double h_min) {
  return std::max(h_min, l_max / std::tan(theta));
}

AltitudeBeamwidthResult solve_altitude_beamwidth(const ScenarioConfig& cfg, const SolutionState& s,
                                                 const SolverOptions& opts) {
  AltitudeBeamwidthResult out;
  out.altitude = s.placement.altitude;
  out.half_beamwidth = s.placement.half_beamwidth;
  out.objective = kInf;

  const std::vector<double> slack = ug_latency_slack(cfg, s);
  if (!slacks_usable(slack)) return out;
  const std::vector<double> J = required_efficiency(cfg, s, slack);
  const Vec2 at = s.placement.uav_xy;
  const double l_max = max_distance(cfg, at);
  const Interval w = cfg.working_beamwidth();
  const Interval hr = cfg.altitude_range;

  auto consider = [&](double theta, bool case1) {
    const double h = altitude_for_beamwidth(l_max, theta, hr.lower);
    if (h > hr.upper || !rates_met(cfg, s, J, at, h, theta)) return;
    const double obj = ug_energy_at(cfg, s, {at, h, theta});
    if (obj < out.objective) {
      out.objective = obj;
      out.altitude = h;
      out.half_beamwidth = theta;
      out.feasible = true;
      out.from_case1 = case1;
    }
  };

  // Case 1: lowest altitude, narrowest beam that still covers every GT.
  const double theta1 = std::max(w.lower, std::atan(l_max / hr.lower));
  if (theta1 <= w.upper) consider(theta1, true);

  // Case 2: altitude set by coverage, beamwidth on a uniform grid.
  if (l_max > 0.0) {
    const double theta_cap = std::min(w.upper, std::atan(l_max / hr.lower));
    const auto steps = static_cast<long>(std::floor((theta_cap - w.lower) / opts.grid_step_theta));
    for (long i = 0; i <= steps; ++i) {
      const double theta = w.lower + static_cast<double>(i) * opts.grid_step_theta;
      if (l_max / std::tan(theta) < hr.lower) continue;
      consider(theta, false);
    }
  }
  return out;
}

LocationResult solve_location(const ScenarioConfig& cfg, const SolutionState& s,
                              const SolverOptions& opts) {
  const auto& al = s.allocation;
  const std::size_t K = cfg.num_gts;
  const Placement& pl = s.placement;
  LocationResult out;
  out.location = pl.uav_xy;
  out.objective = kInf;
  out.radii.assign(K, -1.0);

  const std::vector<double> slack = ug_latency_slack(cfg, s);
  if (!slacks_usable(slack)) return out;
  const std::vector<double> J = required_efficiency(cfg, s, slack);
  const double coverage = pl.altitude * std::tan(pl.half_beamwidth);
  const double theta2 = pl.half_beamwidth * pl.half_beamwidth;

  Interval bx{-kInf, kInf}, by{-kInf, kInf};
  for (std::size_t k = 0; k < K; ++k) {
    const double q2 = cfg.antenna_gain_const * cfg.ref_channel_gain * al.power[k] /
                          (theta2 * al.bandwidth[k] * cfg.noise_psd * std::expm1(J[k] * std::numbers::ln2)) -
                      pl.altitude * pl.altitude;
    if (!(q2 >= 0.0)) return out;
    const double r = std::min(coverage, std::sqrt(q2));
    out.radii[k] = r;
    const Vec2& g = cfg.gt_positions[k];
    bx = {std::max(bx.lower, g.x - r), std::min(bx.upper, g.x + r)};
    by = {std::max(by.lower, g.y - r), std::min(by.upper, g.y + r)};
  }
  if (bx.lower > bx.upper || by.lower > by.upper) return out;

  auto inside = [&](const Vec2& p) {
    for (std::size_t k = 0; k < K; ++k)
      if (distance(p, cfg.gt_positions[k]) > out.radii[k] * (1.0 + 1e-12)) return false;
    return true;
  };
  bool found = false;
  auto consider = [&](const Vec2& p) {
    if (!inside(p)) return;
    const double obj = ug_energy_at(cfg, s, {p, pl.altitude, pl.half_beamwidth});
    if (obj < out.objective) {
      out.objective = obj;
      out.location = p;
      found = true;
    }
  };

  const int n = opts.location_grid_points;
  const double hx = (bx.upper - bx.lower) / (n - 1);
  const double hy = (by.upper - by.lower) / (n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) consider({bx.lower + i * hx, by.lower + j * hy});

  // Optima often sit on the boundary of the disk intersection, where grid
  // points are sparse. Sample every disk's circle, then zoom in on the best
  // angle of each.
  if (found) {
    const int m = 4 * (n - 1);
    for (std::size_t k = 0; k < K; ++k) {
      const Vec2& g = cfg.gt_positions[k];
      const double r = out.radii[k];
      double best = kInf, best_phi = 0.0;
      auto probe = [&](double phi) {
        const Vec2 p{g.x + r * std::cos(phi), g.y + r * std::sin(phi)};
        if (!inside(p)) return;
        const double obj = ug_energy_at(cfg, s, {p, pl.altitude, pl.half_beamwidth});
        if (obj < best) {
          best = obj;
          best_phi = phi;
        }
        consider(p);
      };
      double step = 2.0 * std::numbers::pi / m;
      for (int j = 0; j < m; ++j) probe(j * step);
      if (!(best < kInf)) continue;
      for (int level = 0; level < 4; ++level) {
        const double c = best_phi;
        for (int j = -10; j <= 10; ++j) probe(c + j * step / 10.0);
        step /= 10.0;
      }
    }
  }

  if (found) {
    double cx = hx, cy = hy;
    for (int level = 0; level < opts.refinement_levels; ++level) {
      cx *= 0.5;
      cy *= 0.5;
      const Vec2 c = out.location;
      for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j) consider({c.x + i * cx, c.y + j * cy});
    }
  } else if (inside(pl.uav_xy)) {
    consider(pl.uav_xy);
  }
  out.feasible = found;
  return out;
}

}  // namespace sagin
