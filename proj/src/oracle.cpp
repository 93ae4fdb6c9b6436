#include "sagin/oracle.hpp"

#include <cmath>
#include <limits>

#include "sagin/errors.hpp"

namespace sagin::oracle {

namespace {

using ld = long double;
constexpr ld kPi = 3.141592653589793238462643383279502884L;
constexpr ld kLn2 = 0.693147180559945309417232121458176568L;
constexpr ld kInfL = std::numeric_limits<ld>::infinity();

ld sq(ld v) { return v * v; }

// Fraction of the data still uncompressed on the UAV-GT hop.
ld hop_fraction(Task t, ld rho) {
  const ld aS = t == Task::satellite ? 1 : 0;
  const ld aU = t == Task::uav ? 1 : 0;
  return (aS + aU) * rho + (1 - aS - aU);
}

}  // namespace

long double rate_sat_uav(const ScenarioConfig& cfg) {
  const ld h2 = static_cast<ld>(cfg.sat_beam_gain) * sq(static_cast<ld>(cfg.sat_wavelength)) /
                sq(4 * kPi * static_cast<ld>(cfg.sat_uav_distance));
  const ld B = cfg.sat_bandwidth;
  return B * log1pl(h2 * static_cast<ld>(cfg.sat_tx_power) / (B * static_cast<ld>(cfg.noise_psd))) / kLn2;
}

long double prop_delay(const ScenarioConfig& cfg) {
  return static_cast<ld>(cfg.sat_uav_distance) / static_cast<ld>(cfg.lightspeed);
}

long double channel_gain(const ScenarioConfig& cfg, const Placement& pl, std::size_t k) {
  const ld dx = static_cast<ld>(pl.uav_xy.x) - cfg.gt_positions[k].x;
  const ld dy = static_cast<ld>(pl.uav_xy.y) - cfg.gt_positions[k].y;
  return static_cast<ld>(cfg.ref_channel_gain) / (dx * dx + dy * dy + sq(static_cast<ld>(pl.altitude)));
}

long double rate_uav_gt(const ScenarioConfig& cfg, const Placement& pl, long double b,
                        long double p, std::size_t k) {
  if (p == 0) return 0;
  if (b <= 0) return kInfL * 0;  // NaN: undefined
  const ld snr = static_cast<ld>(cfg.antenna_gain_const) * channel_gain(cfg, pl, k) * p /
                 (sq(static_cast<ld>(pl.half_beamwidth)) * b * static_cast<ld>(cfg.noise_psd));
  return b * log1pl(snr) / kLn2;
}

long double overhead(const OverheadCurve& curve, long double rho) {
  // Walk from the deepest segment up: the last one is closed below.
  const auto& segs = curve.segments();
  const std::size_t D = segs.size();
  for (std::size_t i = D; i-- > 0;) {
    const ld lo = segs[i].lower;
    const ld hi = i == 0 ? 1.0L : static_cast<ld>(segs[i - 1].lower);
    const bool in = (i == D - 1 ? rho >= lo : rho > lo) && rho <= hi;
    if (in) return static_cast<ld>(segs[i].slope) * rho + segs[i].intercept;
  }
  return kInfL * 0;
}

namespace {

struct Terms {
  ld t_sat = 0, t_tx = 0, t_prop = 0;
  std::vector<ld> t_uav, t_ug;
};

Terms terms(const ScenarioConfig& cfg, const SolutionState& s) {
  const auto& al = s.allocation;
  const std::size_t K = cfg.num_gts;
  const ld kappa = cfg.cycles_per_overhead;
  Terms t;
  ld work = 0, bits = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const ld D = cfg.data_bits[k];
    if (al.task[k] == Task::satellite) {
      work += kappa * overhead(cfg.overhead_curves[k], al.ratio[k]);
      bits += al.ratio[k] * D;
    } else {
      bits += D;
    }
  }
  t.t_sat = work / static_cast<ld>(cfg.sat_cpu);
  t.t_tx = bits / oracle::rate_sat_uav(cfg);
  t.t_prop = oracle::prop_delay(cfg);
  t.t_uav.assign(K, 0);
  t.t_ug.assign(K, 0);
  for (std::size_t k = 0; k < K; ++k) {
    if (al.task[k] == Task::uav) {
      const ld w = kappa * overhead(cfg.overhead_curves[k], al.ratio[k]);
      t.t_uav[k] = al.cpu[k] > 0 ? w / static_cast<ld>(al.cpu[k]) : kInfL;
    }
    const ld r = rate_uav_gt(cfg, s.placement, al.bandwidth[k], al.power[k], k);
    const ld bits_k = static_cast<ld>(cfg.data_bits[k]) * hop_fraction(al.task[k], al.ratio[k]);
    t.t_ug[k] = r > 0 ? bits_k / r : kInfL;
  }
  return t;
}

}  // namespace

std::vector<long double> latencies(const ScenarioConfig& cfg, const SolutionState& s) {
  const Terms t = terms(cfg, s);
  std::vector<ld> out(cfg.num_gts);
  for (std::size_t k = 0; k < cfg.num_gts; ++k)
    out[k] = t.t_sat + t.t_tx + t.t_prop + t.t_uav[k] + t.t_ug[k];
  return out;
}

long double total_energy(const ScenarioConfig& cfg, const SolutionState& s) {
  const Terms t = terms(cfg, s);
  const ld tau = cfg.comp_energy_coeff;
  ld e = tau * t.t_sat * powl(cfg.sat_cpu, 3) + t.t_tx * static_cast<ld>(cfg.sat_tx_power);
  for (std::size_t k = 0; k < cfg.num_gts; ++k) {
    if (t.t_uav[k] > 0) e += std::isinf(t.t_uav[k]) ? kInfL : tau * t.t_uav[k] * powl(s.allocation.cpu[k], 3);
    if (std::isinf(t.t_ug[k])) return kInfL;
    e += t.t_ug[k] * static_cast<ld>(s.allocation.power[k]);
  }
  return e;
}

bool latency_feasible(const ScenarioConfig& cfg, const SolutionState& s, long double rel_tol) {
  const ld T = cfg.latency_budget;
  for (ld v : latencies(cfg, s))
    if (!(v <= T * (1 + rel_tol))) return false;
  return true;
}

long double eval_formula_extended(std::string_view id, const ScenarioConfig& cfg,
                                  const FormulaArgs& a) {
  if (id == "r_SU") return oracle::rate_sat_uav(cfg);
  if (id == "t_P") return oracle::prop_delay(cfg);
  if (id == "g_k") return channel_gain(cfg, a.placement, a.gt);
  if (id == "r_k") return rate_uav_gt(cfg, a.placement, a.bandwidth, a.power, a.gt);
  if (id == "O_k") return overhead(cfg.overhead_curves.at(a.gt), a.ratio);
  throw InputError("unknown formula id '" + std::string(id) + "'");
}

TaskEnumeration enumerate_task_assignments(const ScenarioConfig& cfg, const SolutionState& s) {
  const std::size_t K = cfg.num_gts;
  if (K > 12) throw InputError("task enumeration limited to 12 GTs (3^K assignments)");
  std::size_t total = 1;
  for (std::size_t k = 0; k < K; ++k) total *= 3;

  TaskEnumeration best;
  best.objective = kInfL;
  SolutionState trial = s;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    // Most significant digit is GT 0, so codes run in lexicographic order.
    for (std::size_t k = K; k-- > 0;) {
      trial.allocation.task[k] = static_cast<Task>(c % 3);
      c /= 3;
    }
    if (!latency_feasible(cfg, trial)) continue;
    const ld e = oracle::total_energy(cfg, trial);
    if (!best.feasible || e < best.objective) {
      best.objective = e;
      best.task = trial.allocation.task;
      best.feasible = true;
    }
  }
  return best;
}

SegmentEnumeration enumerate_segments(const ScenarioConfig& cfg, const SolutionState& s) {
  const std::size_t K = cfg.num_gts;
  std::size_t total = 1;
  for (std::size_t k = 0; k < K; ++k) {
    total *= cfg.overhead_curves[k].size();
    if (total > 1000000) throw InputError("segment enumeration exceeds 1e6 combinations");
  }
  SegmentEnumeration best;
  best.objective = kInfL;
  SolutionState trial = s;
  std::vector<int> seg(K);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t k = K; k-- > 0;) {
      const auto& segs = cfg.overhead_curves[k].segments();
      seg[k] = static_cast<int>(c % segs.size());
      c /= segs.size();
      const ld hi = seg[k] == 0 ? 1.0L : static_cast<ld>(segs[seg[k] - 1].lower);
      trial.allocation.ratio[k] = static_cast<double>((hi + segs[seg[k]].lower) / 2);
    }
    if (!latency_feasible(cfg, trial)) continue;
    const ld e = oracle::total_energy(cfg, trial);
    if (!best.feasible || e < best.objective) {
      best.objective = e;
      best.segment = seg;
      best.feasible = true;
    }
  }
  return best;
}

GridResult grid_minimize(const std::function<double(const GridPoint&)>& objective,
                         const GridSpec& spec) {
  const std::size_t n = spec.axes.size();
  if (n == 0) throw InputError("grid: at least one axis required");
  for (const auto& a : spec.axes) {
    if (a.points < 2) throw InputError("grid: each axis needs at least 2 points");
    if (!(a.lower < a.upper)) throw InputError("grid: axis lower must be below upper");
  }

  GridResult best;
  best.value = std::numeric_limits<double>::infinity();
  bool found = false;

  auto sweep = [&](const std::vector<GridAxis>& axes) {
    std::vector<int> idx(n, 0);
    GridPoint p(n);
    while (true) {
      for (std::size_t d = 0; d < n; ++d) {
        const auto& a = axes[d];
        p[d] = idx[d] == a.points - 1 ? a.upper
                                       : a.lower + (a.upper - a.lower) * idx[d] / (a.points - 1);
      }
      if (!spec.filter || spec.filter(p)) {
        const double v = objective(p);
        if (v < best.value) {
          best.value = v;
          best.point = p;
          found = true;
        }
      }
      std::size_t d = n;
      while (d-- > 0) {
        if (++idx[d] < axes[d].points) break;
        idx[d] = 0;
      }
      if (d == static_cast<std::size_t>(-1)) break;
    }
  };

  sweep(spec.axes);
  if (!found) throw InfeasibleError("grid: no point passes the filter");
  for (const auto& a : spec.axes) best.cell.push_back((a.upper - a.lower) / (a.points - 1));

  std::vector<double> cell = best.cell;
  for (int level = 0; level < spec.zoom_levels; ++level) {
    std::vector<GridAxis> axes(n);
    // A level whose incumbent ends on an inner window edge is repeated around
    // the new incumbent before the cell shrinks.
    for (int pass = 0; pass <= spec.max_recenter; ++pass) {
      for (std::size_t d = 0; d < n; ++d) {
        const auto& orig = spec.axes[d];
        axes[d].lower = std::max(orig.lower, best.point[d] - cell[d]);
        axes[d].upper = std::min(orig.upper, best.point[d] + cell[d]);
        axes[d].points = spec.zoom_points;
        if (!(axes[d].lower < axes[d].upper)) axes[d].upper = axes[d].lower + 1e-300;
      }
      const GridPoint before = best.point;
      sweep(axes);
      bool on_edge = false;
      for (std::size_t d = 0; d < n; ++d) {
        const auto& orig = spec.axes[d];
        on_edge = on_edge || (best.point[d] == axes[d].lower && axes[d].lower > orig.lower) ||
                  (best.point[d] == axes[d].upper && axes[d].upper < orig.upper);
      }
      if (!on_edge || best.point == before) break;
    }
    for (std::size_t d = 0; d < n; ++d)
      cell[d] = (axes[d].upper - axes[d].lower) / (spec.zoom_points - 1);
  }
  return best;
}

JointResult brute_force_single_gt(const ScenarioConfig& cfg, int n) {
  if (cfg.num_gts != 1) throw InputError("joint brute force supports exactly one GT");
  if (n < 2) throw InputError("joint brute force needs at least 2 points per axis");
  const ld T = cfg.latency_budget;
  const ld kappa = cfg.cycles_per_overhead;
  const ld B = cfg.uav_bandwidth_total;
  const Interval hr = cfg.altitude_range;
  const Interval wr = cfg.working_beamwidth();
  const auto& curve = cfg.overhead_curves[0];
  const Vec2 gt = cfg.gt_positions[0];

  auto lin = [](double lo, double hi, int i, int m) {
    return i == m - 1 ? hi : lo + (hi - lo) * i / (m - 1);
  };

  JointResult best;
  best.objective = kInfL;
  SolutionState s;
  auto& al = s.allocation;
  al.bandwidth = {static_cast<double>(B)};
  al.cpu = {0.0};
  al.power = {0.0};
  al.ratio = {1.0};
  al.task = {Task::none};

  const int np = std::max(2, n / 4);
  const double offset = 50.0;

  // Least power delivering `bits` within `budget` seconds at full bandwidth.
  auto least_power = [&](ld bits, ld budget) -> ld {
    if (!(budget > 0)) return kInfL;
    const ld snr_per_watt = static_cast<ld>(cfg.antenna_gain_const) * channel_gain(cfg, s.placement, 0) /
                            (sq(static_cast<ld>(s.placement.half_beamwidth)) * B * static_cast<ld>(cfg.noise_psd));
    return expm1l(bits / (budget * B) * kLn2) / snr_per_watt;
  };

  auto try_state = [&]() {
    if (al.power[0] > cfg.uav_power_budget || al.cpu[0] > cfg.uav_cpu_total) return;
    // The tolerance absorbs rounding p to double.
    if (!latency_feasible(cfg, s, 1e-9L)) return;
    const ld e = oracle::total_energy(cfg, s);
    if (e < best.objective) {
      best.objective = e;
      best.state = s;
      best.feasible = true;
    }
  };

  for (int ix = 0; ix < 3; ++ix)
    for (int iy = 0; iy < 3; ++iy)
      for (int ih = 0; ih < np; ++ih)
        for (int it = 0; it < np; ++it) {
          s.placement.uav_xy = {gt.x + (ix - 1) * offset, gt.y + (iy - 1) * offset};
          s.placement.altitude = lin(hr.lower, hr.upper, ih, np);
          s.placement.half_beamwidth = lin(wr.lower, wr.upper, it, np);
          const ld reach = static_cast<ld>(s.placement.altitude) * tanl(s.placement.half_beamwidth);
          if (hypotl(s.placement.uav_xy.x - gt.x, s.placement.uav_xy.y - gt.y) > reach) continue;

          for (int task = 0; task < 3; ++task) {
            al.task[0] = static_cast<Task>(task);
            al.cpu[0] = 0.0;
            if (al.task[0] == Task::none) {
              al.ratio[0] = 1.0;
              const ld stage = static_cast<ld>(cfg.data_bits[0]) / oracle::rate_sat_uav(cfg) + oracle::prop_delay(cfg);
              al.power[0] = static_cast<double>(least_power(cfg.data_bits[0], T - stage));
              try_state();
              continue;
            }
            for (std::size_t d = 0; d < curve.size(); ++d) {
              const double lo = curve.lower_boundary(d);
              const double hi = d == 0 ? 1.0 : curve.lower_boundary(d - 1);
              for (int ir = 0; ir < n; ++ir) {
                const double rho = lin(lo, hi, ir, n);
                if (d > 0 && ir == n - 1) continue;  // belongs to the shallower segment
                al.ratio[0] = rho;
                const ld D = cfg.data_bits[0];
                const ld work = kappa * overhead(curve, rho);
                const ld hop_bits = D * rho;
                if (al.task[0] == Task::satellite) {
                  const ld stage = work / static_cast<ld>(cfg.sat_cpu) + rho * D / oracle::rate_sat_uav(cfg) + oracle::prop_delay(cfg);
                  al.power[0] = static_cast<double>(least_power(hop_bits, T - stage));
                  try_state();
                } else {
                  const ld stage = D / oracle::rate_sat_uav(cfg) + oracle::prop_delay(cfg);
                  const ld left = T - stage;
                  for (int is = 1; is < n; ++is) {
                    const ld share = static_cast<ld>(is) / n;  // of the slack spent computing
                    al.cpu[0] = static_cast<double>(work / (share * left));
                    al.power[0] = static_cast<double>(least_power(hop_bits, (1 - share) * left));
                    try_state();
                  }
                }
              }
            }
          }
        }
  return best;
}

}  // namespace sagin::oracle
