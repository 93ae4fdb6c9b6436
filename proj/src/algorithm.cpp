#include "sagin/algorithm.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <random>

#include "sagin/errors.hpp"
#include "sagin/subsolvers.hpp"

namespace sagin {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::sagin_psc: return "sagin_psc";
    case Scheme::non_semantic: return "non_semantic";
    case Scheme::random_comp: return "random_comp";
    case Scheme::fixed_location: return "fixed_location";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& name) {
  for (Scheme s : kAllSchemes)
    if (name == to_string(s)) return s;
  throw InputError("unknown scheme '" + name + "'");
}

const char* to_string(Block b) {
  switch (b) {
    case Block::task: return "task";
    case Block::ratio: return "ratio";
    case Block::cpu: return "cpu";
    case Block::power_bandwidth: return "power_bandwidth";
    case Block::altitude_beamwidth: return "altitude_beamwidth";
    case Block::location: return "location";
  }
  return "?";
}

std::vector<double> IterationTrace::objectives() const {
  std::vector<double> v{initial_objective};
  for (const auto& it : iterations) v.push_back(it.objective);
  return v;
}

SolutionState initialize(const ScenarioConfig& cfg) {
  const std::size_t K = cfg.num_gts;
  SolutionState s;
  Vec2 c;
  for (const auto& g : cfg.gt_positions) {
    c.x += g.x;
    c.y += g.y;
  }
  c.x /= static_cast<double>(K);
  c.y /= static_cast<double>(K);
  s.placement.uav_xy = c;

  double l_max = 0.0;
  for (const auto& g : cfg.gt_positions) l_max = std::max(l_max, distance(c, g));
  const Interval w = cfg.working_beamwidth();
  const Interval h = cfg.altitude_range;
  double theta = std::max(w.lower, std::atan(l_max / h.lower));
  if (theta > w.upper) theta = w.upper;
  const double alt = altitude_for_beamwidth(l_max, theta, h.lower);
  if (alt > h.upper) throw InfeasibleError("no altitude/beamwidth pair covers every GT");
  s.placement.altitude = alt;
  s.placement.half_beamwidth = theta;

  auto& al = s.allocation;
  al.bandwidth.assign(K, cfg.uav_bandwidth_total / static_cast<double>(K));
  al.power.assign(K, cfg.uav_power_budget / static_cast<double>(K));
  al.cpu.assign(K, cfg.uav_cpu_total / static_cast<double>(K));
  al.ratio.assign(K, 1.0);
  al.task.assign(K, Task::none);
  return s;
}

namespace {

// Candidate produced by one block, or the incumbent if the block failed.
SolutionState run_block(Block b, const ScenarioConfig& cfg, const SolverOptions& opts,
                        const SolutionState& cur, bool& solved) {
  SolutionState next = cur;
  auto& al = next.allocation;
  switch (b) {
    case Block::task: {
      const auto r = solve_task_allocation(cfg, cur, opts);
      al.task = r.task;
      solved = r.feasible;
      break;
    }
    case Block::ratio: {
      const auto choice = select_segments(cfg, cur, opts);
      const auto r = solve_ratio_lp(cfg, cur, choice, opts);
      al.ratio = r.ratio;
      solved = choice.feasible && r.feasible;
      break;
    }
    case Block::cpu: {
      const auto r = solve_cpu_allocation(cfg, cur);
      al.cpu = r.cpu;
      solved = r.feasible;
      break;
    }
    case Block::power_bandwidth: {
      const auto r = solve_power_bandwidth(cfg, cur, opts);
      al.bandwidth = r.bandwidth;
      al.power = r.power;
      solved = r.feasible;
      break;
    }
    case Block::altitude_beamwidth: {
      const auto r = solve_altitude_beamwidth(cfg, cur, opts);
      next.placement.altitude = r.altitude;
      next.placement.half_beamwidth = r.half_beamwidth;
      solved = r.feasible;
      break;
    }
    case Block::location: {
      const auto r = solve_location(cfg, cur, opts);
      next.placement.uav_xy = r.location;
      solved = r.feasible;
      break;
    }
  }
  return next;
}

bool no_worse(const Evaluation& cand, const Evaluation& cur) {
  constexpr double kRel = 1e-12;
  return cand.objective <= cur.objective * (1.0 + kRel) &&
         cand.violation <= cur.violation * (1.0 + kRel) + 1e-15;
}

double max_ratio_change(const SolutionState& a, const SolutionState& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.allocation.ratio.size(); ++k)
    m = std::max(m, std::abs(a.allocation.ratio[k] - b.allocation.ratio[k]));
  return m;
}

}  // namespace

RunResult run_algorithm1(const ScenarioConfig& cfg, const SolverOptions& opts,
                         const SolutionState& init, const BlockMask& mask) {
  using clock = std::chrono::steady_clock;
  RunResult out;
  out.state = init;
  Evaluation cur = evaluate(cfg, out.state);
  out.trace.initial_objective = cur.objective;
  out.trace.initial_violation = cur.violation;

  for (int iter = 0; iter < opts.max_outer_iters; ++iter) {
    const SolutionState start = out.state;
    const double start_obj = cur.objective;
    IterationRecord rec;
    for (std::size_t bi = 0; bi < kNumBlocks; ++bi) {
      BlockRecord& br = rec.blocks[bi];
      if (mask[bi]) {
        const auto t0 = clock::now();
        br.ran = true;
        try {
          bool solved = false;
          SolutionState cand = run_block(static_cast<Block>(bi), cfg, opts, out.state, solved);
          br.solved = solved;
          const Evaluation ev = evaluate(cfg, cand);
          if (no_worse(ev, cur)) {
            out.state = std::move(cand);
            cur = ev;
            br.accepted = true;
          }
        } catch (const std::domain_error&) {
          br.solved = false;
        }
        br.seconds = std::chrono::duration<double>(clock::now() - t0).count();
      }
      br.objective = cur.objective;
      br.violation = cur.violation;
    }
    rec.objective = cur.objective;
    rec.violation = cur.violation;
    rec.feasible = cur.feasible;
    out.trace.iterations.push_back(rec);

    const double rel = std::abs(start_obj - cur.objective) /
                       std::max(std::abs(start_obj), std::numeric_limits<double>::min());
    if (rel < opts.outer_tolerance && start.allocation.task == out.state.allocation.task &&
        max_ratio_change(start, out.state) <= 1e-12) {
      out.trace.converged = true;
      break;
    }
  }
  out.feasible = cur.feasible;
  return out;
}

RunResult run_scheme(const ScenarioConfig& cfg, Scheme scheme, const SolverOptions& opts,
                     std::uint64_t seed) {
  const SolutionState init = initialize(cfg);
  switch (scheme) {
    case Scheme::non_semantic:
      return run_algorithm1(cfg, opts, init, {false, false, false, true, true, true});
    case Scheme::random_comp: {
      SolutionState s = init;
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
      std::mt19937_64 rng(seq);
      for (auto& t : s.allocation.task) t = static_cast<Task>(rng() % 3);
      return run_algorithm1(cfg, opts, s, {false, true, true, true, true, true});
    }
    case Scheme::fixed_location:
      return run_algorithm1(cfg, opts, init, {true, true, true, true, true, false});
    case Scheme::sagin_psc: {
      const RunResult warm = run_scheme(cfg, Scheme::non_semantic, opts, seed);
      return run_algorithm1(cfg, opts, warm.state);
    }
  }
  throw InputError("unknown scheme");
}

}  // namespace sagin
