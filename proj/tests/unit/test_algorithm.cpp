#include <chrono>
#include <cmath>

#include "../support/instances.hpp"
#include "doctest.h"
#include "sagin/errors.hpp"
#include "sagin/oracle.hpp"

using namespace sagin;

namespace {

const SolverOptions kOpts{};

bool non_increasing(const IterationTrace& t, double tol = 1e-9) {
  double prev = t.initial_objective;
  for (const auto& it : t.iterations)
    for (const auto& b : it.blocks) {
      if (!b.ran) continue;
      if (b.objective > prev * (1 + tol)) return false;
      prev = b.objective;
    }
  return true;
}

}  // namespace

TEST_CASE("initialization") {
  const ScenarioConfig square = default_scenario({{50, 50}, {-50, 50}, {-50, -50}, {50, -50}});
  const SolutionState s = initialize(square);
  CHECK(s.placement.uav_xy.x == doctest::Approx(0.0));
  CHECK(s.placement.uav_xy.y == doctest::Approx(0.0));
  CHECK(s.placement.altitude * std::tan(s.placement.half_beamwidth) >=
        doctest::Approx(std::hypot(50.0, 50.0)));
  CHECK(check_feasibility(square, s).violations.size() >= 0);
  for (Task t : s.allocation.task) CHECK(t == Task::none);
  for (double r : s.allocation.ratio) CHECK(r == 1.0);
  for (double b : s.allocation.bandwidth) CHECK(b == doctest::Approx(square.uav_bandwidth_total / 4));

  const ScenarioConfig single = default_scenario({{12.0, -7.0}});
  const SolutionState one = initialize(single);
  CHECK(one.placement.uav_xy == single.gt_positions[0]);
  CHECK(one.placement.half_beamwidth == single.working_beamwidth().lower);
  CHECK(one.placement.altitude == single.altitude_range.lower);

  CHECK(initialize(sagin::testing::default_config()) == initialize(sagin::testing::default_config()));

  ScenarioConfig wide = sagin::testing::default_config();
  wide.altitude_range = {50.0, 60.0};
  wide.beamwidth_range = {0.0, 0.2};
  CHECK_THROWS_AS(initialize(wide), InfeasibleError);
}

TEST_CASE("default scenario converges with a non-increasing trace") {
  const ScenarioConfig cfg = sagin::testing::default_config();
  const auto start = std::chrono::steady_clock::now();
  const RunResult r = run_scheme(cfg, Scheme::sagin_psc, kOpts, 7);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(r.feasible);
  CHECK(r.trace.converged);
  CHECK(r.trace.iterations.size() <= 10);
  CHECK(non_increasing(r.trace));
  CHECK(secs < 10.0);
  const auto obj = r.trace.objectives();
  CHECK(std::abs(obj.back() - obj[obj.size() - 2]) / obj.back() < kOpts.outer_tolerance);
  CHECK(check_feasibility(cfg, r.state).feasible());

  const EnergyBreakdown e = energy_breakdown(cfg, r.state);
  CHECK(e.uav_gt_comm < 0.05 * e.total);
  CHECK(e.total == doctest::Approx(obj.back()));
}

TEST_CASE("a loose budget without compression settles at once") {
  ScenarioConfig cfg = sagin::testing::default_config();
  cfg.latency_budget = 1e6;
  const RunResult r = run_scheme(cfg, Scheme::non_semantic, kOpts, 7);
  CHECK(r.feasible);
  CHECK(r.trace.converged);
  CHECK(r.trace.iterations.size() <= 3);
  for (Task t : r.state.allocation.task) CHECK(t == Task::none);
}

TEST_CASE("single GT instance is close to the joint brute force") {
  ScenarioConfig cfg = default_scenario({{60.0, -40.0}});
  cfg.latency_budget = 0.5;
  const RunResult r = run_scheme(cfg, Scheme::sagin_psc, kOpts, 7);
  const oracle::JointResult bf = oracle::brute_force_single_gt(cfg, 24);
  REQUIRE(bf.feasible);
  REQUIRE(r.feasible);
  const double mine = total_energy(cfg, r.state);
  CHECK(mine <= static_cast<double>(bf.objective) * 1.05);
}

TEST_CASE("scheme behaviour") {
  const ScenarioConfig cfg = sagin::testing::default_config();

  const RunResult ns = run_scheme(cfg, Scheme::non_semantic, kOpts, 7);
  const EnergyBreakdown e = energy_breakdown(cfg, ns.state);
  CHECK(e.sat_compute == 0.0);
  CHECK(e.uav_compute == 0.0);

  const RunResult a = run_scheme(cfg, Scheme::random_comp, kOpts, 3);
  const RunResult b = run_scheme(cfg, Scheme::random_comp, kOpts, 3);
  CHECK(a.state == b.state);
  CHECK(a.trace.objectives() == b.trace.objectives());

  const RunResult psc = run_scheme(cfg, Scheme::sagin_psc, kOpts, 7);
  CHECK(total_energy(cfg, psc.state) <= evaluate(cfg, ns.state).objective);

  const RunResult fixed = run_scheme(cfg, Scheme::fixed_location, kOpts, 7);
  CHECK(fixed.state.placement.uav_xy == initialize(cfg).placement.uav_xy);
}

TEST_CASE("identical inputs give bit-identical traces") {
  const ScenarioConfig cfg = sagin::testing::default_config();
  const RunResult a = run_scheme(cfg, Scheme::sagin_psc, kOpts, 7);
  const RunResult b = run_scheme(cfg, Scheme::sagin_psc, kOpts, 7);
  CHECK(a.trace.objectives() == b.trace.objectives());
  CHECK(a.state == b.state);
}

TEST_CASE("masked blocks never run") {
  const ScenarioConfig cfg = sagin::testing::default_config();
  BlockMask mask = kAllBlocks;
  mask[static_cast<std::size_t>(Block::location)] = false;
  const RunResult r = run_algorithm1(cfg, kOpts, initialize(cfg), mask);
  for (const auto& it : r.trace.iterations) CHECK_FALSE(it.blocks[static_cast<std::size_t>(Block::location)].ran);
  CHECK(non_increasing(r.trace));
}

TEST_CASE("scheme names") {
  for (Scheme s : kAllSchemes) CHECK(scheme_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(scheme_from_string("greedy"), InputError);
}
