#include <cmath>
#include <numbers>
#include <numeric>

#include "../support/instances.hpp"
#include "doctest.h"
#include "sagin/dual_subgradient.hpp"
#include "sagin/oracle.hpp"
#include "sagin/simplex.hpp"

using namespace sagin;

namespace {

const SolverOptions kOpts{};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ScenarioConfig relaxed_default() {
  ScenarioConfig cfg = sagin::testing::default_config();
  cfg.latency_budget = 5.0;
  return cfg;
}

SegmentChoice choose(const ScenarioConfig& cfg, std::vector<int> segs) {
  SegmentChoice c;
  for (std::size_t k = 0; k < cfg.num_gts; ++k) {
    const auto& curve = cfg.overhead_curves[k];
    c.chosen_segment.push_back(segs[k]);
    c.alpha.emplace_back(curve.size(), 0);
    c.alpha.back()[segs[k]] = 1;
    c.midpoints.emplace_back();
    for (std::size_t d = 0; d < curve.size(); ++d) c.midpoints.back().push_back(curve.midpoint(d));
  }
  c.feasible = true;
  return c;
}

}  // namespace

TEST_SUITE("dual subgradient") {
  TEST_CASE("zero residuals return at once with the multipliers unchanged") {
    DualAdapter a;
    a.num_constraints = 2;
    a.minimize = [](const std::vector<double>&) { return std::vector<int>{1, 0}; };
    a.residuals = [](const std::vector<int>&) { return std::vector<double>{0.0, 0.0}; };
    a.objective = [](const std::vector<int>&) { return 1.0; };
    const DualResult r = dual_subgradient(a, {}, {0.3, 0.0});
    CHECK(r.iterations == 1);
    CHECK(r.converged);
    CHECK(r.feasible);
    CHECK(r.multipliers == std::vector<double>{0.3, 0.0});
    CHECK(r.primal == std::vector<int>{1, 0});
  }

  TEST_CASE("a constant positive residual grows the multiplier by xi/sqrt(t)") {
    DualAdapter a;
    a.num_constraints = 1;
    a.minimize = [](const std::vector<double>&) { return std::vector<int>{0}; };
    a.residuals = [](const std::vector<int>&) { return std::vector<double>{1.0}; };
    a.objective = [](const std::vector<int>&) { return 0.0; };
    const DualResult r = dual_subgradient(a, {25, 0.5, 1e-6});
    double expected = 0.0;
    for (int t = 1; t <= 25; ++t) expected += 0.5 / std::sqrt(t);
    CHECK(r.iterations == 25);
    CHECK_FALSE(r.converged);
    CHECK_FALSE(r.feasible);
    CHECK(r.multipliers[0] == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_SUITE("simplex") {
  TEST_CASE("textbook maximization") {
    // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18.
    LinearProgram lp{{-3, -5}, {{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18}, {0, 0}, {INFINITY, INFINITY}};
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.x[0] == doctest::Approx(2.0));
    CHECK(s.x[1] == doctest::Approx(6.0));
    CHECK(s.objective == doctest::Approx(-36.0));
  }

  TEST_CASE("bounds, negative right-hand sides and infeasibility") {
    // min x + y s.t. -x - y <= -1.5, 0.2 <= x <= 1, 0 <= y <= 1.
    LinearProgram lp{{1, 1}, {{-1, -1}}, {-1.5}, {0.2, 0}, {1, 1}};
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(1.5));

    lp.rhs = {-2.5};
    CHECK(solve_lp(lp).status == LpStatus::infeasible);

    LinearProgram unbounded{{-1}, {}, {}, {0}, {INFINITY}};
    CHECK(solve_lp(unbounded).status == LpStatus::unbounded);

    // Upper bound active with no rows at all.
    LinearProgram box{{-1, 2}, {}, {}, {-1, -3}, {4, 5}};
    s = solve_lp(box);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.x == std::vector<double>{4, -3});
  }

  TEST_CASE("degenerate vertex terminates") {
    LinearProgram lp{{-1, -1}, {{1, 1}, {1, 0}, {0, 1}, {1, 1}}, {1, 1, 1, 1}, {0, 0}, {INFINITY, INFINITY}};
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(-1.0));
  }
}

TEST_SUITE("task allocation") {
  TEST_CASE("no compression when ratios are one") {
    const ScenarioConfig cfg = relaxed_default();
    SolutionState s = initialize(cfg);
    const auto r = solve_task_allocation(cfg, s, kOpts);
    CHECK(r.feasible);
    for (Task t : r.task) CHECK(t == Task::none);
  }

  TEST_CASE("satellite compression wins when it saves the most energy") {
    const ScenarioConfig cfg = relaxed_default();
    SolutionState s = initialize(cfg);
    for (auto& r : s.allocation.ratio) r = 0.3;
    const auto r = solve_task_allocation(cfg, s, kOpts);
    CHECK(r.feasible);
    for (Task t : r.task) CHECK(t == Task::satellite);
  }

  TEST_CASE("a zero CPU share blocks UAV compression") {
    const ScenarioConfig cfg = relaxed_default();
    SolutionState s = initialize(cfg);
    s.allocation.cpu[1] = 0.0;
    const auto r = solve_task_allocation(cfg, s, kOpts);
    CHECK(r.uav_blocked == std::vector<int>{1});
    CHECK(r.task[1] != Task::uav);
  }

  TEST_CASE("matches enumeration on small random instances") {
    sagin::testing::Rng rng(17);
    for (int i = 0; i < 20; ++i) {
      const ScenarioConfig cfg = sagin::testing::random_config(rng, 2);
      SolutionState s = sagin::testing::random_state(cfg, rng);
      const auto en = oracle::enumerate_task_assignments(cfg, s);
      const auto r = solve_task_allocation(cfg, s, kOpts);
      CHECK(r.feasible == en.feasible);
      if (!en.feasible) continue;
      s.allocation.task = r.task;
      CHECK(rel(static_cast<double>(oracle::total_energy(cfg, s)), static_cast<double>(en.objective)) < 1e-9);
    }
  }
}

TEST_SUITE("segment selection") {
  TEST_CASE("a single-segment curve forces the only segment") {
    ScenarioConfig cfg = relaxed_default();
    for (auto& c : cfg.overhead_curves) c = OverheadCurve({{-1e7, 1.4e7, 0.3}});
    SolutionState s = initialize(cfg);
    for (auto& t : s.allocation.task) t = Task::satellite;
    const auto r = select_segments(cfg, s, kOpts);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(r.chosen_segment[k] == 0);
      CHECK(r.alpha[k] == std::vector<int>{1});
    }
  }

  TEST_CASE("GTs without compression take the first segment") {
    const ScenarioConfig cfg = relaxed_default();
    SolutionState s = initialize(cfg);
    s.allocation.task = {Task::satellite, Task::none, Task::uav, Task::none};
    const auto r = select_segments(cfg, s, kOpts);
    CHECK(r.chosen_segment[1] == 0);
    CHECK(r.chosen_segment[3] == 0);
    for (const auto& row : r.alpha) CHECK(std::accumulate(row.begin(), row.end(), 0) == 1);
  }

  TEST_CASE("matches enumeration on small random instances") {
    sagin::testing::Rng rng(23);
    for (int i = 0; i < 20; ++i) {
      const ScenarioConfig cfg = sagin::testing::random_config(rng, 2);
      SolutionState s = sagin::testing::random_state(cfg, rng);
      const auto en = oracle::enumerate_segments(cfg, s);
      const auto r = select_segments(cfg, s, kOpts);
      CHECK(r.feasible == en.feasible);
      if (!en.feasible) continue;
      for (std::size_t k = 0; k < 2; ++k) s.allocation.ratio[k] = r.midpoints[k][r.chosen_segment[k]];
      CHECK(rel(static_cast<double>(oracle::total_energy(cfg, s)), static_cast<double>(en.objective)) < 1e-9);
    }
  }
}

TEST_SUITE("ratio LP") {
  TEST_CASE("positive ratio costs with slack latency give the lower corner") {
    const ScenarioConfig cfg = relaxed_default();
    SolutionState s = initialize(cfg);
    for (auto& t : s.allocation.task) t = Task::satellite;
    const auto r = solve_ratio_lp(cfg, s, choose(cfg, {0, 0, 0, 0}), kOpts);
    REQUIRE(r.feasible);
    for (double rho : r.ratio) CHECK(rho == doctest::Approx(0.70));
  }

  TEST_CASE("without compression the ratio is free and the lower corner is returned") {
    const ScenarioConfig cfg = relaxed_default();
    const SolutionState s = initialize(cfg);
    const auto r = solve_ratio_lp(cfg, s, choose(cfg, {1, 2, 0, 1}), kOpts);
    REQUIRE(r.feasible);
    CHECK(r.ratio == std::vector<double>{0.45, 0.25, 0.70, 0.45});
  }

  TEST_CASE("a binding latency pushes the ratio off the corner") {
    ScenarioConfig cfg = sagin::testing::default_config();
    SolutionState s = initialize(cfg);
    for (auto& t : s.allocation.task) t = Task::satellite;
    // Deep compression costs satellite time; ratios must balance it against
    // transmission time.
    cfg.sat_cpu = 0.2e9;
    const auto r = solve_ratio_lp(cfg, s, choose(cfg, {2, 2, 2, 2}), kOpts);
    if (r.feasible) {
      s.allocation.ratio = r.ratio;
      CHECK(oracle::latency_feasible(cfg, s, 1e-9L));
    } else {
      CHECK(r.worst_constraint >= 0);
      CHECK(r.worst_violation > 0.0);
    }
  }
}

TEST_SUITE("cpu allocation") {
  TEST_CASE("GTs not computing on the UAV get no CPU") {
    const ScenarioConfig cfg = relaxed_default();
    SolutionState s = initialize(cfg);
    s.allocation.task = {Task::uav, Task::none, Task::satellite, Task::none};
    s.allocation.ratio[0] = 0.6;
    s.allocation.ratio[2] = 0.6;
    const auto r = solve_cpu_allocation(cfg, s);
    REQUIRE(r.feasible);
    CHECK(r.cpu[0] > 0.0);
    CHECK(r.cpu[1] == 0.0);
    CHECK(r.cpu[2] == 0.0);
    CHECK(r.cpu[3] == 0.0);
  }

  TEST_CASE("closed form: work over latency slack") {
    ScenarioConfig cfg = relaxed_default();
    SolutionState s = initialize(cfg);
    s.allocation.task[0] = Task::uav;
    s.allocation.ratio[0] = 0.6;
    cfg.cycles_per_overhead = 1e8 / overhead_eval(cfg.overhead_curves[0], 0.6);
    cfg.uav_cpu_total = 2e9;
    const LatencyBreakdown lat = latency_breakdown(cfg, s);
    const double slack = cfg.latency_budget - lat.satellite_stage() - lat.uav_gt_tx[0];
    cfg.latency_budget += 0.1 - slack;
    const auto r = solve_cpu_allocation(cfg, s);
    REQUIRE(r.feasible);
    CHECK(rel(r.cpu[0], 1e9) < 1e-9);
  }

  TEST_CASE("infeasible when the CPU budget is exceeded") {
    ScenarioConfig cfg = relaxed_default();
    cfg.uav_cpu_total = 1e3;
    SolutionState s = initialize(cfg);
    s.allocation.task[0] = Task::uav;
    s.allocation.ratio[0] = 0.6;
    CHECK_FALSE(solve_cpu_allocation(cfg, s).feasible);
  }
}

TEST_SUITE("power and bandwidth") {
  TEST_CASE("single GT meets its rate with equality") {
    ScenarioConfig cfg = default_scenario({{10.0, -20.0}});
    cfg.latency_budget = 1.5;
    const SolutionState s = initialize(cfg);
    const auto r = solve_power_bandwidth(cfg, s, kOpts);
    REQUIRE(r.feasible);
    const double rate = rate_uav_gt(cfg, s.placement, r.bandwidth[0], r.power[0], 0);
    CHECK(rel(cfg.data_bits[0] / rate, ug_latency_slack(cfg, s)[0]) < 1e-9);
    CHECK(r.bandwidth[0] <= cfg.uav_bandwidth_total * (1 + 1e-12));
    CHECK(r.power[0] <= cfg.uav_power_budget * (1 + 1e-12));
    CHECK(r.kkt_residual < 1e-6);
  }

  TEST_CASE("symmetric GTs receive equal shares") {
    ScenarioConfig cfg = default_scenario({{100, 0}, {-100, 0}, {0, 100}, {0, -100}});
    cfg.latency_budget = 1.5;
    const SolutionState s = initialize(cfg);
    const auto r = solve_power_bandwidth(cfg, s, kOpts);
    REQUIRE(r.feasible);
    for (std::size_t k = 1; k < 4; ++k) {
      CHECK(rel(r.bandwidth[k], r.bandwidth[0]) < 1e-9);
      CHECK(rel(r.power[k], r.power[0]) < 1e-9);
    }
  }

  TEST_CASE("infeasible when the power budget cannot meet the rates") {
    ScenarioConfig cfg = sagin::testing::default_config();
    cfg.uav_power_budget = 1e-12;
    cfg.latency_budget = 1.2;
    const auto r = solve_power_bandwidth(cfg, initialize(cfg), kOpts);
    CHECK_FALSE(r.feasible);
  }
}

TEST_SUITE("altitude and beamwidth") {
  TEST_CASE("lowest covering altitude") {
    CHECK(altitude_for_beamwidth(300.0, std::numbers::pi / 4, 50.0) == doctest::Approx(300.0));
    CHECK(altitude_for_beamwidth(10.0, std::numbers::pi / 4, 50.0) == 50.0);
    CHECK(altitude_for_beamwidth(0.0, 0.3, 50.0) == 50.0);
  }

  TEST_CASE("a GT straight below the UAV needs no coverage") {
    ScenarioConfig cfg = default_scenario({{0.0, 0.0}});
    cfg.latency_budget = 1.5;
    SolutionState s = initialize(cfg);
    const auto r = solve_altitude_beamwidth(cfg, s, kOpts);
    REQUIRE(r.feasible);
    CHECK(r.altitude == cfg.altitude_range.lower);
    CHECK(r.half_beamwidth == cfg.working_beamwidth().lower);
  }

  TEST_CASE("output satisfies the covering-altitude identity") {
    sagin::testing::Rng rng(31);
    for (int i = 0; i < 10; ++i) {
      const ScenarioConfig cfg = sagin::testing::random_config(rng, 3);
      const SolutionState s = sagin::testing::random_state(cfg, rng);
      const auto r = solve_altitude_beamwidth(cfg, s, kOpts);
      if (!r.feasible) continue;
      double l = 0.0;
      for (const auto& g : cfg.gt_positions) l = std::max(l, distance(s.placement.uav_xy, g));
      CHECK(r.altitude == altitude_for_beamwidth(l, r.half_beamwidth, cfg.altitude_range.lower));
    }
  }
}

TEST_SUITE("location") {
  TEST_CASE("a single GT pulls the UAV on top of it") {
    ScenarioConfig cfg = default_scenario({{40.0, -25.0}});
    cfg.latency_budget = 1.5;
    SolutionState s = initialize(cfg);
    s.placement.uav_xy = {0.0, 0.0};
    s.placement.half_beamwidth = 0.8;
    const auto r = solve_location(cfg, s, kOpts);
    REQUIRE(r.feasible);
    const double cell = 2 * r.radii[0] / (kOpts.location_grid_points - 1);
    CHECK(distance(r.location, cfg.gt_positions[0]) <= cell);
  }

  TEST_CASE("mirrored GTs put the UAV on the bisector") {
    ScenarioConfig cfg = default_scenario({{-120.0, 30.0}, {120.0, 30.0}});
    cfg.latency_budget = 1.5;
    SolutionState s = initialize(cfg);
    s.placement.half_beamwidth = 1.0;
    s.placement.altitude = 200.0;
    const auto r = solve_location(cfg, s, kOpts);
    REQUIRE(r.feasible);
    const double width = 2 * std::min(r.radii[0], r.radii[1]) - 240.0;
    CHECK(std::abs(r.location.x) <= width / (kOpts.location_grid_points - 1));
  }

  TEST_CASE("heavier data pulls the UAV toward its GT") {
    ScenarioConfig cfg = default_scenario({{-100.0, 0.0}, {100.0, 0.0}});
    cfg.latency_budget = 1.5;
    cfg.data_bits = {16.0 * 8192, 96.0 * 8192};
    SolutionState s = initialize(cfg);
    s.placement.half_beamwidth = 1.0;
    s.placement.altitude = 200.0;
    const auto r = solve_location(cfg, s, kOpts);
    REQUIRE(r.feasible);
    CHECK(r.location.x > 0.0);
  }
}
