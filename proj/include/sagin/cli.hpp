#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sagin/algorithm.hpp"
#include "sagin/report.hpp"

namespace sagin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInfeasible = 2;

// Environment variable naming a default solver-options file.
inline constexpr const char* kOptionsEnv = "SAGIN_PSC_OPTIONS";

// Parameters a sweep may vary.
const std::vector<std::string>& sweep_parameters();

// "64KB", "25dB", "200km", "1GHz", "700ms" or a bare SI number, converted to
// the internal unit of `param`. Throws InputError.
double parse_quantity(const std::string& param, const std::string& text);
std::vector<double> parse_value_list(const std::string& param, const std::string& list);

// Copy of cfg with one parameter overridden and re-validated.
ScenarioConfig with_parameter(const ScenarioConfig& cfg, const std::string& param, double value);

struct SweepSpec {
  std::string param;
  std::vector<double> values;
  std::vector<Scheme> schemes;
  std::uint64_t seed = 7;
};

// Rows ordered by scheme, then ascending value, independent of `jobs`.
std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec,
                                const SolverOptions& opts, int jobs);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct HeatmapSpec {
  Vec2 center;
  double half_extent = 300.0;
  int points = 61;
};

struct HeatmapCell {
  double x = 0.0;
  double y = 0.0;
  double objective = 0.0;
  bool feasible = false;
};

// UAV-to-GT energy over a grid of UAV positions, every other variable taken
// from `solved`.
std::vector<HeatmapCell> run_heatmap(const ScenarioConfig& cfg, const SolutionState& solved,
                                     const HeatmapSpec& spec);
std::string heatmap_csv(const std::vector<HeatmapCell>& cells);

std::string convergence_csv(const std::vector<double>& sat_cpu,
                            const std::vector<IterationTrace>& traces);

int run(int argc, const char* const* argv);

}  // namespace sagin::cli
