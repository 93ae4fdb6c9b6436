#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

namespace sagin {

// Iteration budgets and tolerances shared by the solver blocks.
struct SolverOptions {
  int dual_max_iters = 500;
  double dual_step_scale = 1.0;
  double dual_tolerance = 1e-6;

  double grid_step_theta = 1e-3;    // rad
  int location_grid_points = 201;   // per axis
  int refinement_levels = 1;

  double kkt_tolerance = 1e-9;
  double lp_tolerance = 1e-12;

  double outer_tolerance = 1e-4;
  int max_outer_iters = 20;

  // Throws InputError naming the offending field.
  void validate() const;

  friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

SolverOptions options_from_json(const nlohmann::json& doc);
nlohmann::json options_to_json(const SolverOptions& opts);
SolverOptions load_options(const std::filesystem::path& path);

}  // namespace sagin
