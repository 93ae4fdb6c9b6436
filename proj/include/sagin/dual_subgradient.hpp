#pragma once

#include <functional>
#include <vector>

namespace sagin {

// A problem whose primal is a vector of per-GT discrete choices, relaxed by
// multipliers on `num_constraints` inequality constraints g(x) <= 0.
struct DualAdapter {
  std::size_t num_constraints = 0;
  // Minimizes the Lagrangian at the given multipliers.
  std::function<std::vector<int>(const std::vector<double>& multipliers)> minimize;
  // Normalized residuals g(x); the point is feasible when all are <= 0.
  std::function<std::vector<double>(const std::vector<int>& primal)> residuals;
  // Primal objective used to rank feasible iterates.
  std::function<double(const std::vector<int>& primal)> objective;
  // Number of choices per coordinate. When set, a feasible result is improved
  // by feasible single-coordinate moves until none lowers the objective.
  std::vector<int> choices;
};

struct DualSettings {
  int max_iters = 500;
  double step_scale = 1.0;
  double tolerance = 1e-6;
};

struct DualResult {
  std::vector<int> primal;
  std::vector<double> multipliers;
  int iterations = 0;
  bool feasible = false;   // primal satisfies every constraint
  bool converged = false;  // stopped on the tolerance, not the budget
};

// Projected subgradient ascent with step xi_0/sqrt(t). Returns the best
// feasible primal seen; if none was feasible, the one with the smallest total
// positive residual.
DualResult dual_subgradient(const DualAdapter& adapter, const DualSettings& settings,
                            std::vector<double> initial_multipliers = {});

}  // namespace sagin
