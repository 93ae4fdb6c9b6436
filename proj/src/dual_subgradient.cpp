#include "sagin/dual_subgradient.hpp"

#include <cmath>
#include <limits>

namespace sagin {

namespace {

bool feasible(const DualAdapter& adapter, const std::vector<int>& x) {
  for (double r : adapter.residuals(x))
    if (r > 0.0) return false;
  return true;
}

void polish(const DualAdapter& adapter, std::vector<int>& x) {
  double obj = adapter.objective(x);
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (int c = 0; c < adapter.choices[k]; ++c) {
        if (c == x[k]) continue;
        std::vector<int> y = x;
        y[k] = c;
        const double o = adapter.objective(y);
        if (o < obj && feasible(adapter, y)) {
          x = std::move(y);
          obj = o;
          improved = true;
        }
      }
    }
  }
}

}  // namespace

DualResult dual_subgradient(const DualAdapter& adapter, const DualSettings& settings,
                            std::vector<double> lambda) {
  const std::size_t m = adapter.num_constraints;
  lambda.resize(m, 0.0);

  DualResult out;
  double best_obj = std::numeric_limits<double>::infinity();
  double best_violation = std::numeric_limits<double>::infinity();
  bool have_any = false;

  for (int t = 1; t <= settings.max_iters; ++t) {
    std::vector<int> x = adapter.minimize(lambda);
    const std::vector<double> g = adapter.residuals(x);

    double violation = 0.0;
    for (double r : g) violation += std::max(r, 0.0);
    if (violation == 0.0) {
      const double obj = adapter.objective(x);
      if (!out.feasible || obj < best_obj) {
        best_obj = obj;
        out.primal = x;
        out.feasible = true;
      }
    } else if (!out.feasible && (!have_any || violation < best_violation)) {
      best_violation = violation;
      out.primal = x;
    }
    have_any = true;
    out.iterations = t;

    const double xi = settings.step_scale / std::sqrt(static_cast<double>(t));
    double moved = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double next = std::max(0.0, lambda[j] + xi * g[j]);
      moved += (next - lambda[j]) * (next - lambda[j]);
      lambda[j] = next;
    }
    if (std::sqrt(moved) / xi < settings.tolerance) {
      out.converged = true;
      break;
    }
  }
  if (out.feasible && adapter.choices.size() == out.primal.size()) polish(adapter, out.primal);
  out.multipliers = std::move(lambda);
  return out;
}

}  // namespace sagin
