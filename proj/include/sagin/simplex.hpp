#pragma once

#include <vector>

namespace sagin {

// min c'x  s.t.  A x <= b,  lower <= x <= upper.
// Lower bounds must be finite; upper bounds may be +inf.
struct LinearProgram {
  std::vector<double> cost;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
};

// Dense bounded-variable primal simplex (two phases, Bland's rule).
LpSolution solve_lp(const LinearProgram& lp, double tolerance = 1e-12);

}  // namespace sagin
