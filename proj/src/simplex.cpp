#include "sagin/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sagin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class At { basic, lower, upper };

// Tableau B^-1 [A | I | art] with nonbasic columns resting on a bound.
class Tableau {
 public:
  Tableau(std::vector<std::vector<double>> t, std::vector<double> xb, std::vector<int> basis,
          std::vector<double> ub, double tol)
      : t_(std::move(t)), xb_(std::move(xb)), basis_(std::move(basis)), ub_(std::move(ub)),
        at_(ub_.size(), At::lower), tol_(tol) {
    for (int b : basis_) at_[b] = At::basic;
  }

  // Runs simplex iterations for `cost` over columns [0, allowed).
  LpStatus optimize(const std::vector<double>& cost, std::size_t allowed, int& pivots,
                    int max_pivots) {
    const std::size_t m = t_.size();
    while (pivots < max_pivots) {
      // Bland: lowest-index improving column.
      int enter = -1;
      double dir = 0.0;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (at_[j] == At::basic) continue;
        double d = cost[j];
        for (std::size_t i = 0; i < m; ++i) d -= cost[basis_[i]] * t_[i][j];
        if (at_[j] == At::lower && d < -tol_ && ub_[j] > 0.0) {
          enter = static_cast<int>(j);
          dir = 1.0;
          break;
        }
        if (at_[j] == At::upper && d > tol_) {
          enter = static_cast<int>(j);
          dir = -1.0;
          break;
        }
      }
      if (enter < 0) return LpStatus::optimal;

      double theta = ub_[enter];
      int leave = -1;
      bool leave_to_upper = false;
      for (std::size_t i = 0; i < m; ++i) {
        const double alpha = t_[i][enter] * dir;
        double limit = kInf;
        bool to_upper = false;
        if (alpha > kPivotTol) {
          limit = std::max(xb_[i], 0.0) / alpha;
        } else if (alpha < -kPivotTol && std::isfinite(ub_[basis_[i]])) {
          limit = std::max(ub_[basis_[i]] - xb_[i], 0.0) / -alpha;
          to_upper = true;
        } else {
          continue;
        }
        if (limit < theta || (limit == theta && leave >= 0 && basis_[i] < basis_[leave])) {
          theta = limit;
          leave = static_cast<int>(i);
          leave_to_upper = to_upper;
        }
      }
      if (!std::isfinite(theta)) return LpStatus::unbounded;

      for (std::size_t i = 0; i < m; ++i) xb_[i] -= t_[i][enter] * dir * theta;
      const double entering_value = (at_[enter] == At::lower ? 0.0 : ub_[enter]) + dir * theta;
      if (leave < 0) {
        at_[enter] = at_[enter] == At::lower ? At::upper : At::lower;
      } else {
        at_[basis_[leave]] = leave_to_upper ? At::upper : At::lower;
        pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
        xb_[leave] = entering_value;
      }
      ++pivots;
    }
    return LpStatus::iteration_limit;
  }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t m = t_.size();
    const double p = t_[r][c];
    for (double& v : t_[r]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      const double f = t_[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < t_[i].size(); ++j) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = static_cast<int>(c);
    at_[c] = At::basic;
  }

  // Pivots basic artificials (columns >= first_art) out wherever a real
  // column has a usable entry in their row.
  void expel_artificials(std::size_t first_art) {
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (static_cast<std::size_t>(basis_[i]) < first_art) continue;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (at_[j] == At::basic || std::abs(t_[i][j]) <= 1e-9) continue;
        const double value = at_[j] == At::lower ? 0.0 : ub_[j];
        at_[basis_[i]] = At::lower;
        pivot(i, j);
        xb_[i] = value;
        break;
      }
    }
  }

  double value(std::size_t j) const {
    if (at_[j] == At::lower) return 0.0;
    if (at_[j] == At::upper) return ub_[j];
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (static_cast<std::size_t>(basis_[i]) == j) return xb_[i];
    return 0.0;
  }

  void fix_at_zero(std::size_t from) {
    for (std::size_t j = from; j < ub_.size(); ++j)
      if (at_[j] != At::basic) ub_[j] = 0.0;
  }

 private:
  static constexpr double kPivotTol = 1e-11;
  std::vector<std::vector<double>> t_;
  std::vector<double> xb_;
  std::vector<int> basis_;
  std::vector<double> ub_;
  std::vector<At> at_;
  double tol_;
};

}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "?";
}

LpSolution solve_lp(const LinearProgram& lp, double tolerance) {
  const std::size_t n = lp.cost.size();
  const std::size_t m = lp.rows.size();
  if (lp.lower.size() != n || lp.upper.size() != n || lp.rhs.size() != m)
    throw std::invalid_argument("solve_lp: inconsistent dimensions");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lp.lower[j])) throw std::invalid_argument("solve_lp: lower bounds must be finite");
    if (lp.upper[j] < lp.lower[j]) return {LpStatus::infeasible, {}, 0.0, 0};
  }

  // Shift x = lower + y, scale each row to unit max coefficient.
  std::vector<std::vector<double>> a(m, std::vector<double>(n));
  std::vector<double> r(m);
  std::vector<double> row_scale(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rows[i].size() != n) throw std::invalid_argument("solve_lp: row length mismatch");
    double big = 0.0;
    for (double v : lp.rows[i]) big = std::max(big, std::abs(v));
    const double s = big > 0.0 ? 1.0 / big : 1.0;
    row_scale[i] = s;
    double shifted = lp.rhs[i];
    for (std::size_t j = 0; j < n; ++j) shifted -= lp.rows[i][j] * lp.lower[j];
    r[i] = shifted * s;
    for (std::size_t j = 0; j < n; ++j) a[i][j] = lp.rows[i][j] * s;
  }

  std::size_t num_art = 0;
  for (double v : r) num_art += v < 0.0 ? 1 : 0;
  const std::size_t first_art = n + m;
  const std::size_t cols = first_art + num_art;

  std::vector<std::vector<double>> t(m, std::vector<double>(cols, 0.0));
  std::vector<double> xb(m);
  std::vector<int> basis(m);
  std::size_t art = first_art;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = r[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * a[i][j];
    t[i][n + i] = sign;
    xb[i] = sign * r[i];
    if (sign < 0.0) {
      t[i][art] = 1.0;
      basis[i] = static_cast<int>(art++);
    } else {
      basis[i] = static_cast<int>(n + i);
    }
  }
  std::vector<double> ub(cols, kInf);
  for (std::size_t j = 0; j < n; ++j) ub[j] = lp.upper[j] - lp.lower[j];

  Tableau tab(std::move(t), std::move(xb), std::move(basis), std::move(ub), tolerance);
  LpSolution out;
  const int max_pivots = static_cast<int>(50 * (m + cols)) + 1000;

  if (num_art > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = first_art; j < cols; ++j) phase1[j] = 1.0;
    const LpStatus s = tab.optimize(phase1, cols, out.pivots, max_pivots);
    if (s == LpStatus::iteration_limit) {
      out.status = s;
      return out;
    }
    double infeas = 0.0;
    for (std::size_t j = first_art; j < cols; ++j) infeas += tab.value(j);
    if (infeas > 1e-9) {
      out.status = LpStatus::infeasible;
      return out;
    }
    tab.expel_artificials(first_art);
    tab.fix_at_zero(first_art);
  }

  double cmax = 0.0;
  for (double c : lp.cost) cmax = std::max(cmax, std::abs(c));
  std::vector<double> phase2(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = cmax > 0.0 ? lp.cost[j] / cmax : 0.0;
  out.status = tab.optimize(phase2, first_art, out.pivots, max_pivots);

  out.x.resize(n);
  out.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = std::clamp(lp.lower[j] + tab.value(j), lp.lower[j], lp.upper[j]);
    out.objective += lp.cost[j] * out.x[j];
  }
  return out;
}

}  // namespace sagin
