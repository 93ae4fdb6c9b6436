#include <algorithm>
#include <cmath>
#include <numbers>

#include "sagin/subsolvers.hpp"

namespace sagin {

namespace {

// h(z) = 1 - e^z (1 - z), increasing on z > 0 from 0.
double h_fun(double z) {
  if (z < 1e-3) {
    const double z2 = z * z;
    return z2 * (0.5 + z * (1.0 / 3.0 + z * (1.0 / 8.0 + z * (1.0 / 30.0 + z / 144.0))));
  }
  return z * std::exp(z) - std::expm1(z);
}

constexpr double kMaxZ = 600.0;

double h_inverse(double y) {
  if (!(y > 0.0)) return 0.0;
  if (h_fun(kMaxZ) <= y) return kMaxZ;
  double lo = 0.0;
  double hi = 1.0;
  while (h_fun(hi) < y) {
    lo = hi;
    hi = std::min(2.0 * hi, kMaxZ);
  }
  for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h_fun(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct Split {
  std::vector<double> z, b, p;
  double sum_b = 0.0;
  double sum_p = 0.0;
};

class Allocator {
 public:
  Allocator(std::vector<double> U, std::vector<double> V, std::vector<double> slack, double B)
      : U_(std::move(U)), V_(std::move(V)), slack_(std::move(slack)), B_(B) {}

  Split at(double nu, double mu) const {
    Split s;
    const std::size_t K = U_.size();
    s.z.resize(K);
    s.b.resize(K);
    s.p.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
      const double w = (slack_[k] + mu) / V_[k];
      const double z = h_inverse(nu / w);
      s.z[k] = z;
      s.b[k] = U_[k] * std::numbers::ln2 / z;
      s.p[k] = s.b[k] * std::expm1(z) / V_[k];
      s.sum_b += s.b[k];
      s.sum_p += s.p[k];
    }
    return s;
  }

  // Bandwidth multiplier making the split use exactly B (from the side that
  // stays within budget).
  double bandwidth_price(double mu) const {
    double lo = 1.0;
    double hi = 1.0;
    while (at(lo, mu).sum_b <= B_ && lo > 1e-300) lo *= 1e-4;
    while (at(hi, mu).sum_b > B_ && hi < 1e300) hi *= 1e4;
    for (int it = 0; it < 200; ++it) {
      const double mid = std::sqrt(lo * hi);
      if (!(mid > lo && mid < hi)) break;
      (at(mid, mu).sum_b > B_ ? lo : hi) = mid;
      if (hi / lo < 1.0 + 1e-15) break;
    }
    return hi;
  }

  const std::vector<double>& slack() const { return slack_; }
  const std::vector<double>& V() const { return V_; }

 private:
  std::vector<double> U_, V_, slack_;
  double B_;
};

}  // namespace

PowerBandwidthResult solve_power_bandwidth(const ScenarioConfig& cfg, const SolutionState& s,
                                           const SolverOptions& opts) {
  const auto& al = s.allocation;
  const std::size_t K = cfg.num_gts;
  PowerBandwidthResult out;
  out.bandwidth = al.bandwidth;
  out.power = al.power;

  const std::vector<double> slack = ug_latency_slack(cfg, s);
  std::vector<double> U(K), V(K);
  const double theta = s.placement.half_beamwidth;
  for (std::size_t k = 0; k < K; ++k) {
    if (!(slack[k] > 0.0) || !std::isfinite(slack[k])) return out;
    U[k] = cfg.data_bits[k] * ug_payload_factor(al.task[k], al.ratio[k]) / slack[k];
    V[k] = cfg.antenna_gain_const * channel_gain_ug(cfg, s.placement, k) /
           (theta * theta * cfg.noise_psd);
  }
  const Allocator alloc(U, V, slack, cfg.uav_bandwidth_total);
  const double P = cfg.uav_power_budget;

  double mu = 0.0;
  double nu = alloc.bandwidth_price(0.0);
  Split split = alloc.at(nu, 0.0);
  if (split.sum_p > P) {
    // Raise the power price until the budget holds, then bisect.
    double mu_lo = 0.0;
    double mu_hi = *std::max_element(slack.begin(), slack.end());
    int expansions = 0;
    while (true) {
      const double nu_hi = alloc.bandwidth_price(mu_hi);
      if (alloc.at(nu_hi, mu_hi).sum_p <= P) break;
      mu_lo = mu_hi;
      mu_hi *= 4.0;
      if (++expansions > 60) return out;  // even power-minimal split exceeds P_U
    }
    for (int it = 0; it < 200 && mu_hi - mu_lo > 1e-15 * mu_hi; ++it) {
      const double mid = 0.5 * (mu_lo + mu_hi);
      const double nu_mid = alloc.bandwidth_price(mid);
      (alloc.at(nu_mid, mid).sum_p > P ? mu_lo : mu_hi) = mid;
    }
    mu = mu_hi;
    nu = alloc.bandwidth_price(mu);
    split = alloc.at(nu, mu);
  }

  out.bandwidth = split.b;
  out.power = split.p;
  out.bandwidth_multiplier = nu;
  out.power_multiplier = mu;

  // Primal feasibility, complementary slackness and per-GT stationarity.
  const double B = cfg.uav_bandwidth_total;
  double res = std::max(0.0, split.sum_b - B) / B;
  res = std::max(res, std::max(0.0, split.sum_p - P) / P);
  res = std::max(res, std::abs(B - split.sum_b) / B);  // nu > 0 always
  if (mu > 0.0) res = std::max(res, std::abs(P - split.sum_p) / P);
  for (std::size_t k = 0; k < K; ++k) {
    const double w = (slack[k] + mu) / V[k];
    res = std::max(res, std::abs(w * h_fun(split.z[k]) - nu) / nu);
  }
  out.kkt_residual = res;
  out.feasible = split.sum_b <= B * (1.0 + kFeasibilityTolerance) &&
                 split.sum_p <= P * (1.0 + kFeasibilityTolerance) && res <= opts.kkt_tolerance;
  return out;
}

}  // namespace sagin
