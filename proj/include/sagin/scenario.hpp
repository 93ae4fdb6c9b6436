#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace sagin {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(const Vec2& a, const Vec2& b);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// One linear piece A*rho + B of the overhead curve, valid for
// lower < rho <= upper where upper is the previous segment's lower boundary
// (1 for the first segment).
struct OverheadSegment {
  double slope = 0.0;
  double intercept = 0.0;
  double lower = 0.0;

  friend bool operator==(const OverheadSegment&, const OverheadSegment&) = default;
};

// Piecewise-linear computation overhead O(rho) over [rho_min, 1].
//
// Segments are ordered from the shallowest compression (rho near 1) to the
// deepest. Each segment is half-open on the left except the last, which also
// contains rho_min = lower boundary of the last segment.
class OverheadCurve {
 public:
  OverheadCurve() = default;
  // Throws InputError if any invariant is violated.
  explicit OverheadCurve(std::vector<OverheadSegment> segments);

  std::size_t size() const { return segments_.size(); }
  const std::vector<OverheadSegment>& segments() const { return segments_; }
  const OverheadSegment& segment(std::size_t d) const { return segments_.at(d); }

  double lower_boundary(std::size_t d) const { return segments_.at(d).lower; }
  double upper_boundary(std::size_t d) const;
  double min_ratio() const { return segments_.back().lower; }
  double midpoint(std::size_t d) const;

  // Value of segment d's line at rho, without range checks.
  double line(std::size_t d, double rho) const;

  // Segment containing rho. Throws std::domain_error outside [rho_min, 1].
  std::size_t segment_index(double rho) const;

  // True when every interior boundary jumps upward going deeper.
  bool has_upward_jumps() const;

  friend bool operator==(const OverheadCurve&, const OverheadCurve&) = default;

 private:
  std::vector<OverheadSegment> segments_;
};

double overhead_eval(const OverheadCurve& curve, double rho);

OverheadCurve default_overhead_curve();

// Physical and budget parameters of one problem instance, in SI units.
struct ScenarioConfig {
  std::size_t num_gts = 0;
  std::vector<double> data_bits;
  std::vector<Vec2> gt_positions;

  double sat_uav_distance = 0.0;  // m
  double sat_beam_gain = 0.0;     // linear
  double sat_wavelength = 0.0;    // m
  double sat_bandwidth = 0.0;     // Hz
  double sat_tx_power = 0.0;      // W
  double noise_psd = 0.0;         // W/Hz

  double ref_channel_gain = 0.0;
  double antenna_gain_const = 2.2846;
  double sidelobe_gain = 0.0;

  double comp_energy_coeff = 0.0;    // J s^2 / cycle^3
  double cycles_per_overhead = 1.0;  // kappa
  double sat_cpu = 0.0;              // cycles/s
  double uav_cpu_total = 0.0;        // cycles/s

  double latency_budget = 0.0;       // s
  double uav_power_budget = 0.0;     // W
  double uav_bandwidth_total = 0.0;  // Hz

  Interval altitude_range;   // m
  Interval beamwidth_range;  // rad, as configured (see working_beamwidth)

  double lightspeed = 2.99792458e8;

  std::vector<OverheadCurve> overhead_curves;

  // Beamwidth range clamped away from 0 and pi/2.
  Interval working_beamwidth() const;

  // Throws InputError naming the field and the violated rule.
  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

inline constexpr double kBeamwidthClamp = 1e-3;

double db_to_linear(double db);
double dbm_per_hz_to_watts(double dbm);

// Default parameters with the given GT layout and default overhead curves.
ScenarioConfig default_scenario(std::vector<Vec2> gt_positions);

// Area-uniform positions inside a disk of `radius` centered at the origin.
std::vector<Vec2> generate_gt_positions(std::size_t count, double radius, std::uint64_t seed);

ScenarioConfig scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

ScenarioConfig load_scenario(const std::filesystem::path& path);
ScenarioConfig parse_scenario(const std::string& text);
void save_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path);

}  // namespace sagin
