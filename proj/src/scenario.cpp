#include "sagin/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "sagin/errors.hpp"

namespace sagin {

using nlohmann::json;

double distance(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

// ---------------------------------------------------------------------------
// OverheadCurve

OverheadCurve::OverheadCurve(std::vector<OverheadSegment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw InputError("overhead curve: at least one segment required");
  double upper = 1.0;
  for (std::size_t d = 0; d < segments_.size(); ++d) {
    const auto& s = segments_[d];
    const std::string where = "overhead curve segment " + std::to_string(d + 1) + ": ";
    if (!std::isfinite(s.slope) || !std::isfinite(s.intercept) || !std::isfinite(s.lower))
      throw InputError(where + "parameters must be finite");
    if (!(s.slope < 0.0)) throw InputError(where + "slope must be negative");
    if (!(s.intercept > 0.0)) throw InputError(where + "intercept must be positive");
    if (!(s.lower > 0.0 && s.lower < 1.0)) throw InputError(where + "boundary must lie in (0, 1)");
    if (!(s.lower < upper)) throw InputError(where + "boundaries not strictly decreasing");
    if (d > 0 && std::abs(s.slope) < std::abs(segments_[d - 1].slope))
      throw InputError(where + "slope magnitude must not shrink toward small ratios");
    if (!(s.slope * s.lower + s.intercept > 0.0) || !(s.slope * upper + s.intercept > 0.0))
      throw InputError(where + "overhead must be positive on the segment");
    upper = s.lower;
  }
}

double OverheadCurve::upper_boundary(std::size_t d) const {
  return d == 0 ? 1.0 : segments_.at(d - 1).lower;
}

double OverheadCurve::midpoint(std::size_t d) const {
  return 0.5 * (lower_boundary(d) + upper_boundary(d));
}

double OverheadCurve::line(std::size_t d, double rho) const {
  const auto& s = segments_[d];
  return s.slope * rho + s.intercept;
}

std::size_t OverheadCurve::segment_index(double rho) const {
  if (!(rho <= 1.0) || !(rho >= min_ratio()))
    throw std::domain_error("compression ratio " + std::to_string(rho) +
                            " outside overhead curve domain");
  const std::size_t last = segments_.size() - 1;
  for (std::size_t d = 0; d < last; ++d) {
    if (rho > segments_[d].lower) return d;
  }
  return last;
}

bool OverheadCurve::has_upward_jumps() const {
  for (std::size_t d = 0; d + 1 < segments_.size(); ++d) {
    const double c = segments_[d].lower;
    if (line(d + 1, c) < line(d, c)) return false;
  }
  return true;
}

double overhead_eval(const OverheadCurve& curve, double rho) {
  return curve.line(curve.segment_index(rho), rho);
}

OverheadCurve default_overhead_curve() {
  // O spans [4e6, 1.2e8] cycles; see README "Default overhead curve".
  return OverheadCurve({{-1.0e7, 1.4e7, 0.70}, {-4.0e7, 3.6e7, 0.45}, {-5.0e8, 2.45e8, 0.25}});
}

// ---------------------------------------------------------------------------
// ScenarioConfig

Interval ScenarioConfig::working_beamwidth() const {
  return {std::max(beamwidth_range.lower, kBeamwidthClamp),
          std::min(beamwidth_range.upper, std::numbers::pi / 2.0 - kBeamwidthClamp)};
}

namespace {

void require_positive(const char* field, double v) {
  if (!std::isfinite(v) || !(v > 0.0))
    throw InputError(std::string(field) + ": must be finite and strictly positive");
}

}  // namespace

void ScenarioConfig::validate() const {
  if (num_gts == 0) throw InputError("num_gts: at least one GT required");
  if (data_bits.size() != num_gts)
    throw InputError("data_bits: length must equal num_gts");
  if (gt_positions.size() != num_gts)
    throw InputError("gt_positions: length must equal num_gts");
  if (overhead_curves.size() != num_gts)
    throw InputError("overhead_curves: length must equal num_gts");
  for (double d : data_bits) require_positive("data_bits", d);
  for (const auto& p : gt_positions) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw InputError("gt_positions: coordinates must be finite");
  }
  require_positive("sat_uav_distance", sat_uav_distance);
  require_positive("sat_beam_gain", sat_beam_gain);
  require_positive("sat_wavelength", sat_wavelength);
  require_positive("sat_bandwidth", sat_bandwidth);
  require_positive("sat_tx_power", sat_tx_power);
  require_positive("noise_psd", noise_psd);
  require_positive("ref_channel_gain", ref_channel_gain);
  require_positive("antenna_gain_const", antenna_gain_const);
  if (!std::isfinite(sidelobe_gain) || sidelobe_gain < 0.0)
    throw InputError("sidelobe_gain: must be finite and non-negative");
  require_positive("comp_energy_coeff", comp_energy_coeff);
  require_positive("cycles_per_overhead", cycles_per_overhead);
  require_positive("sat_cpu", sat_cpu);
  require_positive("uav_cpu_total", uav_cpu_total);
  require_positive("latency_budget", latency_budget);
  require_positive("uav_power_budget", uav_power_budget);
  require_positive("uav_bandwidth_total", uav_bandwidth_total);
  require_positive("lightspeed", lightspeed);

  require_positive("altitude_range.lower", altitude_range.lower);
  if (!std::isfinite(altitude_range.upper) || altitude_range.upper < altitude_range.lower)
    throw InputError("altitude_range: upper must be >= lower");

  if (!std::isfinite(beamwidth_range.lower) || !std::isfinite(beamwidth_range.upper) ||
      beamwidth_range.lower < 0.0 || beamwidth_range.upper <= beamwidth_range.lower)
    throw InputError("beamwidth_range: need 0 <= lower < upper");
  const Interval w = working_beamwidth();
  if (!(w.lower > 0.0 && w.lower < w.upper && w.upper < std::numbers::pi / 2.0))
    throw InputError("beamwidth_range: empty after clamping to (0, pi/2)");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_per_hz_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

ScenarioConfig default_scenario(std::vector<Vec2> gt_positions) {
  ScenarioConfig cfg;
  cfg.num_gts = gt_positions.size();
  cfg.data_bits.assign(cfg.num_gts, 64.0 * 1024.0 * 8.0);
  cfg.gt_positions = std::move(gt_positions);
  cfg.sat_uav_distance = 200e3;
  cfg.sat_beam_gain = db_to_linear(25.0);
  cfg.sat_wavelength = 10e-3;
  cfg.sat_bandwidth = 1e9;
  cfg.sat_tx_power = 1.0;
  cfg.noise_psd = dbm_per_hz_to_watts(-174.0);
  cfg.ref_channel_gain = 1.42e-4;
  cfg.comp_energy_coeff = 1e-28;
  cfg.sat_cpu = 1e9;
  cfg.uav_cpu_total = 0.5e9;
  cfg.latency_budget = 0.7;
  cfg.uav_power_budget = 1.0;
  cfg.uav_bandwidth_total = 10e6;
  cfg.altitude_range = {50.0, 500.0};
  cfg.beamwidth_range = {0.0, std::numbers::pi / 2.0};
  cfg.overhead_curves.assign(cfg.num_gts, default_overhead_curve());
  return cfg;
}

std::vector<Vec2> generate_gt_positions(std::size_t count, double radius, std::uint64_t seed) {
  if (count == 0) throw InputError("gt count must be at least 1");
  if (!std::isfinite(radius) || !(radius > 0.0)) throw InputError("radius must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec2> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // sqrt of a uniform variate makes the density proportional to area.
    const double r = radius * std::sqrt(unit(rng));
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    out.push_back({r * std::cos(phi), r * std::sin(phi)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

const std::set<std::string> kKnownKeys = {
    "num_gts",          "data_bytes",         "data_bits",          "gt_positions",
    "gt_layout",        "sat_uav_distance",   "sat_beam_gain_db",   "sat_beam_gain",
    "sat_wavelength",   "sat_bandwidth",      "sat_tx_power",       "noise_psd_dbm_per_hz",
    "noise_psd",        "ref_channel_gain",   "antenna_gain_const", "sidelobe_gain",
    "comp_energy_coeff", "cycles_per_overhead", "sat_cpu",          "uav_cpu_total",
    "latency_budget",   "uav_power_budget",   "uav_bandwidth_total", "altitude_range",
    "beamwidth_range",  "lightspeed",         "overhead_curve",     "overhead_curves"};

double number(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InputError(std::string(key) + ": required field missing");
  const auto& v = doc.at(key);
  if (!v.is_number()) throw InputError(std::string(key) + ": must be a number");
  return v.get<double>();
}

double number_or(const json& doc, const char* key, double fallback) {
  return doc.contains(key) ? number(doc, key) : fallback;
}

// Exactly one of the two spellings must be present.
double either(const json& doc, const char* native, const char* alt, double (*convert)(double)) {
  const bool has_native = doc.contains(native);
  const bool has_alt = doc.contains(alt);
  if (has_native == has_alt)
    throw InputError(std::string(native) + ": give exactly one of '" + native + "' or '" + alt +
                     "'");
  return has_native ? number(doc, native) : convert(number(doc, alt));
}

Interval interval(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InputError(std::string(key) + ": required field missing");
  const auto& v = doc.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw InputError(std::string(key) + ": must be a [lower, upper] pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

OverheadCurve curve_from_json(const json& v, const std::string& where) {
  if (!v.is_object() || !v.contains("segments") || !v.at("segments").is_array())
    throw InputError(where + ": expected an object with a 'segments' array");
  std::vector<OverheadSegment> segs;
  for (const auto& s : v.at("segments")) {
    if (!s.is_object()) throw InputError(where + ": segment must be an object");
    try {
      segs.push_back({s.at("slope").get<double>(), s.at("intercept").get<double>(),
                      s.at("lower").get<double>()});
    } catch (const json::exception&) {
      throw InputError(where + ": segment needs numeric slope, intercept, lower");
    }
  }
  try {
    return OverheadCurve(std::move(segs));
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

json curve_to_json(const OverheadCurve& c) {
  json segs = json::array();
  for (const auto& s : c.segments())
    segs.push_back({{"slope", s.slope}, {"intercept", s.intercept}, {"lower", s.lower}});
  return {{"segments", segs}};
}

std::vector<double> per_gt_numbers(const json& v, const char* key) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw InputError(std::string(key) + ": must be a number or an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw InputError(std::string(key) + ": array entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

ScenarioConfig scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("scenario: top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (!kKnownKeys.contains(key)) throw InputError(key + ": unknown field");
  }

  ScenarioConfig cfg;

  std::vector<double> data;
  if (doc.contains("data_bytes") == doc.contains("data_bits"))
    throw InputError("data_bits: give exactly one of 'data_bits' or 'data_bytes'");
  if (doc.contains("data_bytes")) {
    data = per_gt_numbers(doc.at("data_bytes"), "data_bytes");
    for (double& d : data) d *= 8.0;
  } else {
    data = per_gt_numbers(doc.at("data_bits"), "data_bits");
  }

  std::vector<Vec2> positions;
  if (doc.contains("gt_positions") == doc.contains("gt_layout"))
    throw InputError("gt_positions: give exactly one of 'gt_positions' or 'gt_layout'");
  if (doc.contains("gt_positions")) {
    const auto& arr = doc.at("gt_positions");
    if (!arr.is_array()) throw InputError("gt_positions: must be an array of [x, y]");
    for (const auto& p : arr) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        throw InputError("gt_positions: each entry must be [x, y]");
      positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
  } else {
    const auto& layout = doc.at("gt_layout");
    if (!layout.is_object() || !doc.contains("num_gts"))
      throw InputError("gt_layout: needs num_gts and an object {radius, seed}");
    const auto k = doc.at("num_gts").get<std::size_t>();
    const double radius = number(layout, "radius");
    const auto seed = layout.value("seed", std::uint64_t{0});
    positions = generate_gt_positions(k, radius, seed);
  }

  cfg.num_gts = doc.contains("num_gts") ? doc.at("num_gts").get<std::size_t>() : positions.size();
  if (data.size() == 1 && cfg.num_gts > 1) data.assign(cfg.num_gts, data.front());
  cfg.data_bits = std::move(data);
  cfg.gt_positions = std::move(positions);

  cfg.sat_uav_distance = number(doc, "sat_uav_distance");
  cfg.sat_beam_gain = either(doc, "sat_beam_gain", "sat_beam_gain_db", db_to_linear);
  cfg.sat_wavelength = number(doc, "sat_wavelength");
  cfg.sat_bandwidth = number(doc, "sat_bandwidth");
  cfg.sat_tx_power = number(doc, "sat_tx_power");
  cfg.noise_psd = either(doc, "noise_psd", "noise_psd_dbm_per_hz", dbm_per_hz_to_watts);
  cfg.ref_channel_gain = number(doc, "ref_channel_gain");
  cfg.antenna_gain_const = number_or(doc, "antenna_gain_const", cfg.antenna_gain_const);
  cfg.sidelobe_gain = number_or(doc, "sidelobe_gain", 0.0);
  cfg.comp_energy_coeff = number(doc, "comp_energy_coeff");
  cfg.cycles_per_overhead = number_or(doc, "cycles_per_overhead", 1.0);
  cfg.sat_cpu = number(doc, "sat_cpu");
  cfg.uav_cpu_total = number(doc, "uav_cpu_total");
  cfg.latency_budget = number(doc, "latency_budget");
  cfg.uav_power_budget = number(doc, "uav_power_budget");
  cfg.uav_bandwidth_total = number(doc, "uav_bandwidth_total");
  cfg.altitude_range = interval(doc, "altitude_range");
  cfg.beamwidth_range = interval(doc, "beamwidth_range");
  cfg.lightspeed = number_or(doc, "lightspeed", cfg.lightspeed);

  if (doc.contains("overhead_curve") && doc.contains("overhead_curves"))
    throw InputError("overhead_curves: give at most one of 'overhead_curve' or 'overhead_curves'");
  if (doc.contains("overhead_curves")) {
    const auto& arr = doc.at("overhead_curves");
    if (!arr.is_array()) throw InputError("overhead_curves: must be an array");
    for (std::size_t k = 0; k < arr.size(); ++k)
      cfg.overhead_curves.push_back(
          curve_from_json(arr[k], "overhead_curves[" + std::to_string(k) + "]"));
  } else if (doc.contains("overhead_curve")) {
    cfg.overhead_curves.assign(cfg.num_gts, curve_from_json(doc.at("overhead_curve"), "overhead_curve"));
  } else {
    cfg.overhead_curves.assign(cfg.num_gts, default_overhead_curve());
  }

  cfg.validate();
  return cfg;
}

json scenario_to_json(const ScenarioConfig& cfg) {
  json positions = json::array();
  for (const auto& p : cfg.gt_positions) positions.push_back({p.x, p.y});
  json curves = json::array();
  for (const auto& c : cfg.overhead_curves) curves.push_back(curve_to_json(c));
  // Linear/SI spellings so that a reload reproduces the exact doubles.
  return {
      {"num_gts", cfg.num_gts},
      {"data_bits", cfg.data_bits},
      {"gt_positions", positions},
      {"sat_uav_distance", cfg.sat_uav_distance},
      {"sat_beam_gain", cfg.sat_beam_gain},
      {"sat_wavelength", cfg.sat_wavelength},
      {"sat_bandwidth", cfg.sat_bandwidth},
      {"sat_tx_power", cfg.sat_tx_power},
      {"noise_psd", cfg.noise_psd},
      {"ref_channel_gain", cfg.ref_channel_gain},
      {"antenna_gain_const", cfg.antenna_gain_const},
      {"sidelobe_gain", cfg.sidelobe_gain},
      {"comp_energy_coeff", cfg.comp_energy_coeff},
      {"cycles_per_overhead", cfg.cycles_per_overhead},
      {"sat_cpu", cfg.sat_cpu},
      {"uav_cpu_total", cfg.uav_cpu_total},
      {"latency_budget", cfg.latency_budget},
      {"uav_power_budget", cfg.uav_power_budget},
      {"uav_bandwidth_total", cfg.uav_bandwidth_total},
      {"altitude_range", {cfg.altitude_range.lower, cfg.altitude_range.upper}},
      {"beamwidth_range", {cfg.beamwidth_range.lower, cfg.beamwidth_range.upper}},
      {"lightspeed", cfg.lightspeed},
      {"overhead_curves", curves},
  };
}

ScenarioConfig parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scenario: parse failure: ") + e.what());
  }
  try {
    return scenario_from_json(doc);
  } catch (const json::exception& e) {
    throw InputError(std::string("scenario: ") + e.what());
  }
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void save_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write scenario file " + path.string());
  out << scenario_to_json(cfg).dump(2) << '\n';
}

}  // namespace sagin
