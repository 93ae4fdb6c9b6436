#include "sagin/report.hpp"

#include <cmath>
#include <cstdio>

namespace sagin {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json state_to_json(const SolutionState& s) {
  json tasks = json::array();
  for (Task t : s.allocation.task) tasks.push_back(to_string(t));
  return {{"uav_xy", {s.placement.uav_xy.x, s.placement.uav_xy.y}},
          {"altitude", s.placement.altitude},
          {"half_beamwidth", s.placement.half_beamwidth},
          {"bandwidth", s.allocation.bandwidth},
          {"cpu", s.allocation.cpu},
          {"power", s.allocation.power},
          {"ratio", s.allocation.ratio},
          {"task", tasks}};
}

json energy_to_json(const EnergyBreakdown& e) {
  return {{"e_S", e.sat_compute},
          {"e_SU", e.sat_uav_comm},
          {"e_U", e.uav_compute},
          {"e_UG", e.uav_gt_comm},
          {"total", e.total}};
}

json latency_to_json(const LatencyBreakdown& l) {
  return {{"t_S", l.sat_compute},   {"t_T", l.sat_uav_tx},    {"t_P", l.sat_uav_prop},
          {"t_U", l.uav_compute},   {"t_UG", l.uav_gt_tx},    {"total", l.total}};
}

json trace_to_json(const IterationTrace& t) {
  json iters = json::array();
  for (const auto& it : t.iterations) {
    json blocks = json::array();
    for (std::size_t b = 0; b < kNumBlocks; ++b) {
      const auto& br = it.blocks[b];
      blocks.push_back({{"block", to_string(static_cast<Block>(b))},
                        {"objective", br.objective},
                        {"violation", br.violation},
                        {"ran", br.ran},
                        {"solved", br.solved},
                        {"accepted", br.accepted},
                        {"seconds", br.seconds}});
    }
    iters.push_back({{"objective", it.objective},
                     {"violation", it.violation},
                     {"feasible", it.feasible},
                     {"blocks", blocks}});
  }
  return {{"initial_objective", t.initial_objective},
          {"initial_violation", t.initial_violation},
          {"converged", t.converged},
          {"iterations", iters}};
}

json violations_to_json(const FeasibilityReport& r) {
  json out = json::array();
  for (const auto& v : r.violations)
    out.push_back({{"constraint", to_string(v.constraint)},
                   {"gt", v.gt},
                   {"slack", v.slack},
                   {"relative", v.relative}});
  return out;
}

json result_to_json(const ScenarioConfig& cfg, Scheme scheme, std::uint64_t seed,
                    const RunResult& r, double wall_seconds) {
  json doc = {{"scheme", to_string(scheme)},
              {"seed", seed},
              {"feasible", r.feasible},
              {"state", state_to_json(r.state)},
              {"trace", trace_to_json(r.trace)},
              {"violations", violations_to_json(check_feasibility(cfg, r.state))},
              {"wall_seconds", wall_seconds}};
  try {
    doc["latency"] = latency_to_json(latency_breakdown(cfg, r.state));
    doc["energy"] = energy_to_json(energy_breakdown(cfg, r.state));
  } catch (const std::domain_error&) {
    doc["latency"] = nullptr;
    doc["energy"] = nullptr;
  }
  return doc;
}

std::string sweep_csv_header() {
  return "scheme,param,value,e_S,e_SU,e_U,e_UG,total,iters,feasible\n";
}

std::string sweep_csv_row(const SweepRow& row) {
  const auto& e = row.energy;
  std::string s = std::string(to_string(row.scheme)) + "," + row.param + "," + format_number(row.value);
  for (double v : {e.sat_compute, e.sat_uav_comm, e.uav_compute, e.uav_gt_comm, e.total})
    s += "," + format_number(v);
  s += "," + std::to_string(row.iterations) + "," + (row.feasible ? "true" : "false") + "\n";
  return s;
}

}  // namespace sagin
