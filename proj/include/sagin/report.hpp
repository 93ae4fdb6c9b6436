#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sagin/algorithm.hpp"

namespace sagin {

// Locale-independent, byte-stable rendering used in every CSV file.
std::string format_number(double v);

nlohmann::json state_to_json(const SolutionState& s);
nlohmann::json energy_to_json(const EnergyBreakdown& e);
nlohmann::json latency_to_json(const LatencyBreakdown& l);
nlohmann::json trace_to_json(const IterationTrace& t);
nlohmann::json violations_to_json(const FeasibilityReport& r);

// Everything `solve` writes: state, energy, latency, trace and violations.
nlohmann::json result_to_json(const ScenarioConfig& cfg, Scheme scheme, std::uint64_t seed,
                              const RunResult& r, double wall_seconds);

struct SweepRow {
  Scheme scheme = Scheme::sagin_psc;
  std::string param;
  double value = 0.0;
  EnergyBreakdown energy;
  int iterations = 0;
  bool feasible = false;
  bool failed = false;  // the run threw; energies are NaN
};

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

}  // namespace sagin
