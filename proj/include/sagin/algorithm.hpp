#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sagin/options.hpp"
#include "sagin/physics.hpp"

namespace sagin {

enum class Scheme { sagin_psc, non_semantic, random_comp, fixed_location };

inline constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::sagin_psc, Scheme::non_semantic,
                                                      Scheme::random_comp, Scheme::fixed_location};

const char* to_string(Scheme s);
// Throws InputError on an unknown name.
Scheme scheme_from_string(const std::string& name);

enum class Block { task, ratio, cpu, power_bandwidth, altitude_beamwidth, location };

inline constexpr std::size_t kNumBlocks = 6;

const char* to_string(Block b);

struct BlockRecord {
  double objective = 0.0;  // after the block (unchanged if rejected or skipped)
  double violation = 0.0;
  bool ran = false;
  bool solved = false;    // the block reported a feasible subproblem solution
  bool accepted = false;  // its output replaced the incumbent
  double seconds = 0.0;
};

struct IterationRecord {
  std::array<BlockRecord, kNumBlocks> blocks;
  double objective = 0.0;
  double violation = 0.0;
  bool feasible = false;
};

struct IterationTrace {
  double initial_objective = 0.0;
  double initial_violation = 0.0;
  std::vector<IterationRecord> iterations;
  bool converged = false;

  // Initial objective followed by the objective after each iteration.
  std::vector<double> objectives() const;
};

struct RunResult {
  SolutionState state;
  IterationTrace trace;
  bool feasible = false;
};

using BlockMask = std::array<bool, kNumBlocks>;
inline constexpr BlockMask kAllBlocks = {true, true, true, true, true, true};

// Centroid placement with the narrowest covering beam at the lowest altitude,
// equal resource split, no compression. Throws InfeasibleError if no
// altitude/beamwidth pair covers every GT.
SolutionState initialize(const ScenarioConfig& cfg);

// Cyclic block descent. A block's output is kept only if it raises neither
// the objective nor the constraint violation.
RunResult run_algorithm1(const ScenarioConfig& cfg, const SolverOptions& opts,
                         const SolutionState& init, const BlockMask& mask = kAllBlocks);

RunResult run_scheme(const ScenarioConfig& cfg, Scheme scheme, const SolverOptions& opts,
                     std::uint64_t seed);

}  // namespace sagin
