#include "sagin/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"
#include "sagin/errors.hpp"
#include "sagin/subsolvers.hpp"

namespace sagin::cli {

namespace {

using Units = std::map<std::string, double, std::less<>>;

const std::map<std::string, Units, std::less<>>& unit_table() {
  static const std::map<std::string, Units, std::less<>> table = {
      {"data_bits", {{"", 1.0}, {"b", 1.0}, {"bits", 1.0}, {"B", 8.0}, {"KB", 8192.0}, {"MB", 8388608.0}}},
      {"sat_beam_gain", {{"", 1.0}, {"dB", 0.0}}},
      {"sat_uav_distance", {{"", 1.0}, {"m", 1.0}, {"km", 1e3}}},
      {"latency_budget", {{"", 1.0}, {"s", 1.0}, {"ms", 1e-3}}},
      {"sat_cpu", {{"", 1.0}, {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}}},
  };
  return table;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

SolverOptions resolve_options(const std::string& path) {
  if (!path.empty()) return load_options(path);
  if (const char* env = std::getenv(kOptionsEnv); env != nullptr && *env != '\0')
    return load_options(env);
  return {};
}

std::vector<Scheme> parse_schemes(const std::string& list) {
  std::vector<Scheme> out;
  std::string item;
  std::stringstream ss(list);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item == "all") return {kAllSchemes.begin(), kAllSchemes.end()};
    if (!item.empty()) out.push_back(scheme_from_string(item));
  }
  if (out.empty()) throw InputError("--schemes: at least one scheme required");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : unit_table()) v.push_back(k);
    return v;
  }();
  return names;
}

double parse_quantity(const std::string& param, const std::string& raw) {
  const auto it = unit_table().find(param);
  if (it == unit_table().end()) throw InputError("unknown sweep parameter '" + param + "'");
  const std::string text = trim(raw);
  double number = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), number);
  if (ec != std::errc()) throw InputError(param + ": cannot parse value '" + text + "'");
  const std::string suffix = trim(std::string_view(end, text.data() + text.size() - end));
  const auto unit = it->second.find(suffix);
  if (unit == it->second.end())
    throw InputError(param + ": unknown unit '" + suffix + "' in '" + text + "'");
  const double value = (param == "sat_beam_gain" && suffix == "dB") ? db_to_linear(number)
                                                                     : number * unit->second;
  if (!std::isfinite(value) || !(value > 0.0))
    throw InputError(param + ": values must be finite and positive");
  return value;
}

std::vector<double> parse_value_list(const std::string& param, const std::string& list) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(list);
  while (std::getline(ss, item, ','))
    if (!trim(item).empty()) out.push_back(parse_quantity(param, item));
  if (out.empty()) throw InputError(param + ": value list is empty");
  return out;
}

ScenarioConfig with_parameter(const ScenarioConfig& cfg, const std::string& param, double value) {
  ScenarioConfig c = cfg;
  if (param == "data_bits") {
    c.data_bits.assign(c.num_gts, value);
  } else if (param == "sat_beam_gain") {
    c.sat_beam_gain = value;
  } else if (param == "sat_uav_distance") {
    c.sat_uav_distance = value;
  } else if (param == "latency_budget") {
    c.latency_budget = value;
  } else if (param == "sat_cpu") {
    c.sat_cpu = value;
  } else {
    throw InputError("unknown sweep parameter '" + param + "'");
  }
  c.validate();
  return c;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec,
                                const SolverOptions& opts, int jobs) {
  if (spec.values.empty()) throw InputError("sweep: value list is empty");
  std::vector<double> values = spec.values;
  std::sort(values.begin(), values.end());
  std::vector<Scheme> schemes = spec.schemes;
  std::sort(schemes.begin(), schemes.end());

  std::vector<SweepRow> rows;
  for (Scheme s : schemes)
    for (double v : values) rows.push_back({s, spec.param, v, {}, 0, false, false});
  std::vector<ScenarioConfig> cfgs;
  for (double v : values) cfgs.push_back(with_parameter(cfg, spec.param, v));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      const ScenarioConfig& c = cfgs[i % values.size()];
      try {
        const RunResult r = run_scheme(c, row.scheme, opts, spec.seed);
        row.energy = energy_breakdown(c, r.state);
        row.iterations = static_cast<int>(r.trace.iterations.size());
        row.feasible = r.feasible;
      } catch (const std::exception&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.energy = {nan, nan, nan, nan, nan};
        row.failed = true;
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(rows.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = sweep_csv_header();
  for (const auto& r : rows) out += sweep_csv_row(r);
  return out;
}

std::vector<HeatmapCell> run_heatmap(const ScenarioConfig& cfg, const SolutionState& solved,
                                     const HeatmapSpec& spec) {
  if (spec.points < 2) throw InputError("heatmap: at least 2 points per axis");
  if (!(spec.half_extent > 0.0)) throw InputError("heatmap: half extent must be positive");
  std::vector<HeatmapCell> cells;
  const double step = 2.0 * spec.half_extent / (spec.points - 1);
  SolutionState probe = solved;
  for (int j = 0; j < spec.points; ++j) {
    for (int i = 0; i < spec.points; ++i) {
      const double x = spec.center.x - spec.half_extent + i * step;
      const double y = spec.center.y - spec.half_extent + j * step;
      probe.placement.uav_xy = {x, y};
      cells.push_back({x, y, ug_energy_at(cfg, probe, probe.placement),
                       check_feasibility(cfg, probe).feasible()});
    }
  }
  return cells;
}

std::string heatmap_csv(const std::vector<HeatmapCell>& cells) {
  std::string out = "x,y,objective,feasible\n";
  for (const auto& c : cells)
    out += format_number(c.x) + "," + format_number(c.y) + "," + format_number(c.objective) + "," +
           (c.feasible ? "true" : "false") + "\n";
  return out;
}

std::string convergence_csv(const std::vector<double>& sat_cpu,
                            const std::vector<IterationTrace>& traces) {
  std::string out = "F_S,iteration,objective\n";
  for (std::size_t i = 0; i < sat_cpu.size(); ++i) {
    const auto objs = traces[i].objectives();
    for (std::size_t it = 0; it < objs.size(); ++it)
      out += format_number(sat_cpu[i]) + "," + std::to_string(it) + "," + format_number(objs[it]) + "\n";
  }
  return out;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Energy-minimizing resource allocation for satellite-UAV semantic relaying"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, opts_path, scheme_name = "sagin_psc";
  std::uint64_t seed = 7;
  auto common = [&](CLI::App* sub, bool needs_scenario) {
    auto* opt = sub->add_option("--scenario", scenario_path, "Scenario JSON file");
    if (needs_scenario) opt->required();
    sub->add_option("--seed", seed, "Random seed")->capture_default_str();
    sub->add_option("--out", out_path, "Output file (stdout if omitted)");
    sub->add_option("--opts", opts_path,
                    std::string("Solver options JSON (default: $") + kOptionsEnv + ")");
  };

  auto* solve = app.add_subcommand("solve", "Solve one scenario and write a JSON result");
  common(solve, true);
  solve->add_option("--scheme", scheme_name, "Scheme")->capture_default_str();

  std::string param, values_text, schemes_text = "all";
  int jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Run schemes over a parameter sweep, CSV output");
  common(sweep, true);
  sweep->add_option("--param", param, "Swept parameter")->required();
  sweep->add_option("--values", values_text, "Comma-separated values with optional units")->required();
  sweep->add_option("--schemes", schemes_text, "Comma-separated schemes or 'all'")->capture_default_str();
  sweep->add_option("--jobs", jobs, "Concurrent runs")->capture_default_str();

  HeatmapSpec hm;
  auto* heat = app.add_subcommand("heatmap", "UAV-to-GT energy over a grid of UAV locations");
  common(heat, true);
  heat->add_option("--scheme", scheme_name, "Scheme of the prior solve")->capture_default_str();
  heat->add_option("--half-extent", hm.half_extent, "Half width of the grid in m")->capture_default_str();
  heat->add_option("--points", hm.points, "Grid points per axis")->capture_default_str();

  std::string fs_text = "0.5GHz,1GHz,2GHz";
  auto* conv = app.add_subcommand("convergence", "Objective per iteration for several F_S");
  common(conv, true);
  conv->add_option("--fs", fs_text, "Comma-separated satellite CPU values")->capture_default_str();

  std::size_t gts = 4;
  double radius = 300.0;
  std::string data_text = "64KB";
  auto* gen = app.add_subcommand("gen-scenario", "Write a default scenario with random GT positions");
  common(gen, false);
  gen->add_option("--gts", gts, "Number of GTs")->capture_default_str();
  gen->add_option("--radius", radius, "Disk radius in m")->capture_default_str();
  gen->add_option("--data", data_text, "Per-GT data size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (gen->parsed()) {
      ScenarioConfig cfg = default_scenario(generate_gt_positions(gts, radius, seed));
      cfg = with_parameter(cfg, "data_bits", parse_quantity("data_bits", data_text));
      write_file(out_path, scenario_to_json(cfg).dump(2) + "\n");
      return kExitOk;
    }

    const ScenarioConfig cfg = load_scenario(scenario_path);
    const SolverOptions opts = resolve_options(opts_path);

    if (solve->parsed()) {
      const Scheme scheme = scheme_from_string(scheme_name);
      const auto t0 = std::chrono::steady_clock::now();
      const RunResult r = run_scheme(cfg, scheme, opts, seed);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      write_file(out_path, result_to_json(cfg, scheme, seed, r, secs).dump(2) + "\n");
      if (!out_path.empty() && out_path != "-")
        std::cout << "total_energy_J " << format_number(evaluate(cfg, r.state).objective) << "\n";
      return r.feasible ? kExitOk : kExitInfeasible;
    }
    if (sweep->parsed()) {
      SweepSpec spec{param, parse_value_list(param, values_text), parse_schemes(schemes_text), seed};
      if (jobs < 1) throw InputError("--jobs: must be at least 1");
      write_file(out_path, sweep_csv(run_sweep(cfg, spec, opts, jobs)));
      return kExitOk;
    }
    if (heat->parsed()) {
      const RunResult r = run_scheme(cfg, scheme_from_string(scheme_name), opts, seed);
      write_file(out_path, heatmap_csv(run_heatmap(cfg, r.state, hm)));
      return kExitOk;
    }
    if (conv->parsed()) {
      const std::vector<double> fs = parse_value_list("sat_cpu", fs_text);
      std::vector<IterationTrace> traces;
      bool all_feasible = true;
      for (double f : fs) {
        const RunResult r = run_scheme(with_parameter(cfg, "sat_cpu", f), Scheme::sagin_psc, opts, seed);
        traces.push_back(r.trace);
        all_feasible = all_feasible && r.feasible;
      }
      write_file(out_path, convergence_csv(fs, traces));
      return all_feasible ? kExitOk : kExitInfeasible;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  }
  return kExitInput;
}

}  // namespace sagin::cli
