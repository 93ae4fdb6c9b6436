#include "sagin/options.hpp"

#include <cmath>
#include <fstream>

#include "sagin/errors.hpp"

namespace sagin {

using nlohmann::json;

void SolverOptions::validate() const {
  auto positive = [](const char* name, double v) {
    if (!std::isfinite(v) || !(v > 0.0))
      throw InputError(std::string(name) + ": must be finite and strictly positive");
  };
  positive("dual_max_iters", dual_max_iters);
  positive("dual_step_scale", dual_step_scale);
  positive("dual_tolerance", dual_tolerance);
  positive("grid_step_theta", grid_step_theta);
  if (location_grid_points < 2) throw InputError("location_grid_points: must be at least 2");
  if (refinement_levels < 0) throw InputError("refinement_levels: must be non-negative");
  positive("kkt_tolerance", kkt_tolerance);
  positive("lp_tolerance", lp_tolerance);
  positive("outer_tolerance", outer_tolerance);
  positive("max_outer_iters", max_outer_iters);
}

namespace {

template <class T>
void read(const json& doc, const char* key, T& field) {
  if (!doc.contains(key)) return;
  const auto& v = doc.at(key);
  if (!v.is_number()) throw InputError(std::string(key) + ": must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw InputError(std::string(key) + ": must be an integer");
  }
  field = v.get<T>();
}

}  // namespace

SolverOptions options_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("options: top level must be an object");
  SolverOptions o;
  const json known = options_to_json(o);
  for (const auto& [key, _] : doc.items())
    if (!known.contains(key)) throw InputError(key + ": unknown option");
  read(doc, "dual_max_iters", o.dual_max_iters);
  read(doc, "dual_step_scale", o.dual_step_scale);
  read(doc, "dual_tolerance", o.dual_tolerance);
  read(doc, "grid_step_theta", o.grid_step_theta);
  read(doc, "location_grid_points", o.location_grid_points);
  read(doc, "refinement_levels", o.refinement_levels);
  read(doc, "kkt_tolerance", o.kkt_tolerance);
  read(doc, "lp_tolerance", o.lp_tolerance);
  read(doc, "outer_tolerance", o.outer_tolerance);
  read(doc, "max_outer_iters", o.max_outer_iters);
  o.validate();
  return o;
}

json options_to_json(const SolverOptions& o) {
  return {{"dual_max_iters", o.dual_max_iters},
          {"dual_step_scale", o.dual_step_scale},
          {"dual_tolerance", o.dual_tolerance},
          {"grid_step_theta", o.grid_step_theta},
          {"location_grid_points", o.location_grid_points},
          {"refinement_levels", o.refinement_levels},
          {"kkt_tolerance", o.kkt_tolerance},
          {"lp_tolerance", o.lp_tolerance},
          {"outer_tolerance", o.outer_tolerance},
          {"max_outer_iters", o.max_outer_iters}};
}

SolverOptions load_options(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open options file " + path.string());
  try {
    return options_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw InputError(std::string("options: ") + e.what());
  }
}

}  // namespace sagin
