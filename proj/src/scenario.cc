// Copyright 2026 The policycost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "policycost/scenario.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

#include "policycost/cost_models.h"
#include "policycost/errors.h"

namespace policycost {
namespace {

using nlohmann::json;

// Collects diagnostics while reading typed fields; missing optional fields
// keep their defaults.
class Reader {
 public:
  void Error(const std::string& path, const std::string& message) {
    diagnostics_.push_back(path + ": " + message);
  }

  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

  bool ExpectObject(const json& value, const std::string& path) {
    if (!value.is_object()) {
      Error(path, "expected an object");
      return false;
    }
    return true;
  }

  void CheckKeys(const json& object, const std::string& path,
                 std::initializer_list<const char*> allowed) {
    for (auto it = object.begin(); it != object.end(); ++it) {
      bool known = false;
      for (const char* key : allowed) known = known || it.key() == key;
      if (!known) Error(Join(path, it.key()), "unknown field");
    }
  }

  void Number(const json& object, const std::string& path, const char* key,
              double* out, bool required = false) {
    const json* value = Find(object, path, key, required);
    if (value == nullptr) return;
    if (!value->is_number()) {
      Error(Join(path, key), "expected a number");
      return;
    }
    *out = value->get<double>();
  }

  // Absent or null reads as +inf.
  void NumberOrInfinity(const json& object, const std::string& path,
                        const char* key, double* out) {
    auto it = object.find(key);
    if (it == object.end() || it->is_null()) {
      *out = std::numeric_limits<double>::infinity();
      return;
    }
    Number(object, path, key, out);
  }

  template <typename Int>
  void Integer(const json& object, const std::string& path, const char* key,
               Int* out, bool required = false) {
    const json* value = Find(object, path, key, required);
    if (value == nullptr) return;
    if (!value->is_number_integer()) {
      Error(Join(path, key), "expected an integer");
      return;
    }
    if constexpr (std::is_unsigned_v<Int>) {
      if (value->is_number_unsigned()) {
        *out = value->get<Int>();
      } else {
        Error(Join(path, key), "expected a nonnegative integer");
      }
    } else {
      *out = value->get<Int>();
    }
  }

  void Bool(const json& object, const std::string& path, const char* key,
            bool* out) {
    const json* value = Find(object, path, key, false);
    if (value == nullptr) return;
    if (!value->is_boolean()) {
      Error(Join(path, key), "expected true or false");
      return;
    }
    *out = value->get<bool>();
  }

  void String(const json& object, const std::string& path, const char* key,
              std::string* out, bool required = false) {
    const json* value = Find(object, path, key, required);
    if (value == nullptr) return;
    if (!value->is_string()) {
      Error(Join(path, key), "expected a string");
      return;
    }
    *out = value->get<std::string>();
  }

  static std::string Join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  const json* Find(const json& object, const std::string& path,
                   const char* key, bool required) {
    auto it = object.find(key);
    if (it == object.end()) {
      if (required) Error(Join(path, key), "missing required field");
      return nullptr;
    }
    return &*it;
  }

  std::vector<std::string> diagnostics_;
};

// Field each shape check constrains, relative to a region's block.
std::string ShapeCheckField(const std::string& check) {
  static const std::pair<const char*, const char*> kFields[] = {
      {"transmission.parameters", "curves.transmission"},
      {"transmission.c0_positive", "curves.transmission.c0"},
      {"transmission.increasing", "curves.transmission.a_tti"},
      {"transmission.breakdown_convexity", "curves.transmission.a_wide"},
      {"border.parameters", "curves.border"},
      {"border.b0_positive", "curves.border.b0"},
      {"border.free_endpoint", "curves.border.i_free"},
      {"border.decreasing", "curves.border.b0"},
      {"border.convex", "curves.border.beta"},
      {"outbreak.parameters", "curves.outbreak"},
      {"outbreak.zero_at_origin", "curves.outbreak.omega"},
      {"outbreak.nondecreasing", "curves.outbreak.omega"},
      {"alpha", "curves.alpha"},
  };
  for (const auto& [name, field] : kFields) {
    if (check == name) return field;
  }
  return "curves";
}

CostCurveSet ReadCurves(Reader& r, const json& curves, const std::string& path) {
  CostCurveSet set;
  if (!r.ExpectObject(curves, path)) return set;
  r.CheckKeys(curves, path, {"transmission", "border", "outbreak", "alpha"});

  const std::string tpath = path + ".transmission";
  if (auto it = curves.find("transmission"); it == curves.end()) {
    r.Error(tpath, "missing required field");
  } else if (r.ExpectObject(*it, tpath)) {
    r.CheckKeys(*it, tpath, {"c0", "a_tti", "x_tti", "jump", "a_wide", "gamma"});
    TransmissionCostCurve& ct = set.transmission;
    r.Number(*it, tpath, "c0", &ct.c0, true);
    r.Number(*it, tpath, "a_tti", &ct.a_tti, true);
    r.NumberOrInfinity(*it, tpath, "x_tti", &ct.x_tti);
    r.Number(*it, tpath, "jump", &ct.jump);
    r.Number(*it, tpath, "a_wide", &ct.a_wide);
    r.Number(*it, tpath, "gamma", &ct.gamma);
  }

  const std::string bpath = path + ".border";
  if (auto it = curves.find("border"); it == curves.end()) {
    r.Error(bpath, "missing required field");
  } else if (r.ExpectObject(*it, bpath)) {
    r.CheckKeys(*it, bpath, {"b0", "i_free", "beta"});
    r.Number(*it, bpath, "b0", &set.border.b0, true);
    r.Number(*it, bpath, "i_free", &set.border.i_free, true);
    r.Number(*it, bpath, "beta", &set.border.beta);
  }

  const std::string opath = path + ".outbreak";
  if (auto it = curves.find("outbreak"); it != curves.end()) {
    if (r.ExpectObject(*it, opath)) {
      r.CheckKeys(*it, opath, {"omega", "delta"});
      r.Number(*it, opath, "omega", &set.outbreak.omega);
      r.Number(*it, opath, "delta", &set.outbreak.delta);
    }
  }
  r.Number(curves, path, "alpha", &set.alpha);
  return set;
}

void ReadRegions(Reader& r, const json& doc, ScenarioConfig* config) {
  auto it = doc.find("regions");
  if (it == doc.end()) {
    r.Error("regions", "missing required field");
    return;
  }
  if (!it->is_array() || it->empty()) {
    r.Error("regions", "expected a non-empty array");
    return;
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string path = "regions[" + std::to_string(i) + "]";
    const json& block = (*it)[i];
    RegionState region;
    if (!r.ExpectObject(block, path)) continue;
    r.CheckKeys(block, path,
                {"id", "population", "prevalence", "domestic_cases", "curves"});
    r.String(block, path, "id", &region.id, true);
    r.Integer(block, path, "population", &region.population, true);
    r.Number(block, path, "prevalence", &region.prevalence, true);
    r.Number(block, path, "domestic_cases", &region.domestic_cases);
    if (auto c = block.find("curves"); c == block.end()) {
      r.Error(path + ".curves", "missing required field");
    } else {
      region.curves = ReadCurves(r, *c, path + ".curves");
      for (const ShapeCheck& check : ValidateShape(region.curves).checks) {
        if (!check.passed) {
          r.Error(path + "." + ShapeCheckField(check.name),
                  "shape check " + check.name + " failed" +
                      (check.detail.empty() ? "" : " (" + check.detail + ")"));
        }
      }
    }
    if (region.id.empty()) r.Error(path + ".id", "must be non-empty");
    if (!ids.insert(region.id).second) {
      r.Error(path + ".id", "duplicate region id '" + region.id + "'");
    }
    if (region.population < 1) r.Error(path + ".population", "must be >= 1");
    if (!(region.prevalence >= 0.0 && region.prevalence <= 1.0)) {
      r.Error(path + ".prevalence", "must lie in [0, 1]");
    }
    if (!(region.domestic_cases >= 0.0)) {
      r.Error(path + ".domestic_cases", "must be nonnegative");
    }
    config->regions.push_back(region);
  }
}

void ReadLinks(Reader& r, const json& doc, ScenarioConfig* config) {
  auto it = doc.find("links");
  if (it == doc.end()) return;
  if (!it->is_array()) {
    r.Error("links", "expected an array");
    return;
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string path = "links[" + std::to_string(i) + "]";
    const json& block = (*it)[i];
    TravelLink link;
    if (!r.ExpectObject(block, path)) continue;
    r.CheckKeys(block, path, {"origin", "destination", "travelers", "screening"});
    r.String(block, path, "origin", &link.origin, true);
    r.String(block, path, "destination", &link.destination, true);
    r.Integer(block, path, "travelers", &link.travelers, true);
    r.Number(block, path, "screening", &link.screening);
    const RegionState* origin = config->FindRegion(link.origin);
    if (origin == nullptr) {
      r.Error(path + ".origin", "unknown region '" + link.origin + "'");
    }
    if (config->FindRegion(link.destination) == nullptr) {
      r.Error(path + ".destination",
              "unknown region '" + link.destination + "'");
    }
    if (link.origin == link.destination) {
      r.Error(path, "origin and destination must differ");
    }
    if (!seen.insert({link.origin, link.destination}).second) {
      r.Error(path, "duplicate link " + link.origin + "->" + link.destination);
    }
    if (link.travelers < 0) {
      r.Error(path + ".travelers", "must be nonnegative");
    } else if (origin != nullptr && link.travelers > origin->population) {
      r.Error(path + ".travelers", "exceeds the origin population");
    }
    if (!(link.screening >= 0.0 && link.screening <= 1.0)) {
      r.Error(path + ".screening", "must lie in [0, 1]");
    }
    config->links.push_back(link);
  }
}

void ReadSolver(Reader& r, const json& doc, SolverConfig* solver) {
  auto it = doc.find("solver");
  if (it == doc.end()) return;
  const std::string path = "solver";
  if (!r.ExpectObject(*it, path)) return;
  r.CheckKeys(*it, path,
              {"grid_points", "tolerance", "foc_tolerance", "max_iterations",
               "damping", "seed", "monte_carlo", "monte_carlo_trials",
               "cooperative_grid_points", "joint_best_response"});
  r.Integer(*it, path, "grid_points", &solver->grid_points);
  r.Number(*it, path, "tolerance", &solver->tolerance);
  r.Number(*it, path, "foc_tolerance", &solver->foc_tolerance);
  r.Integer(*it, path, "max_iterations", &solver->max_iterations);
  r.Number(*it, path, "damping", &solver->damping);
  if (auto s = it->find("seed"); s != it->end() && !s->is_null()) {
    std::uint64_t seed = 0;
    r.Integer(*it, path, "seed", &seed);
    solver->seed = seed;
  }
  r.Bool(*it, path, "monte_carlo", &solver->monte_carlo);
  r.Integer(*it, path, "monte_carlo_trials", &solver->monte_carlo_trials);
  r.Integer(*it, path, "cooperative_grid_points",
            &solver->cooperative_grid_points);
  r.Bool(*it, path, "joint_best_response", &solver->joint_best_response);

  if (solver->grid_points < 3) r.Error("solver.grid_points", "must be >= 3");
  if (!(solver->tolerance > 0.0)) r.Error("solver.tolerance", "must be positive");
  if (!(solver->foc_tolerance > 0.0)) {
    r.Error("solver.foc_tolerance", "must be positive");
  }
  if (solver->max_iterations < 1) {
    r.Error("solver.max_iterations", "must be >= 1");
  }
  if (!(solver->damping > 0.0 && solver->damping <= 1.0)) {
    r.Error("solver.damping", "must lie in (0, 1]");
  }
  if (solver->monte_carlo_trials < 1) {
    r.Error("solver.monte_carlo_trials", "must be >= 1");
  }
  if (solver->cooperative_grid_points < 2) {
    r.Error("solver.cooperative_grid_points", "must be >= 2");
  }
  if (solver->monte_carlo && !solver->seed.has_value()) {
    r.Error("solver.seed", "required when monte_carlo is enabled");
  }
}

void ReadDynamics(Reader& r, const json& doc, DynamicsConfig* dyn) {
  auto it = doc.find("dynamics");
  if (it == doc.end()) return;
  const std::string path = "dynamics";
  if (!r.ExpectObject(*it, path)) return;
  r.CheckKeys(*it, path,
              {"r0", "r_min", "stringency_exponent", "stringency_scope",
               "horizon", "initial_cases", "target_cases",
               "reproduction_step", "terminal_hold_cost", "schedule"});
  r.Number(*it, path, "r0", &dyn->params.r0);
  r.Number(*it, path, "r_min", &dyn->params.r_min);
  r.Number(*it, path, "stringency_exponent", &dyn->params.stringency_exponent);
  std::string scope = std::string(ToString(dyn->params.scope));
  r.String(*it, path, "stringency_scope", &scope);
  if (scope == "full") {
    dyn->params.scope = StringencyScope::kFull;
  } else if (scope == "variable") {
    dyn->params.scope = StringencyScope::kVariable;
  } else {
    r.Error("dynamics.stringency_scope", "expected 'full' or 'variable'");
  }
  r.Integer(*it, path, "horizon", &dyn->horizon);
  r.Number(*it, path, "initial_cases", &dyn->initial_cases);
  r.Number(*it, path, "target_cases", &dyn->target_cases);
  r.Number(*it, path, "reproduction_step", &dyn->reproduction_step);
  r.Bool(*it, path, "terminal_hold_cost", &dyn->terminal_hold_cost);

  const DynamicsParams& p = dyn->params;
  if (!(p.r_min >= 0.0 && p.r_min < p.r0 && std::isfinite(p.r0))) {
    r.Error("dynamics.r_min", "need 0 <= r_min < r0");
  }
  if (!(p.stringency_exponent > 0.0)) {
    r.Error("dynamics.stringency_exponent", "must be positive");
  }
  if (dyn->horizon < 1) r.Error("dynamics.horizon", "must be >= 1");
  if (!(dyn->initial_cases >= 0.0)) {
    r.Error("dynamics.initial_cases", "must be nonnegative");
  }
  if (!(dyn->target_cases >= 0.0 && dyn->target_cases <= dyn->initial_cases)) {
    r.Error("dynamics.target_cases", "must lie in [0, initial_cases]");
  }
  if (!(dyn->reproduction_step > 0.0)) {
    r.Error("dynamics.reproduction_step", "must be positive");
  }

  auto s = it->find("schedule");
  if (s == it->end()) return;
  if (!s->is_array()) {
    r.Error("dynamics.schedule", "expected an array");
    return;
  }
  int total_days = 0;
  for (std::size_t i = 0; i < s->size(); ++i) {
    const std::string spath = "dynamics.schedule[" + std::to_string(i) + "]";
    const json& block = (*s)[i];
    ScheduleSegment seg;
    if (!r.ExpectObject(block, spath)) continue;
    r.CheckKeys(block, spath, {"days", "reproduction", "screening"});
    r.Integer(block, spath, "days", &seg.days, true);
    r.Number(block, spath, "reproduction", &seg.reproduction, true);
    r.Number(block, spath, "screening", &seg.screening);
    if (seg.days < 1) r.Error(spath + ".days", "must be >= 1");
    if (!(seg.reproduction >= p.r_min && seg.reproduction <= p.r0)) {
      r.Error(spath + ".reproduction", "must lie in [r_min, r0]");
    }
    if (!(seg.screening >= 0.0 && seg.screening <= 1.0)) {
      r.Error(spath + ".screening", "must lie in [0, 1]");
    }
    total_days += seg.days;
    dyn->schedule.push_back(seg);
  }
  if (!dyn->schedule.empty() && total_days != dyn->horizon) {
    r.Error("dynamics.schedule", "segment days sum to " +
                                     std::to_string(total_days) +
                                     ", horizon is " +
                                     std::to_string(dyn->horizon));
  }
}

json Number(double value) {
  if (std::isinf(value)) return nullptr;
  return value;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error([&] {
        std::string message = "invalid configuration";
        for (const std::string& d : diagnostics) message += "\n  " + d;
        return message;
      }()),
      diagnostics_(std::move(diagnostics)) {}

PolicySchedule DynamicsConfig::BuildSchedule() const {
  if (schedule.empty()) return PolicySchedule::Constant(horizon, params.r_min);
  PolicySchedule out;
  for (const ScheduleSegment& seg : schedule) {
    for (int d = 0; d < seg.days; ++d) {
      out.reproduction.push_back(seg.reproduction);
      out.screening.push_back(seg.screening);
    }
  }
  return out;
}

const RegionState* ScenarioConfig::FindRegion(const std::string& id) const {
  for (const RegionState& region : regions) {
    if (region.id == id) return &region;
  }
  return nullptr;
}

GameState ScenarioConfig::ToGameState() const {
  if (regions.size() != 2) {
    throw ConfigError({"regions: the game needs exactly two regions, found " +
                       std::to_string(regions.size())});
  }
  GameState state;
  state.regions = {regions[0], regions[1]};
  for (int r = 0; r < 2; ++r) {
    const std::string& from = regions[1 - r].id;
    const std::string& to = regions[r].id;
    state.inbound[r] = TravelLink{from, to, 0, 1.0};
    for (const TravelLink& link : links) {
      if (link.origin == from && link.destination == to) state.inbound[r] = link;
    }
  }
  return state;
}

GameOptions ScenarioConfig::ToGameOptions() const {
  GameOptions options;
  options.max_iterations = solver.max_iterations;
  options.tolerance = solver.tolerance;
  options.damping = solver.damping;
  options.joint_best_response = solver.joint_best_response;
  options.optimizer = ToOptimizerOptions();
  options.cooperative_grid_points = solver.cooperative_grid_points;
  return options;
}

OptimizerOptions ScenarioConfig::ToOptimizerOptions() const {
  OptimizerOptions options;
  options.grid_points = solver.grid_points;
  options.foc_tolerance = solver.foc_tolerance;
  return options;
}

ScenarioConfig ParseConfig(const json& document) {
  Reader reader;
  ScenarioConfig config;
  if (!document.is_object()) {
    throw ConfigError({"<root>: expected a single JSON object"});
  }
  reader.CheckKeys(document, "", {"regions", "links", "solver", "dynamics"});
  ReadRegions(reader, document, &config);
  ReadLinks(reader, document, &config);
  ReadSolver(reader, document, &config.solver);
  ReadDynamics(reader, document, &config.dynamics);
  if (!reader.diagnostics().empty()) throw ConfigError(reader.diagnostics());
  return config;
}

ScenarioConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path.string() + ": cannot open file"});
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({path.string() + ": " + e.what()});
  }
  return ParseConfig(document);
}

json ConfigToJson(const ScenarioConfig& config) {
  json doc;
  json regions = json::array();
  for (const RegionState& region : config.regions) {
    const CostCurveSet& c = region.curves;
    regions.push_back({
        {"id", region.id},
        {"population", region.population},
        {"prevalence", region.prevalence},
        {"domestic_cases", region.domestic_cases},
        {"curves",
         {{"transmission",
           {{"c0", c.transmission.c0},
            {"a_tti", c.transmission.a_tti},
            {"x_tti", Number(c.transmission.x_tti)},
            {"jump", c.transmission.jump},
            {"a_wide", c.transmission.a_wide},
            {"gamma", c.transmission.gamma}}},
          {"border",
           {{"b0", c.border.b0},
            {"i_free", c.border.i_free},
            {"beta", c.border.beta}}},
          {"outbreak",
           {{"omega", c.outbreak.omega}, {"delta", c.outbreak.delta}}},
          {"alpha", c.alpha}}},
    });
  }
  doc["regions"] = regions;

  json links = json::array();
  for (const TravelLink& link : config.links) {
    links.push_back({{"origin", link.origin},
                     {"destination", link.destination},
                     {"travelers", link.travelers},
                     {"screening", link.screening}});
  }
  doc["links"] = links;

  const SolverConfig& s = config.solver;
  doc["solver"] = {
      {"grid_points", s.grid_points},
      {"tolerance", s.tolerance},
      {"foc_tolerance", s.foc_tolerance},
      {"max_iterations", s.max_iterations},
      {"damping", s.damping},
      {"seed", s.seed.has_value() ? json(*s.seed) : json(nullptr)},
      {"monte_carlo", s.monte_carlo},
      {"monte_carlo_trials", s.monte_carlo_trials},
      {"cooperative_grid_points", s.cooperative_grid_points},
      {"joint_best_response", s.joint_best_response},
  };

  const DynamicsConfig& d = config.dynamics;
  json schedule = json::array();
  for (const ScheduleSegment& seg : d.schedule) {
    schedule.push_back({{"days", seg.days},
                        {"reproduction", seg.reproduction},
                        {"screening", seg.screening}});
  }
  doc["dynamics"] = {
      {"r0", d.params.r0},
      {"r_min", d.params.r_min},
      {"stringency_exponent", d.params.stringency_exponent},
      {"stringency_scope", std::string(ToString(d.params.scope))},
      {"horizon", d.horizon},
      {"initial_cases", d.initial_cases},
      {"target_cases", d.target_cases},
      {"reproduction_step", d.reproduction_step},
      {"terminal_hold_cost", d.terminal_hold_cost},
      {"schedule", schedule},
  };
  return doc;
}

}  // namespace policycost
