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

#include "policycost/report.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

#include "policycost/dynamics.h"
#include "policycost/errors.h"
#include "policycost/game_solver.h"
#include "policycost/import_model.h"
#include "policycost/numeric.h"
#include "policycost/region_optimizer.h"

namespace policycost {
namespace {

using nlohmann::json;

struct Table {
  std::string stem;  // file name without extension
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  json ToJson() const {
    json out = json::array();
    for (const auto& row : rows) {
      json object = json::object();
      for (std::size_t c = 0; c < columns.size(); ++c) {
        object[columns[c]] = row[c];
      }
      out.push_back(object);
    }
    return out;
  }
};

struct CommandReport {
  std::vector<Table> tables;  // CSV form
  json body;                  // JSON form, without the config echo
  OutputFormat default_format = OutputFormat::kCsv;
};

std::string CsvField(const json& cell) {
  if (cell.is_null()) return "";
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_number_integer()) return cell.dump();
  if (cell.is_number()) return FormatNumber(cell.get<double>());
  std::string text = cell.is_string() ? cell.get<std::string>() : cell.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string RenderCsv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += CsvField(row[c]);
    }
    out += '\n';
  }
  return out;
}

// Non-finite numbers become null; finite floats are rounded.
json RoundTree(const json& value) {
  if (value.is_number_float()) {
    const double v = value.get<double>();
    if (!std::isfinite(v)) return nullptr;
    return RoundForOutput(v);
  }
  if (value.is_array() || value.is_object()) {
    json out = value;
    for (auto it = out.begin(); it != out.end(); ++it) *it = RoundTree(*it);
    return out;
  }
  return value;
}

void WriteFile(const std::filesystem::path& path, const std::string& text,
               std::vector<std::filesystem::path>* written) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError({path.string() + ": cannot write report"});
  out << text;
  written->push_back(path);
}

std::string LinkLabel(const TravelLink& link) {
  return link.origin + "->" + link.destination;
}

json ClassificationJson(Classification c) { return std::string(ToString(c)); }

// --- import-dist -----------------------------------------------------------

CommandReport ImportDist(const ScenarioConfig& config) {
  const bool monte_carlo =
      config.solver.monte_carlo && config.solver.seed.has_value();
  Table dist{"import-dist",
             {"link", "nu", "pmf", "tail_sum", "approx_tail_sum"},
             {}};
  Table summary{"import-dist.summary",
                {"link", "population", "infected", "travelers", "prevalence",
                 "expected_exact", "expected_closed_form", "screening",
                 "arriving"},
                {}};
  if (monte_carlo) {
    dist.columns.push_back("mc_pmf");
    summary.columns.push_back("mc_mean");
  }

  for (std::size_t i = 0; i < config.links.size(); ++i) {
    const TravelLink& link = config.links[i];
    const RegionState& origin = *config.FindRegion(link.origin);
    const ImportScenario s = ImportScenario::FromPrevalence(
        origin.population, origin.prevalence, link.travelers);
    std::vector<double> pmf = HypergeometricDistribution(s);
    pmf.resize(static_cast<std::size_t>(s.travelers) + 1, 0.0);

    std::vector<double> empirical;
    double mc_mean = 0.0;
    if (monte_carlo) {
      const std::vector<std::int64_t> draws =
          SampleImports(s, *config.solver.seed + i,
                        config.solver.monte_carlo_trials);
      empirical.assign(pmf.size(), 0.0);
      for (std::int64_t d : draws) {
        empirical[d] += 1.0;
        mc_mean += static_cast<double>(d);
      }
      for (double& e : empirical) e /= static_cast<double>(draws.size());
      mc_mean /= static_cast<double>(draws.size());
    }

    CompensatedSum tail;
    CompensatedSum approx;
    double term = 1.0;
    for (std::int64_t nu = 0; nu <= s.travelers; ++nu) {
      if (nu >= 1) {
        tail.Add(pmf[nu]);
        term *= origin.prevalence * static_cast<double>(s.travelers - nu + 1) /
                static_cast<double>(nu);
        approx.Add(term);
      }
      std::vector<json> row = {LinkLabel(link), nu, pmf[nu], tail.Value(),
                               approx.Value()};
      if (monte_carlo) row.push_back(empirical[nu]);
      dist.rows.push_back(row);
    }

    const double closed_form = ExpectedImportsClosedForm(link.travelers, origin.prevalence);
    std::vector<json> row = {LinkLabel(link),
                             s.population,
                             s.infected,
                             s.travelers,
                             origin.prevalence,
                             ExpectedImportsExact(s),
                             closed_form,
                             link.screening,
                             closed_form * link.screening};
    if (monte_carlo) row.push_back(mc_mean);
    summary.rows.push_back(row);
  }

  CommandReport report;
  report.tables = {dist, summary};
  report.body = {{"distribution", dist.ToJson()},
                 {"summary", summary.ToJson()}};
  return report;
}

// --- optimize ----------------------------------------------------------------

CommandReport Optimize(const ScenarioConfig& config) {
  Table table{"optimize",
              {"region", "i_star", "cost", "classification", "foc_residual",
               "derivative_at_closed", "derivative_at_open",
               "closed_condition", "open_condition", "cost_transmission",
               "cost_border", "cost_outbreak", "total_with_outbreak",
               "literal_total"},
              {}};
  const OptimizerOptions options = config.ToOptimizerOptions();
  for (const RegionState& region : config.regions) {
    const OptimizationResult r = MinimizeOverImports(region.curves, options);
    const CostBreakdown b = TotalPolicyCost(region.curves, 0.0, r.argument);
    table.rows.push_back({region.id, r.argument, r.cost,
                          ClassificationJson(r.classification),
                          r.foc_residual, r.derivative_at_closed,
                          r.derivative_at_open, r.closed_condition,
                          r.open_condition, b.transmission, b.border,
                          b.outbreak, b.total, b.literal_total});
  }
  CommandReport report;
  report.tables = {table};
  report.body = {
      {"results", table.ToJson()},
      {"cost_convention",
       "total_with_outbreak = c_T + c_b + c_O; literal_total = c_T + c_b - c_O"},
  };
  return report;
}

// --- game --------------------------------------------------------------------

json OutcomeJson(const GameOutcome& outcome) {
  json regions = json::array();
  for (int r = 0; r < 2; ++r) {
    const PolicyDecision& d = outcome.decisions[r];
    regions.push_back({{"id", outcome.state.regions[r].id},
                       {"domestic_cases", d.domestic_cases},
                       {"screening", d.screening},
                       {"imports", d.imports},
                       {"policy_cost", d.policy_cost},
                       {"total_cost", d.total_cost},
                       {"classification", ClassificationJson(d.classification)}});
  }
  return {{"regions", regions},
          {"total_cost", outcome.total_cost},
          {"converged", outcome.converged},
          {"iterations", outcome.iterations},
          {"damped", outcome.damped},
          {"open_borders_verified", outcome.open_borders_verified}};
}

CommandReport Game(const ScenarioConfig& config) {
  const GameState state = config.ToGameState();
  const GameSolution solution = SolveGame(state, config.ToGameOptions());

  Table decisions{"game",
                  {"mode", "region", "domestic_cases", "screening", "imports",
                   "policy_cost", "total_cost", "classification"},
                  {}};
  auto add = [&](const char* mode, const GameOutcome& outcome) {
    for (int r = 0; r < 2; ++r) {
      const PolicyDecision& d = outcome.decisions[r];
      decisions.rows.push_back({mode, state.regions[r].id, d.domestic_cases,
                                d.screening, d.imports, d.policy_cost,
                                d.total_cost,
                                ClassificationJson(d.classification)});
    }
  };
  add("nash", solution.nash);
  add("cooperative", solution.cooperative);

  Table summary{"game.summary",
                {"nash_total", "cooperative_total", "gap", "ratio",
                 "converged", "iterations"},
                {{solution.nash.total_cost, solution.cooperative.total_cost,
                  solution.price.gap, solution.price.ratio,
                  solution.nash.converged, solution.nash.iterations}}};

  CommandReport report;
  report.default_format = OutputFormat::kJson;
  report.tables = {decisions, summary};
  report.body = {{"nash", OutcomeJson(solution.nash)},
                 {"cooperative", OutcomeJson(solution.cooperative)},
                 {"gap", solution.price.gap},
                 {"ratio", solution.price.ratio},
                 {"converged", solution.nash.converged},
                 {"iterations", solution.nash.iterations}};
  return report;
}

// --- simulate ------------------------------------------------------------------

CommandReport SimulateCommand(const ScenarioConfig& config) {
  const PolicySchedule schedule = config.dynamics.BuildSchedule();
  CommandReport report;
  report.body = {{"trajectories", json::object()}};
  for (const RegionState& region : config.regions) {
    double free_imports = 0.0;
    for (const TravelLink& link : config.links) {
      if (link.destination != region.id) continue;
      const RegionState& origin = *config.FindRegion(link.origin);
      free_imports += ExpectedImportsClosedForm(link.travelers, origin.prevalence);
    }
    const Trajectory path =
        Simulate(schedule, region.domestic_cases, region.curves, free_imports,
                 config.dynamics.params);

    Table table{"simulate." + region.id,
                {"day", "cases", "cost_transmission", "cost_border",
                 "cost_outbreak", "cost_total", "cumulative"},
                {}};
    double plain_sum = 0.0;
    for (const DayRecord& day : path.days) {
      plain_sum += day.cost.total;
      table.rows.push_back({day.day, day.cases, day.cost.transmission,
                            day.cost.border, day.cost.outbreak,
                            day.cost.total, day.cumulative});
    }
    if (std::abs(plain_sum - path.cumulative_cost) >
        1e-9 * std::max(1.0, std::abs(plain_sum))) {
      throw InvariantViolation("cumulative cost of region " + region.id +
                               " disagrees with the sum of daily totals");
    }
    report.tables.push_back(table);
    report.body["trajectories"][region.id] = {
        {"free_imports", free_imports},
        {"final_cases", path.final_cases},
        {"cumulative_cost", path.cumulative_cost},
        {"days", table.ToJson()}};
  }
  return report;
}

// --- compare-schedules -----------------------------------------------------------

CommandReport CompareSchedules(const ScenarioConfig& config) {
  const DynamicsConfig& dyn = config.dynamics;
  ComparisonOptions options;
  options.reproduction_step = dyn.reproduction_step;
  options.terminal_hold_cost = dyn.terminal_hold_cost;

  Table table{"compare-schedules",
              {"region", "schedules", "feasible", "best_cost", "best_first",
               "best_second", "best_switch_day", "best_monotone_cost",
               "best_growth_cost", "monotone_cheapest", "degenerate",
               "hold_cost", "zero_floor_holds"},
              {}};
  CommandReport report;
  report.body = {{"summary", json::array()}, {"schedules", json::object()}};
  for (const RegionState& region : config.regions) {
    const ScheduleComparison cmp =
        CompareMonotoneVsRelax(dyn.initial_cases, dyn.target_cases,
                               dyn.horizon, region.curves, dyn.params, options);
    int feasible = 0;
    json schedules = json::array();
    for (const ScheduleCost& s : cmp.schedules) {
      feasible += s.feasible ? 1 : 0;
      schedules.push_back({{"first", s.first},
                           {"second", s.second},
                           {"switch_day", s.switch_day},
                           {"cost", s.cost},
                           {"terminal_cost", s.terminal_cost},
                           {"final_cases", s.final_cases},
                           {"growth", s.growth},
                           {"feasible", s.feasible}});
    }
    auto cost_at = [&](int index) -> json {
      if (index < 0) return nullptr;
      return cmp.schedules[index].cost;
    };
    json best_first = nullptr;
    json best_second = nullptr;
    json best_switch = nullptr;
    if (cmp.best_index >= 0) {
      const ScheduleCost& best = cmp.schedules[cmp.best_index];
      best_first = best.first;
      best_second = best.second;
      best_switch = best.switch_day;
    }
    table.rows.push_back(
        {region.id, static_cast<std::int64_t>(cmp.schedules.size()), feasible,
         cost_at(cmp.best_index), best_first, best_second, best_switch,
         cost_at(cmp.best_monotone_index), cost_at(cmp.best_growth_index),
         cmp.monotone_cheapest, cmp.degenerate,
         std::isnan(cmp.hold_cost) ? json(nullptr) : json(cmp.hold_cost),
         CheckZeroCaseFloor(region.curves, dyn.params, dyn.initial_cases)
             .holds});
    report.body["schedules"][region.id] = schedules;
  }
  report.tables = {table};
  report.body["summary"] = table.ToJson();
  return report;
}

// --- validate --------------------------------------------------------------------

CommandReport Validate(const ScenarioConfig& config) {
  Table table{"validate", {"region", "check", "passed", "detail"}, {}};
  for (const RegionState& region : config.regions) {
    for (const ShapeCheck& check : ValidateShape(region.curves).checks) {
      table.rows.push_back({region.id, check.name, check.passed, check.detail});
    }
  }
  CommandReport report;
  report.tables = {table};
  report.body = {{"checks", table.ToJson()}};
  return report;
}

using CommandFn = std::function<CommandReport(const ScenarioConfig&)>;

const std::map<std::string_view, CommandFn>& Commands() {
  static const auto* commands = new std::map<std::string_view, CommandFn>{
      {"import-dist", ImportDist},
      {"optimize", Optimize},
      {"game", Game},
      {"simulate", SimulateCommand},
      {"compare-schedules", CompareSchedules},
      {"validate", Validate},
  };
  return *commands;
}

}  // namespace

const std::vector<std::string_view>& CommandNames() {
  static const auto* names = new std::vector<std::string_view>{
      "import-dist", "optimize", "game", "simulate", "compare-schedules",
      "validate"};
  return *names;
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

double RoundForOutput(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(FormatNumber(value).c_str(), nullptr);
}

ScenarioConfig ApplyOverrides(const ScenarioConfig& config,
                              const RunOptions& options) {
  ScenarioConfig effective = config;
  if (options.seed.has_value()) {
    effective.solver.seed = options.seed;
    effective.solver.monte_carlo = true;
  }
  if (options.grid_points.has_value()) {
    if (*options.grid_points < 3) throw ConfigError({"--grid: must be >= 3"});
    effective.solver.grid_points = *options.grid_points;
  }
  if (options.tolerance.has_value()) {
    if (!(*options.tolerance > 0.0)) {
      throw ConfigError({"--tol: must be positive"});
    }
    effective.solver.tolerance = *options.tolerance;
  }
  return effective;
}

std::vector<std::filesystem::path> RunCommand(const ScenarioConfig& config,
                                              std::string_view command,
                                              const RunOptions& options) {
  const auto& commands = Commands();
  auto it = commands.find(command);
  if (it == commands.end()) {
    throw ConfigError({"unknown command '" + std::string(command) + "'"});
  }
  const ScenarioConfig effective = ApplyOverrides(config, options);
  const CommandReport report = it->second(effective);
  const OutputFormat format = options.format.value_or(report.default_format);

  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) {
    throw ConfigError({options.out_dir.string() + ": " + ec.message()});
  }

  std::vector<std::filesystem::path> written;
  const json echo = ConfigToJson(effective);
  if (format == OutputFormat::kCsv) {
    for (const Table& table : report.tables) {
      WriteFile(options.out_dir / (table.stem + ".csv"), RenderCsv(table),
                &written);
    }
    WriteFile(options.out_dir / (std::string(command) + ".config.json"),
              echo.dump(2) + "\n", &written);
  } else {
    json doc = RoundTree(report.body);
    doc["config"] = echo;
    WriteFile(options.out_dir / (std::string(command) + ".json"),
              doc.dump(2) + "\n", &written);
  }
  return written;
}

}  // namespace policycost
