/* Copyright 2026 The QSL Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "qsl/recipes.h"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

namespace qsl {

namespace {

const json kOptimizerDefaults = {{"restarts", 4}, {"max_iterations", 3000}};

json defaults_for(const std::string &name) {
  if (name == "fig1a")
    // The figure caption quotes T = 0.52; the surrounding text uses 0.53.
    return {{"T", 0.53}, {"omega", 1.0}, {"f_max", 1.0}, {"grid", 64}, {"formula", "combined"}};
  if (name == "fig1b")
    return {{"f_max", 1.0},
            {"ratios", {10.0, 2.0, 1.0, 0.5, 0.25}},
            {"tmin", 0.0},
            {"tmax", 4.0},
            {"steps", 81},
            {"resolution", 64}};
  if (name == "fig2a")
    // Scan window in multiples of the drift bound sqrt(2)/omega.
    return {{"omegas", {0.25, 0.5, 1.0, 2.0, 4.0}},
            {"scan_low", 1.0},
            {"scan_high", 1.5},
            {"scan_points", 9},
            {"refine", true},
            {"optimizer", kOptimizerDefaults}};
  if (name == "fig2a-inset")
    return {{"n_levels", 4},
            {"couplings", {0.5, 1.0, 2.0}},
            {"normalize", true},
            {"scan_low", 1.0},
            {"scan_high", 11.0},
            {"scan_points", 6},
            {"refine", false},
            {"optimizer", kOptimizerDefaults}};
  if (name == "fig2b")
    return {{"omega", 1.0},
            {"tmin", 0.6},
            {"tmax", 3.0},
            {"tsteps", 12},
            {"fmin", 0.3},
            {"fmax", 3.0},
            {"fsteps", 12},
            {"optimizer", kOptimizerDefaults}};
  throw ConfigError("/recipe", "unknown recipe '" + name + "'");
}

bool same_kind(const json &a, const json &b) {
  if (a.is_number() && b.is_number())
    return !(a.is_number_integer() && !b.is_number_integer());
  return a.type() == b.type();
}

std::vector<double> numbers(const json &array, const std::string &key) {
  std::vector<double> out;
  for (const auto &v : array) {
    if (!v.is_number())
      throw ConfigError("/" + key, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  if (out.empty())
    throw ConfigError("/" + key, "must not be empty");
  return out;
}

OptimizationConfig optimizer_from(const json &config) {
  OptimizationConfig c = load_optimizer(config.at("optimizer"));
  c.rng_seed = config.at("seed").get<std::uint64_t>();
  return c;
}

std::string run_fig1a(const json &c) {
  const std::string formula = c.at("formula");
  if (formula != "combined" && formula != "alternative")
    throw ConfigError("/formula", "expected \"combined\" or \"alternative\"");
  const auto map = reachable_state_map(
      c.at("T"), c.at("omega"), c.at("f_max"), c.at("grid"),
      formula == "combined" ? StateBoundFormula::combined : StateBoundFormula::alternative);
  return to_csv(map);
}

std::string run_fig1b(const json &c, int threads) {
  const auto ratios = numbers(c.at("ratios"), "ratios");
  const double f_max = c.at("f_max");
  const int n = c.at("resolution");
  const auto times = linspace(c.at("tmin"), c.at("tmax"), c.at("steps"));
  std::vector<std::string> header{"T"};
  std::vector<std::vector<VolumeEstimate>> curves;
  for (double ratio : ratios) {
    header.push_back("ratio_" + format_number(ratio));
    curves.push_back(unreachable_volume_curve(times, ratio * f_max, f_max, {n, n, n}, threads));
  }
  CsvTable table(header);
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<double> row{times[k]};
    for (const auto &curve : curves)
      row.push_back(curve[k].value);
    table.add_row(row);
  }
  return table.str();
}

MinTimeOptions min_time_options(const json &c) {
  MinTimeOptions o;
  o.refine = c.at("refine");
  return o;
}

std::string run_fig2a(const json &c) {
  const auto omegas = numbers(c.at("omegas"), "omegas");
  const auto config = optimizer_from(c);
  CsvTable table({"omega", "drift_bound", "exact_min_time", "numeric_t_star"});
  const auto gate = named_gate("pauli-y", 2);
  for (double omega : omegas) {
    const auto system = single_qubit_system(omega);
    const double bound = drift_speed_limit(system, gate);
    const auto estimate = min_time_search(system, gate, config, c.at("scan_low").get<double>() * bound,
                                          c.at("scan_high").get<double>() * bound,
                                          c.at("scan_points"), min_time_options(c));
    table.add_row(std::vector<double>{omega, bound, exact_min_time_sigma_y(omega),
                                      estimate.t_star_upper.value_or(std::nan(""))});
  }
  return table.str();
}

std::string run_fig2a_inset(const json &c) {
  const auto couplings = numbers(c.at("couplings"), "couplings");
  const auto config = optimizer_from(c);
  const int n = c.at("n_levels");
  CsvTable table({"J", "drift_bound", "numeric_t_star", "gap_ratio"});
  for (double j : couplings) {
    const auto system = chain_system(n, j, c.at("normalize"));
    const auto gate = named_gate("swap-ends", n);
    const double bound = drift_speed_limit(system, gate);
    const auto estimate = min_time_search(system, gate, config, c.at("scan_low").get<double>() * bound,
                                          c.at("scan_high").get<double>() * bound,
                                          c.at("scan_points"), min_time_options(c));
    const double t = estimate.t_star_upper.value_or(std::nan(""));
    table.add_row(std::vector<double>{j, bound, t, t / bound});
  }
  return table.str();
}

std::string run_fig2b(const json &c, int threads) {
  const auto system = single_qubit_system(c.at("omega"));
  const auto gate = named_gate("pauli-y", 2);
  const auto sweep = pareto_sweep(system, gate, linspace(c.at("tmin"), c.at("tmax"), c.at("tsteps")),
                                  linspace(c.at("fmin"), c.at("fmax"), c.at("fsteps")),
                                  optimizer_from(c), threads);
  return to_csv(sweep);
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1)
    throw InvalidArgument("grid needs at least one point");
  if (count == 1)
    return {lo};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = lo + (hi - lo) * i / (count - 1);
  return out;
}

std::vector<std::string> recipe_names() {
  return {"fig1a", "fig1b", "fig2a", "fig2a-inset", "fig2b"};
}

json recipe_defaults(const std::string &name) {
  json d = defaults_for(name);
  if (d.contains("optimizer")) {
    const auto v = validate_config({{"system", {{"kind", "single_qubit"}}},
                                    {"optimizer", d.at("optimizer")}});
    d["optimizer"] = v.resolved.at("optimizer");
  }
  d["recipe"] = name;
  d["seed"] = 0;
  return d;
}

json resolve_recipe(const ExperimentRecipe &recipe) {
  json resolved = recipe_defaults(recipe.name);
  if (!recipe.overrides.is_object())
    throw ConfigError("", "overrides must be a JSON object");
  std::vector<Diagnostic> diagnostics;
  for (const auto &[key, value] : recipe.overrides.items()) {
    if (key == "recipe") {
      if (value != recipe.name)
        diagnostics.push_back({"/recipe", "does not match the recipe being run"});
      continue;
    }
    if (!resolved.contains(key)) {
      diagnostics.push_back({"/" + key, "unknown parameter for recipe " + recipe.name});
      continue;
    }
    if (key == "seed") {
      if (!value.is_number_integer() || value.get<long long>() < 0)
        diagnostics.push_back({"/seed", "expected a nonnegative integer"});
      else
        resolved["seed"] = value;
      continue;
    }
    if (key == "optimizer") {
      json merged = resolved.at("optimizer");
      if (value.is_object())
        merged.merge_patch(value);
      const auto v = validate_config({{"system", {{"kind", "single_qubit"}}}, {"optimizer", merged}});
      for (const auto &d : v.diagnostics)
        diagnostics.push_back(d);
      if (v.ok())
        resolved["optimizer"] = v.resolved.at("optimizer");
      continue;
    }
    if (!same_kind(resolved.at(key), value)) {
      diagnostics.push_back({"/" + key, "has the wrong type"});
      continue;
    }
    resolved[key] = value;
  }
  if (!diagnostics.empty())
    throw ConfigError(std::move(diagnostics));
  return resolved;
}

ResultEnvelope run_recipe(const ExperimentRecipe &recipe, int threads) {
  const json config = resolve_recipe(recipe);
  ResultEnvelope env;
  env.version = kVersion;
  env.config = config;
  env.seed = config.at("seed").get<std::uint64_t>();
  env.payload_format = "csv";
  if (recipe.name == "fig1a")
    env.payload = run_fig1a(config);
  else if (recipe.name == "fig1b")
    env.payload = run_fig1b(config, threads);
  else if (recipe.name == "fig2a")
    env.payload = run_fig2a(config);
  else if (recipe.name == "fig2a-inset")
    env.payload = run_fig2a_inset(config);
  else
    env.payload = run_fig2b(config, threads);
  env.timestamp = utc_timestamp();
  if (!recipe.output_path.empty())
    write_text_file(recipe.output_path, to_json(env).dump(2) + "\n");
  return env;
}

ResultEnvelope rerun(const json &envelope, int threads) {
  if (!envelope.contains("config") || !envelope.at("config").contains("recipe"))
    throw ConfigError("/config/recipe", "envelope does not record its recipe");
  const json &config = envelope.at("config");
  return run_recipe({config.at("recipe").get<std::string>(), config, ""}, threads);
}

json to_json(const ResultEnvelope &e) {
  return json{{"version", e.version},  {"config", e.config},
              {"seed", e.seed},        {"timestamp", e.timestamp},
              {"format", e.payload_format}, {"payload", e.payload}};
}

void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw InvalidArgument("cannot open '" + path + "' for writing");
  out << text;
  if (!out)
    throw NumericError("failed writing '" + path + "'");
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace qsl
