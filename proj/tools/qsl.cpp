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

// qsl: speed-limit bounds, reachability maps and GRAPE runs from the shell.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qsl/recipes.h"

using namespace qsl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string output;
  std::string threads;
  std::string format;
};

json parse_json_argument(const std::string &arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    try {
      return json::parse(arg);
    } catch (const json::parse_error &e) {
      throw InvalidArgument(std::string("invalid inline JSON: ") + e.what());
    }
  }
  return read_json_file(arg);
}

double parse_field_bound(const std::string &s) {
  if (s == "unbounded" || s == "inf")
    return kUnboundedField;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != s.size() || !(v > 0.0))
    throw InvalidArgument("--fmax must be a positive number or 'unbounded'");
  return v;
}

std::vector<double> parse_grid(const std::string &text, const std::string &flag) {
  // a:b:n
  const auto p1 = text.find(':');
  const auto p2 = text.find(':', p1 == std::string::npos ? p1 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw InvalidArgument(flag + " expects a:b:n");
  try {
    const double a = std::stod(text.substr(0, p1));
    const double b = std::stod(text.substr(p1 + 1, p2 - p1 - 1));
    const int n = std::stoi(text.substr(p2 + 1));
    if (n < 1)
      throw InvalidArgument(flag + ": n must be >= 1");
    return linspace(a, b, n);
  } catch (const std::logic_error &) {
    throw InvalidArgument(flag + " expects a:b:n");
  }
}

int resolve_threads(const std::string &flag) {
  std::string value = flag;
  if (value.empty()) {
    const char *env = std::getenv("QSL_THREADS");
    value = env ? env : "1";
  }
  if (value == "auto")
    return 0;
  try {
    const int n = std::stoi(value);
    if (n >= 1)
      return n;
  } catch (const std::exception &) {
  }
  throw InvalidArgument("--threads must be a positive integer or 'auto'");
}

void emit(const GlobalOptions &g, const std::string &text) {
  if (g.output.empty())
    std::cout << text;
  else
    write_text_file(g.output, text);
}

std::string want_format(const GlobalOptions &g, const std::string &fallback) {
  const std::string f = g.format.empty() ? fallback : g.format;
  if (f != "json" && f != "csv")
    throw InvalidArgument("--format must be json or csv");
  return f;
}

OptimizationConfig optimizer_options(const std::string &optimizer_json, int slices, int restarts,
                                     int max_iterations, const GlobalOptions &g) {
  OptimizationConfig c = optimizer_json.empty() ? OptimizationConfig{}
                                                : load_optimizer(parse_json_argument(optimizer_json));
  if (slices > 0)
    c.slice_count = slices;
  if (restarts > 0)
    c.restarts = restarts;
  if (max_iterations > 0)
    c.max_iterations = max_iterations;
  if (g.seed)
    c.rng_seed = *g.seed;
  return c;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quantum control speed-limit bounds and constrained GRAPE"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--output", g.output, "Write the result to this file instead of stdout");
  app.add_option("--threads", g.threads, "Worker threads (n or auto); falls back to QSL_THREADS");
  app.add_option("--format", g.format, "Output format: json or csv");

  std::string system_arg, gate_arg, fmax_arg = "unbounded", optimizer_arg;
  std::optional<double> tdec;
  double weight = 0.5;
  auto *bound = app.add_subcommand("bound", "Evaluate every lower bound for one target gate");
  bound->add_option("--system", system_arg, "System JSON file or inline JSON")->required();
  bound->add_option("--gate", gate_arg, "Gate name, JSON file or inline JSON")->required();
  bound->add_option("--fmax", fmax_arg, "Control amplitude bound or 'unbounded'")->required();
  bound->add_option("--tdec", tdec, "Decoherence time to compare the critical time against");
  bound->add_option("--weight", weight, "Weight of the drift bound in the combination");

  double omega = 1.0, tmin = 0.0, tmax = 4.0, total_time = 0.0;
  int steps = 41, resolution = 64, grid = 64;
  std::string formula = "combined";
  auto *volume = app.add_subcommand("volume", "Haar volume of provably unreachable SU(2) gates vs T");
  volume->add_option("--omega", omega)->required();
  volume->add_option("--fmax", fmax_arg)->required();
  volume->add_option("--tmin", tmin);
  volume->add_option("--tmax", tmax);
  volume->add_option("--steps", steps);
  volume->add_option("--resolution", resolution, "Grid points per Euler angle");

  auto *reachmap = app.add_subcommand("reachmap", "Provably unreachable single-qubit states at time T");
  reachmap->add_option("--T", total_time)->required();
  reachmap->add_option("--omega", omega)->required();
  reachmap->add_option("--fmax", fmax_arg)->required();
  reachmap->add_option("--grid", grid);
  reachmap->add_option("--formula", formula, "combined or alternative");

  int slices = 0, restarts = 0, max_iterations = 0;
  auto add_optimizer_flags = [&](CLI::App *sub) {
    sub->add_option("--system", system_arg)->required();
    sub->add_option("--gate", gate_arg)->required();
    sub->add_option("--slices", slices);
    sub->add_option("--restarts", restarts);
    sub->add_option("--max-iterations", max_iterations);
    sub->add_option("--optimizer", optimizer_arg, "Optimizer settings as JSON file or inline JSON");
  };
  auto *optimize_cmd = app.add_subcommand("optimize", "Run constrained GRAPE at a fixed time");
  add_optimizer_flags(optimize_cmd);
  optimize_cmd->add_option("--time", total_time)->required();
  optimize_cmd->add_option("--fmax", fmax_arg);

  double t_low = 0.0, t_high = 0.0;
  int points = 9;
  bool no_refine = false;
  auto *mintime = app.add_subcommand("mintime", "Scan T for the shortest converging GRAPE run");
  add_optimizer_flags(mintime);
  mintime->add_option("--fmax", fmax_arg);
  mintime->add_option("--tlow", t_low)->required();
  mintime->add_option("--thigh", t_high)->required();
  mintime->add_option("--points", points);
  mintime->add_flag("--no-refine", no_refine, "Skip bisection after the scan");

  std::string tgrid, fgrid;
  auto *sweep = app.add_subcommand("sweep", "GRAPE infidelity over a (T, f_max) grid");
  add_optimizer_flags(sweep);
  sweep->add_option("--tgrid", tgrid, "a:b:n")->required();
  sweep->add_option("--fgrid", fgrid, "a:b:n")->required();

  std::string recipe_name, overrides_arg, rerun_arg;
  auto *recipe = app.add_subcommand("recipe", "Run a canned figure reproduction");
  recipe->add_option("name", recipe_name, "fig1a, fig1b, fig2a, fig2a-inset or fig2b");
  recipe->add_option("--set", overrides_arg, "Parameter overrides as JSON file or inline JSON");
  recipe->add_option("--rerun", rerun_arg, "Re-run the config recorded in an envelope file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const int threads = resolve_threads(g.threads);

    if (*bound) {
      const auto system = load_system(parse_json_argument(system_arg));
      const auto gate = resolve_gate_argument(gate_arg, system.dim());
      BoundOptions options;
      options.weight = weight;
      options.decoherence_time = tdec;
      const auto report = combined_bound(system, gate, parse_field_bound(fmax_arg), options);
      if (want_format(g, "json") == "json") {
        emit(g, to_json(report).dump(2) + "\n");
      } else {
        CsvTable t({"c_drift", "c_control", "drift_bound", "field_bound", "combined_bound",
                    "max_bound", "critical_time_bound"});
        t.add_row(std::vector<double>{report.c_drift, report.c_control, report.drift_bound,
                                      report.field_bound, report.combined_bound, report.max_bound,
                                      report.critical_time});
        emit(g, t.str());
      }
    } else if (*volume) {
      const auto curve = unreachable_volume_curve(linspace(tmin, tmax, steps), omega,
                                                  parse_field_bound(fmax_arg),
                                                  {resolution, resolution, resolution}, threads);
      if (want_format(g, "csv") == "csv") {
        emit(g, to_csv(curve));
      } else {
        json out = json::array();
        for (const auto &v : curve)
          out.push_back({{"T", v.total_time}, {"V", v.value}});
        emit(g, out.dump(2) + "\n");
      }
    } else if (*reachmap) {
      if (formula != "combined" && formula != "alternative")
        throw InvalidArgument("--formula must be combined or alternative");
      const auto map = reachable_state_map(total_time, omega, parse_field_bound(fmax_arg), grid,
                                           formula == "combined" ? StateBoundFormula::combined
                                                                 : StateBoundFormula::alternative);
      emit(g, to_csv(map));
    } else if (*optimize_cmd || *mintime || *sweep) {
      const auto system = load_system(parse_json_argument(system_arg));
      const auto gate = resolve_gate_argument(gate_arg, system.dim());
      auto config = optimizer_options(optimizer_arg, slices, restarts, max_iterations, g);
      if (*optimize_cmd) {
        config.f_max = parse_field_bound(fmax_arg);
        const auto result = optimize(system, gate, total_time, config);
        json out = to_json(result);
        out["config"] = to_json(config);
        out["combined_bound"] = combined_bound(system, gate, config.f_max).combined_bound;
        emit(g, out.dump(2) + "\n");
        return kExitOk;
      }
      if (*mintime) {
        config.f_max = parse_field_bound(fmax_arg);
        MinTimeOptions options;
        options.refine = !no_refine;
        const auto estimate = min_time_search(system, gate, config, t_low, t_high, points, options);
        json out = to_json(estimate);
        out["combined_bound"] = combined_bound(system, gate, config.f_max).combined_bound;
        out["config"] = to_json(config);
        emit(g, out.dump(2) + "\n");
        return kExitOk;
      }
      const auto result = pareto_sweep(system, gate, parse_grid(tgrid, "--tgrid"),
                                       parse_grid(fgrid, "--fgrid"), config, threads);
      emit(g, to_csv(result));
    } else if (*recipe) {
      ResultEnvelope env;
      if (!rerun_arg.empty()) {
        env = rerun(read_json_file(rerun_arg), threads);
      } else {
        if (recipe_name.empty())
          throw InvalidArgument("recipe needs a name");
        ExperimentRecipe r{recipe_name,
                           overrides_arg.empty() ? json::object() : parse_json_argument(overrides_arg),
                           ""};
        if (g.seed)
          r.overrides["seed"] = *g.seed;
        env = run_recipe(r, threads);
      }
      if (want_format(g, "json") == "csv")
        emit(g, env.payload);
      else
        emit(g, to_json(env).dump(2) + "\n");
    }
  } catch (const NumericError &e) {
    std::cerr << "qsl: numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const InvalidArgument &e) {
    std::cerr << "qsl: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception &e) {
    std::cerr << "qsl: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "qsl: internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
