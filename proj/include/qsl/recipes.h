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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsl/config.h"

namespace qsl {

inline constexpr const char *kVersion = "0.1.0";

// Canned reproductions: fig1a (reachability map), fig1b (volume curves),
// fig2a (single-qubit minimum time vs drift strength), fig2a-inset (4-level
// chain SWAP), fig2b (T x f_max infidelity map).
struct ExperimentRecipe {
  std::string name;
  json overrides = json::object();
  std::string output_path;  // empty: do not write
};

struct ResultEnvelope {
  std::string version;
  json config;  // fully resolved, includes "recipe" and "seed"
  std::uint64_t seed = 0;
  std::string timestamp;  // UTC, ISO 8601
  std::string payload_format;  // "csv" or "json"
  std::string payload;
};

std::vector<std::string> recipe_names();
json recipe_defaults(const std::string &name);

// Defaults merged with the overrides; throws ConfigError on unknown keys or
// mismatched types.
json resolve_recipe(const ExperimentRecipe &recipe);

ResultEnvelope run_recipe(const ExperimentRecipe &recipe, int threads = 1);

// Re-runs the recipe recorded in an envelope's resolved config.
ResultEnvelope rerun(const json &envelope, int threads = 1);

json to_json(const ResultEnvelope &envelope);
void write_text_file(const std::string &path, const std::string &text);
std::string utc_timestamp();

std::vector<double> linspace(double lo, double hi, int count);

}  // namespace qsl
