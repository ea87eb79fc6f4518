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

#include <gtest/gtest.h>

#include <clocale>
#include <sstream>

#include "qsl/recipes.h"

namespace qsl {
namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ','))
      cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

void expect_rectangular(const std::string &csv) {
  const auto rows = parse_csv(csv);
  ASSERT_GE(rows.size(), 2u);
  for (const auto &r : rows)
    EXPECT_EQ(r.size(), rows.front().size());
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (const auto &c : rows[i])
      EXPECT_EQ(c.find_first_of(" ;"), std::string::npos) << c;
}

bool mentions(const std::vector<Diagnostic> &ds, const std::string &path, const std::string &word) {
  for (const auto &d : ds)
    if (d.path == path && d.message.find(word) != std::string::npos)
      return true;
  return false;
}

TEST(ValidateConfig, MinimalSingleQubit) {
  const auto r = validate_config(json::parse(R"({"kind":"single_qubit","omega":1})"));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.resolved.at("kind"), "single_qubit");
  EXPECT_EQ(r.resolved.at("omega"), 1.0);
}

TEST(ValidateConfig, ZeroOmegaCitesControllability) {
  const auto r = validate_config(json::parse(R"({"kind":"single_qubit","omega":0})"));
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r.diagnostics, "/omega", "controllable"));
}

TEST(ValidateConfig, NonHermitianCustomRejected) {
  json doc = {{"kind", "custom"},
              {"dim", 2},
              {"drift", {{"real", {0.0, 1.0, 1.001, 0.0}}, {"imag", {0.0, 0.0, 0.0, 0.0}}}},
              {"control", {{"real", {1.0, 0.0, 0.0, -1.0}}, {"imag", {0.0, 0.0, 0.0, 0.0}}}}};
  const auto r = validate_config(doc);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics.front().path, "/drift");
  EXPECT_THROW(load_system(doc), ConfigError);
  doc["drift"]["real"] = {0.0, 1.0, 1.0, 0.0};
  EXPECT_TRUE(validate_config(doc).ok());
  EXPECT_EQ(load_system(doc).dim(), 2);
}

TEST(ValidateConfig, RunDocument) {
  const auto r = validate_config(json::parse(R"({
    "system": {"kind": "chain", "n_levels": 4, "normalize": true},
    "gate": "swap-ends", "f_max": 2, "optimizer": {"restarts": 3}})"));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.resolved.at("optimizer").at("restarts"), 3);
  EXPECT_EQ(r.resolved.at("optimizer").at("slice_count"), 128);
}

TEST(ValidateConfig, ReportsEveryViolationWithPath) {
  const auto r = validate_config(json::parse(R"({
    "system": {"kind": "single_qubit", "omega": 1},
    "gate": {"euler": {"alpha": 1, "beta": 0, "gamma": 4}},
    "f_max": -1, "bogus": true, "optimizer": {"slice_count": 0}})"));
  EXPECT_TRUE(mentions(r.diagnostics, "/gate/euler/gamma", ""));
  EXPECT_TRUE(mentions(r.diagnostics, "/f_max", ""));
  EXPECT_TRUE(mentions(r.diagnostics, "/bogus", ""));
  EXPECT_TRUE(mentions(r.diagnostics, "/optimizer/slice_count", ""));
}

TEST(LoadGate, Forms) {
  EXPECT_LT((load_gate("pauli-y", 2).matrix() - pauli::y()).norm(), 1e-15);
  const auto e = load_gate(json::parse(R"({"euler":{"alpha":0,"beta":0,"gamma":3.141592653589793}})"), 2);
  EXPECT_NEAR(std::abs(e.matrix()(1, 0)), 1.0, 1e-15);
  EXPECT_THROW(load_gate(json::parse(R"({"real":[1,0,0,2],"imag":[0,0,0,0]})"), 2), ConfigError);
  EXPECT_THROW(resolve_gate_argument("no-such-gate-or-file", 2), InvalidArgument);
}

TEST(Csv, LocaleIndependentNumbers) {
  const char *old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1234567.0), "1234567");
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST(Csv, TableRejectsRaggedRows) {
  CsvTable t({"a", "b"});
  EXPECT_THROW(t.add_row(std::vector<double>{1.0}), InvalidArgument);
  t.add_row(std::vector<double>{1.0, 2.5});
  EXPECT_EQ(t.str(), "a,b\n1,2.5\n");
}

TEST(Csv, PayloadsAreRectangular) {
  expect_rectangular(to_csv(reachable_state_map(0.53, 1.0, 1.0, 16)));
  expect_rectangular(to_csv(unreachable_volume_curve({0.0, 1.0}, 1.0, 1.0, {8, 8, 8})));
}

TEST(Recipes, NamesAndUnknown) {
  EXPECT_EQ(recipe_names().size(), 5u);
  EXPECT_THROW(run_recipe({"fig9", {}, ""}), ConfigError);
  EXPECT_THROW(resolve_recipe({"fig1a", {{"colour", 1}}, ""}), ConfigError);
  EXPECT_THROW(resolve_recipe({"fig1a", {{"grid", "big"}}, ""}), ConfigError);
}

TEST(Recipes, DefaultsCarryFigureParameters) {
  const auto a = recipe_defaults("fig1a");
  EXPECT_EQ(a.at("omega"), 1.0);
  EXPECT_EQ(a.at("f_max"), 1.0);
  EXPECT_EQ(a.at("seed"), 0);
  EXPECT_EQ(recipe_defaults("fig1b").at("ratios"), json({10.0, 2.0, 1.0, 0.5, 0.25}));
  EXPECT_EQ(recipe_defaults("fig2a-inset").at("n_levels"), 4);
  EXPECT_EQ(recipe_defaults("fig2b").at("omega"), 1.0);
}

TEST(Recipes, Fig1bHasFiveCurves) {
  const auto env = run_recipe({"fig1b", {{"resolution", 8}, {"steps", 5}}, ""});
  EXPECT_EQ(env.payload_format, "csv");
  const auto rows = parse_csv(env.payload);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows.front().size(), 6u);
  EXPECT_EQ(rows.front()[1], "ratio_10");
  expect_rectangular(env.payload);
}

TEST(Recipes, EnvelopeRoundTrip) {
  const auto env = run_recipe({"fig1a", {{"grid", 16}, {"T", 0.6}}, ""});
  const json j = to_json(env);
  EXPECT_EQ(j.at("version"), kVersion);
  EXPECT_EQ(j.at("config").at("grid"), 16);
  EXPECT_EQ(rerun(json::parse(j.dump())).payload, env.payload);
}

TEST(Recipes, SweepRoundTripIsBitIdentical) {
  const json overrides = {{"tsteps", 2}, {"fsteps", 2}, {"tmin", 1.0}, {"tmax", 2.6},
                          {"fmin", 0.5}, {"fmax", 1.0}, {"seed", 9},
                          {"optimizer", {{"slice_count", 32}, {"restarts", 1}, {"max_iterations", 300}}}};
  const auto env = run_recipe({"fig2b", overrides, ""}, 2);
  expect_rectangular(env.payload);
  EXPECT_EQ(env.seed, 9u);
  EXPECT_EQ(rerun(to_json(env), 1).payload, env.payload);
}

}  // namespace
}  // namespace qsl
