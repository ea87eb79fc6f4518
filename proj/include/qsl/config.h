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

#include <string>
#include <vector>

#include <json.hpp>

#include "qsl/grape.h"
#include "qsl/su2_tools.h"

namespace qsl {

using json = nlohmann::json;

struct Diagnostic {
  std::string path;  // JSON pointer into the document
  std::string message;
};

class ConfigError : public InvalidArgument {
 public:
  explicit ConfigError(std::vector<Diagnostic> diagnostics);
  ConfigError(std::string path, std::string message);
  const std::vector<Diagnostic> &diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct ValidationResult {
  json resolved;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

// Schema check plus defaults. Accepts either a system document
//   {"kind": "single_qubit" | "chain" | "custom", ...}
// or a run document
//   {"system": {...}, "gate": ..., "f_max": r | "unbounded", "tdec": r,
//    "optimizer": {...}}.
ValidationResult validate_config(const json &document);

// Each of these throws ConfigError listing every violation.
ControlSystem load_system(const json &document);
TargetGate load_gate(const json &document, Eigen::Index dim);
OptimizationConfig load_optimizer(const json &document);

// Bare gate names go through named_gate(); anything else is read as JSON
// text or as the path of a JSON file.
TargetGate resolve_gate_argument(const std::string &argument, Eigen::Index dim);
json read_json_file(const std::string &path);

json to_json(const BoundReport &report);
json to_json(const OptimizationResult &result);
json to_json(const MinTimeEstimate &estimate);
json to_json(const OptimizationConfig &config);
json matrix_to_json(const ComplexMatrix &m);

// Shortest round-trip decimal, independent of the C locale.
std::string format_number(double value);

// Rectangular CSV with a header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<double> &values);
  void add_row(const std::vector<std::string> &cells);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string to_csv(const ReachabilityMap &map);
std::string to_csv(const std::vector<VolumeEstimate> &curve);
std::string to_csv(const ParetoSweep &sweep);

}  // namespace qsl
