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

#include "qsl/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qsl {

namespace {

std::string join_messages(const std::vector<Diagnostic> &diagnostics) {
  std::string out;
  for (const auto &d : diagnostics) {
    if (!out.empty())
      out += "; ";
    out += (d.path.empty() ? std::string("/") : d.path) + ": " + d.message;
  }
  return out;
}

class Checker {
 public:
  explicit Checker(std::vector<Diagnostic> &sink) : sink_(sink) {}

  void fail(const std::string &path, const std::string &message) {
    sink_.push_back({path, message});
  }

  // Reads a finite number at obj[key]; records a diagnostic and returns
  // nullopt on a type error. Missing keys are not errors here.
  std::optional<double> number(const json &obj, const std::string &key, const std::string &path) {
    if (!obj.contains(key))
      return std::nullopt;
    const auto &v = obj.at(key);
    if (!v.is_number()) {
      fail(path + "/" + key, "expected a number");
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(path + "/" + key, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<long long> integer(const json &obj, const std::string &key,
                                   const std::string &path) {
    if (!obj.contains(key))
      return std::nullopt;
    const auto &v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(path + "/" + key, "expected an integer");
      return std::nullopt;
    }
    return v.get<long long>();
  }

  void reject_unknown(const json &obj, const std::vector<std::string> &allowed,
                      const std::string &path) {
    for (const auto &[key, _] : obj.items())
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        fail(path + "/" + key, "unknown key");
  }

 private:
  std::vector<Diagnostic> &sink_;
};

std::optional<ComplexMatrix> read_matrix(Checker &check, const json &doc, const std::string &path,
                                         std::optional<long long> dim_hint) {
  if (!doc.is_object() || !doc.contains("real")) {
    check.fail(path, "expected an object with a row-major \"real\" array (and optional \"imag\")");
    return std::nullopt;
  }
  auto read_array = [&](const char *key) -> std::optional<std::vector<double>> {
    const auto &a = doc.at(key);
    if (!a.is_array()) {
      check.fail(path + "/" + key, "expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_number() || !std::isfinite(a[i].get<double>())) {
        check.fail(path + "/" + key + "/" + std::to_string(i), "expected a finite number");
        return std::nullopt;
      }
      out.push_back(a[i].get<double>());
    }
    return out;
  };
  const auto re = read_array("real");
  if (!re)
    return std::nullopt;
  std::vector<double> im(re->size(), 0.0);
  if (doc.contains("imag")) {
    auto parsed = read_array("imag");
    if (!parsed)
      return std::nullopt;
    if (parsed->size() != re->size()) {
      check.fail(path + "/imag", "must have the same length as \"real\"");
      return std::nullopt;
    }
    im = std::move(*parsed);
  }
  const auto n = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(re->size()))));
  if (n * n != static_cast<long long>(re->size()) || n < 2) {
    check.fail(path + "/real", "length must be d*d with d >= 2");
    return std::nullopt;
  }
  if (dim_hint && *dim_hint != n) {
    check.fail(path + "/real", "length does not match \"dim\"");
    return std::nullopt;
  }
  ComplexMatrix m(n, n);
  for (long long r = 0; r < n; ++r)
    for (long long c = 0; c < n; ++c)
      m(r, c) = complex((*re)[r * n + c], im[r * n + c]);
  return m;
}

json validate_system(Checker &check, const json &doc, const std::string &path) {
  json out = json::object();
  if (!doc.is_object()) {
    check.fail(path, "system must be an object");
    return out;
  }
  if (!doc.contains("kind") || !doc.at("kind").is_string()) {
    check.fail(path + "/kind", "expected one of \"single_qubit\", \"chain\", \"custom\"");
    return out;
  }
  const std::string kind = doc.at("kind").get<std::string>();
  out["kind"] = kind;
  if (kind == "single_qubit") {
    check.reject_unknown(doc, {"kind", "omega"}, path);
    const double omega = check.number(doc, "omega", path).value_or(doc.contains("omega") ? 0.0 : 1.0);
    if (doc.contains("omega") && omega == 0.0 && doc.at("omega").is_number())
      check.fail(path + "/omega",
                 "omega must be nonzero: without drift the qubit is not controllable");
    out["omega"] = omega;
  } else if (kind == "chain") {
    check.reject_unknown(doc, {"kind", "n_levels", "coupling", "normalize"}, path);
    const auto n = check.integer(doc, "n_levels", path).value_or(4);
    if (n < 2)
      check.fail(path + "/n_levels", "chain needs at least 2 levels");
    const double j = check.number(doc, "coupling", path).value_or(1.0);
    if (j == 0.0)
      check.fail(path + "/coupling", "coupling must be nonzero");
    bool normalize = false;
    if (doc.contains("normalize")) {
      if (!doc.at("normalize").is_boolean())
        check.fail(path + "/normalize", "expected a boolean");
      else
        normalize = doc.at("normalize").get<bool>();
    }
    out["n_levels"] = n;
    out["coupling"] = j;
    out["normalize"] = normalize;
  } else if (kind == "custom") {
    check.reject_unknown(doc, {"kind", "dim", "drift", "control"}, path);
    const auto dim = check.integer(doc, "dim", path);
    std::optional<ComplexMatrix> ops[2];
    const char *names[2] = {"drift", "control"};
    for (int k = 0; k < 2; ++k) {
      const std::string sub = path + "/" + names[k];
      if (!doc.contains(names[k])) {
        check.fail(sub, "missing operator");
        continue;
      }
      ops[k] = read_matrix(check, doc.at(names[k]), sub, dim);
      if (!ops[k])
        continue;
      const double defect = hermiticity_defect(*ops[k]);
      if (defect > kHermitianTolerance) {
        check.fail(sub, "operator is not Hermitian (relative defect " + format_number(defect) + ")");
        ops[k].reset();
        continue;
      }
      out[names[k]] = matrix_to_json(*ops[k]);
    }
    if (ops[0] && ops[1] && ops[0]->rows() != ops[1]->rows())
      check.fail(path, "drift and control dimensions differ");
    if (ops[0])
      out["dim"] = ops[0]->rows();
  } else {
    check.fail(path + "/kind", "unknown system kind '" + kind + "'");
  }
  return out;
}

// Messages from the library validators start with the offending field name.
std::string field_path(const std::string &base, const std::string &message, const json &doc) {
  const std::string key = message.substr(0, message.find(' '));
  return doc.is_object() && doc.contains(key) ? base + "/" + key : base;
}

json validate_gate(Checker &check, const json &doc, const std::string &path) {
  if (doc.is_string()) {
    const auto names = named_gate_names();
    if (std::find(names.begin(), names.end(), doc.get<std::string>()) == names.end())
      check.fail(path, "unknown gate name '" + doc.get<std::string>() + "'");
    return doc;
  }
  if (!doc.is_object()) {
    check.fail(path, "gate must be a name or an object");
    return doc;
  }
  if (doc.contains("name"))
    return validate_gate(check, doc.at("name"), path + "/name");
  if (doc.contains("euler")) {
    const auto &e = doc.at("euler");
    const std::string sub = path + "/euler";
    if (!e.is_object()) {
      check.fail(sub, "expected {\"alpha\", \"beta\", \"gamma\"}");
      return doc;
    }
    EulerAngles a{check.number(e, "alpha", sub).value_or(0.0),
                  check.number(e, "beta", sub).value_or(0.0),
                  check.number(e, "gamma", sub).value_or(0.0)};
    try {
      check_euler_range(a);
    } catch (const InvalidArgument &err) {
      check.fail(field_path(sub, err.what(), e), err.what());
    }
    return json{{"euler", {{"alpha", a.alpha}, {"beta", a.beta}, {"gamma", a.gamma}}}};
  }
  const auto m = read_matrix(check, doc, path, std::nullopt);
  if (m) {
    const double defect = unitarity_defect(*m);
    if (!(defect <= kUnitaryTolerance * static_cast<double>(m->rows())))
      check.fail(path, "gate is not unitary (defect " + format_number(defect) + ")");
    return matrix_to_json(*m);
  }
  return doc;
}

// The field bound lives at the top level of a run document, not in here.
json optimizer_json(const OptimizationConfig &c) {
  json j = to_json(c);
  j.erase("f_max");
  return j;
}

json validate_optimizer(Checker &check, const json &doc, const std::string &path) {
  OptimizationConfig c;
  if (!doc.is_object()) {
    check.fail(path, "optimizer must be an object");
    return optimizer_json(c);
  }
  check.reject_unknown(doc, {"slice_count", "threshold", "max_iterations", "restarts", "seed",
                             "initial_step", "backtrack_factor", "max_backtracks",
                             "barzilai_borwein", "initial_amplitude", "stall_window",
                             "stall_tolerance"},
                       path);
  c.slice_count = static_cast<int>(check.integer(doc, "slice_count", path).value_or(c.slice_count));
  c.threshold = check.number(doc, "threshold", path).value_or(c.threshold);
  c.max_iterations =
      static_cast<int>(check.integer(doc, "max_iterations", path).value_or(c.max_iterations));
  c.restarts = static_cast<int>(check.integer(doc, "restarts", path).value_or(c.restarts));
  if (auto seed = check.integer(doc, "seed", path)) {
    if (*seed < 0)
      check.fail(path + "/seed", "seed must be nonnegative");
    c.rng_seed = static_cast<std::uint64_t>(*seed);
  }
  c.step.initial_step = check.number(doc, "initial_step", path).value_or(c.step.initial_step);
  c.step.backtrack_factor =
      check.number(doc, "backtrack_factor", path).value_or(c.step.backtrack_factor);
  c.step.max_backtracks =
      static_cast<int>(check.integer(doc, "max_backtracks", path).value_or(c.step.max_backtracks));
  if (doc.contains("barzilai_borwein")) {
    if (doc.at("barzilai_borwein").is_boolean())
      c.step.barzilai_borwein = doc.at("barzilai_borwein").get<bool>();
    else
      check.fail(path + "/barzilai_borwein", "expected a boolean");
  }
  if (auto a = check.number(doc, "initial_amplitude", path))
    c.initial_amplitude = *a;
  c.stall_window = static_cast<int>(check.integer(doc, "stall_window", path).value_or(c.stall_window));
  c.stall_tolerance = check.number(doc, "stall_tolerance", path).value_or(c.stall_tolerance);
  try {
    validate(c);
  } catch (const InvalidArgument &err) {
    check.fail(field_path(path, err.what(), doc), err.what());
  }
  return optimizer_json(c);
}

// "unbounded", "inf" or a positive number.
json validate_field_bound(Checker &check, const json &doc, const std::string &path) {
  if (doc.is_string()) {
    const auto s = doc.get<std::string>();
    if (s == "unbounded" || s == "inf")
      return "unbounded";
    check.fail(path, "expected a positive number or \"unbounded\"");
    return doc;
  }
  if (!doc.is_number() || !(doc.get<double>() > 0.0)) {
    check.fail(path, "field amplitude bound must be positive");
    return doc;
  }
  return doc;
}

double field_bound_value(const json &resolved) {
  return resolved.is_string() ? kUnboundedField : resolved.get<double>();
}

}  // namespace

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : InvalidArgument(join_messages(diagnostics)), diagnostics_(std::move(diagnostics)) {}

ConfigError::ConfigError(std::string path, std::string message)
    : ConfigError(std::vector<Diagnostic>{{std::move(path), std::move(message)}}) {}

ValidationResult validate_config(const json &document) {
  ValidationResult result;
  Checker check(result.diagnostics);
  if (document.is_object() && document.contains("kind")) {
    result.resolved = validate_system(check, document, "");
    return result;
  }
  if (!document.is_object()) {
    check.fail("", "expected a JSON object");
    return result;
  }
  check.reject_unknown(document, {"system", "gate", "f_max", "tdec", "optimizer"}, "");
  json out = json::object();
  if (document.contains("system"))
    out["system"] = validate_system(check, document.at("system"), "/system");
  else
    check.fail("/system", "missing system");
  if (document.contains("gate"))
    out["gate"] = validate_gate(check, document.at("gate"), "/gate");
  out["f_max"] = document.contains("f_max")
                     ? validate_field_bound(check, document.at("f_max"), "/f_max")
                     : json("unbounded");
  if (auto tdec = check.number(document, "tdec", "")) {
    if (!(*tdec > 0.0))
      check.fail("/tdec", "decoherence time must be positive");
    out["tdec"] = *tdec;
  }
  out["optimizer"] = validate_optimizer(
      check, document.contains("optimizer") ? document.at("optimizer") : json::object(),
      "/optimizer");
  result.resolved = std::move(out);
  return result;
}

ControlSystem load_system(const json &document) {
  std::vector<Diagnostic> diagnostics;
  Checker check(diagnostics);
  const json r = validate_system(check, document, "");
  if (!diagnostics.empty())
    throw ConfigError(std::move(diagnostics));
  const std::string kind = r.at("kind");
  if (kind == "single_qubit")
    return single_qubit_system(r.at("omega").get<double>());
  if (kind == "chain")
    return chain_system(r.at("n_levels").get<int>(), r.at("coupling").get<double>(),
                        r.at("normalize").get<bool>());
  std::vector<Diagnostic> unused;
  Checker again(unused);
  auto drift = read_matrix(again, r.at("drift"), "/drift", std::nullopt);
  auto control = read_matrix(again, r.at("control"), "/control", std::nullopt);
  return ControlSystem(HermitianOperator(std::move(*drift)), HermitianOperator(std::move(*control)));
}

TargetGate load_gate(const json &document, Eigen::Index dim) {
  std::vector<Diagnostic> diagnostics;
  Checker check(diagnostics);
  const json r = validate_gate(check, document, "");
  if (!diagnostics.empty())
    throw ConfigError(std::move(diagnostics));
  if (r.is_string())
    return named_gate(r.get<std::string>(), dim);
  if (r.contains("euler")) {
    if (dim != 2)
      throw ConfigError("/euler", "Euler-angle gates require d = 2");
    const auto &e = r.at("euler");
    return TargetGate(euler_to_unitary({e.at("alpha"), e.at("beta"), e.at("gamma")}));
  }
  std::vector<Diagnostic> unused;
  Checker again(unused);
  auto m = read_matrix(again, r, "", std::nullopt);
  if (m->rows() != dim)
    throw ConfigError("", "gate dimension does not match the system");
  return TargetGate(std::move(*m));
}

OptimizationConfig load_optimizer(const json &document) {
  std::vector<Diagnostic> diagnostics;
  Checker check(diagnostics);
  const json r = validate_optimizer(check, document, "");
  if (!diagnostics.empty())
    throw ConfigError(std::move(diagnostics));
  OptimizationConfig c;
  c.slice_count = r.at("slice_count");
  c.threshold = r.at("threshold");
  c.max_iterations = r.at("max_iterations");
  c.restarts = r.at("restarts");
  c.rng_seed = r.at("seed");
  c.step.initial_step = r.at("initial_step");
  c.step.backtrack_factor = r.at("backtrack_factor");
  c.step.max_backtracks = r.at("max_backtracks");
  c.step.barzilai_borwein = r.at("barzilai_borwein");
  if (r.contains("initial_amplitude"))
    c.initial_amplitude = r.at("initial_amplitude").get<double>();
  c.stall_window = r.at("stall_window");
  c.stall_tolerance = r.at("stall_tolerance");
  if (r.contains("f_max"))
    c.f_max = field_bound_value(r.at("f_max"));
  return c;
}

json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidArgument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

TargetGate resolve_gate_argument(const std::string &argument, Eigen::Index dim) {
  const auto names = named_gate_names();
  if (std::find(names.begin(), names.end(), argument) != names.end())
    return named_gate(argument, dim);
  const auto first = argument.find_first_not_of(" \t\n");
  if (first != std::string::npos && argument[first] == '{')
    return load_gate(json::parse(argument), dim);
  return load_gate(read_json_file(argument), dim);
}

json matrix_to_json(const ComplexMatrix &m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return json{{"real", re}, {"imag", im}};
}

namespace {

json number_or_unbounded(double x) {
  return std::isinf(x) ? json("unbounded") : json(x);
}

}  // namespace

json to_json(const BoundReport &r) {
  json j{{"c_drift", r.c_drift},
         {"c_control", r.c_control},
         {"drift_bound", r.drift_bound},
         {"field_bound", r.field_bound},
         {"combined_bound", r.combined_bound},
         {"max_bound", r.max_bound},
         {"f_max", number_or_unbounded(r.f_max)},
         {"weight", r.weight},
         {"critical_time_bound", number_or_unbounded(r.critical_time)},
         {"degenerate_drift_basis", r.degenerate_drift_basis},
         {"degenerate_control_basis", r.degenerate_control_basis}};
  j["decoherence_feasible"] = r.decoherence_feasible ? json(*r.decoherence_feasible) : json(nullptr);
  return j;
}

json to_json(const OptimizationConfig &c) {
  json j{{"slice_count", c.slice_count},
         {"f_max", number_or_unbounded(c.f_max)},
         {"threshold", c.threshold},
         {"max_iterations", c.max_iterations},
         {"restarts", c.restarts},
         {"seed", c.rng_seed},
         {"initial_step", c.step.initial_step},
         {"backtrack_factor", c.step.backtrack_factor},
         {"max_backtracks", c.step.max_backtracks},
         {"barzilai_borwein", c.step.barzilai_borwein},
         {"stall_window", c.stall_window},
         {"stall_tolerance", c.stall_tolerance}};
  if (c.initial_amplitude)
    j["initial_amplitude"] = *c.initial_amplitude;
  return j;
}

json to_json(const OptimizationResult &r) {
  return json{{"converged", r.converged},
              {"final_infidelity", r.final_infidelity},
              {"restart_index", r.restart_index},
              {"iterations", r.iterations},
              {"total_time", r.best_pulse.total_time()},
              {"slice_duration", r.best_pulse.slice_duration()},
              {"max_abs_amplitude", r.best_pulse.max_abs_amplitude()},
              {"amplitudes", r.best_pulse.amplitudes()},
              {"infidelity_trace", r.infidelity_trace}};
}

json to_json(const MinTimeEstimate &e) {
  json scan = json::array();
  for (const auto &s : e.scan)
    scan.push_back({{"total_time", s.total_time},
                    {"converged", s.converged},
                    {"infidelity", s.infidelity},
                    {"bisection", s.bisection}});
  return json{{"t_star_upper", e.t_star_upper ? json(*e.t_star_upper) : json(nullptr)},
              {"scan", scan}};
}

std::string format_number(double value) {
  if (std::isnan(value))
    return "nan";
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double> &values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values)
    cells.push_back(format_number(v));
  add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string> &cells) {
  if (cells.size() != header_.size())
    throw InvalidArgument("CSV row width does not match the header");
  rows_.push_back(cells);
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i)
        out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto &r : rows_)
    line(r);
  return out;
}

std::string to_csv(const ReachabilityMap &map) {
  CsvTable t({"gamma", "alpha", "reachable"});
  for (std::size_t i = 0; i < map.gammas.size(); ++i)
    for (std::size_t j = 0; j < map.alphas.size(); ++j)
      t.add_row(std::vector<std::string>{format_number(map.gammas[i]), format_number(map.alphas[j]),
                                         map.reachable[i][j] ? "1" : "0"});
  return t.str();
}

std::string to_csv(const std::vector<VolumeEstimate> &curve) {
  CsvTable t({"T", "V"});
  for (const auto &v : curve)
    t.add_row(std::vector<double>{v.total_time, v.value});
  return t.str();
}

std::string to_csv(const ParetoSweep &s) {
  CsvTable t({"T", "f_max", "infidelity", "converged", "boundary_T", "pareto_feasible"});
  for (std::size_t i = 0; i < s.times.size(); ++i)
    for (std::size_t j = 0; j < s.field_bounds.size(); ++j)
      t.add_row(std::vector<std::string>{
          format_number(s.times[i]), format_number(s.field_bounds[j]),
          format_number(s.infidelity[i][j]), s.converged[i][j] ? "1" : "0",
          format_number(s.boundary_time[j]), s.times[i] >= s.boundary_time[j] ? "1" : "0"});
  return t.str();
}

}  // namespace qsl
