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
#include <optional>
#include <vector>

#include "qsl/speed_limit_bounds.h"

namespace qsl {

struct StepRule {
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
  int max_backtracks = 60;
  // Start each line search from the Barzilai-Borwein step instead of the
  // previously accepted step.
  bool barzilai_borwein = true;
};

struct OptimizationConfig {
  int slice_count = 128;
  double f_max = kUnboundedField;
  double threshold = 1e-7;
  int max_iterations = 2000;
  int restarts = 8;
  std::uint64_t rng_seed = 0;
  StepRule step;
  // Half-width of the random initial pulse when f_max is unbounded; defaults
  // to ||H0||_F / ||Hc||_F.
  std::optional<double> initial_amplitude;
  // A run stops early when the infidelity dropped by less than
  // stall_tolerance * eps over the last stall_window iterations.
  int stall_window = 100;
  double stall_tolerance = 1e-3;
};

void validate(const OptimizationConfig &config);

struct OptimizationResult {
  PulseSchedule best_pulse;
  double final_infidelity = 1.0;
  std::vector<double> infidelity_trace;
  bool converged = false;
  int restart_index = 0;
  int iterations = 0;
};

// 1 - |tr(U_g^dagger U)|^2 / d^2
double infidelity(const TargetGate &gate, const UnitaryOperator &achieved);
double infidelity(const TargetGate &gate, const ComplexMatrix &achieved);

// Infidelity of a piecewise-constant pulse and its exact derivative with
// respect to every amplitude.
class GrapeObjective {
 public:
  GrapeObjective(const ControlSystem &system, const TargetGate &gate, double slice_duration);

  double value(const std::vector<double> &amplitudes) const;
  double value_and_gradient(const std::vector<double> &amplitudes,
                            std::vector<double> &gradient) const;

  double slice_duration() const { return dt_; }
  Eigen::Index dim() const { return d_; }

 private:
  ComplexMatrix h0_;
  ComplexMatrix hc_;
  ComplexMatrix gate_adjoint_;
  double dt_;
  Eigen::Index d_;
};

std::vector<double> gradient(const ControlSystem &system, const TargetGate &gate,
                             const PulseSchedule &pulse);

// Seed of one independent run, derived from (seed, cell, restart).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t cell, std::uint64_t restart);

// Multi-restart projected gradient descent on the infidelity. `cell` selects
// the random stream so that sweep cells are independent of execution order.
OptimizationResult optimize(const ControlSystem &system, const TargetGate &gate,
                            double total_time, const OptimizationConfig &config,
                            std::uint64_t cell = 0);

// Single run from a given starting pulse (amplitudes are projected first).
OptimizationResult optimize_from(const ControlSystem &system, const TargetGate &gate,
                                 double total_time, const OptimizationConfig &config,
                                 std::vector<double> initial);

struct ScanRecord {
  double total_time = 0.0;
  bool converged = false;
  double infidelity = 1.0;
  bool bisection = false;
};

struct MinTimeEstimate {
  std::optional<double> t_star_upper;
  std::vector<ScanRecord> scan;
};

struct MinTimeOptions {
  bool refine = true;
  double bisection_tolerance = 1e-3;
};

MinTimeEstimate min_time_search(const ControlSystem &system, const TargetGate &gate,
                                const OptimizationConfig &config, double t_low, double t_high,
                                int scan_points, const MinTimeOptions &options = {});

struct ParetoSweep {
  std::vector<double> times;
  std::vector<double> field_bounds;
  // [i][j] for times[i], field_bounds[j]
  std::vector<std::vector<double>> infidelity;
  std::vector<std::vector<bool>> converged;
  // Smallest T allowed by the combined bound at each field_bounds[j].
  std::vector<double> boundary_time;
};

ParetoSweep pareto_sweep(const ControlSystem &system, const TargetGate &gate,
                         const std::vector<double> &times, const std::vector<double> &field_bounds,
                         const OptimizationConfig &config, int threads = 1);

}  // namespace qsl
