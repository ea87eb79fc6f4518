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

#include <optional>
#include <vector>

#include "qsl/operator_core.h"

namespace qsl {

/// Bilinear control system H(t) = H0 + f(t) Hc with a single scalar field.
class ControlSystem {
 public:
  ControlSystem(HermitianOperator drift, HermitianOperator control);

  const HermitianOperator &drift() const { return drift_; }
  const HermitianOperator &control() const { return control_; }
  Eigen::Index dim() const { return drift_.dim(); }

  ComplexMatrix hamiltonian(double amplitude) const;

 private:
  HermitianOperator drift_;
  HermitianOperator control_;
};

/// Piecewise-constant field: amplitude f_k held for slice_duration each.
class PulseSchedule {
 public:
  PulseSchedule(std::vector<double> amplitudes, double slice_duration,
                std::optional<double> amplitude_bound = std::nullopt);

  const std::vector<double> &amplitudes() const { return amplitudes_; }
  double slice_duration() const { return dt_; }
  std::size_t slice_count() const { return amplitudes_.size(); }
  double total_time() const { return dt_ * static_cast<double>(amplitudes_.size()); }
  // Integrated field alpha(T) = dt * sum f_k.
  double integrated_field() const;
  double max_abs_amplitude() const;
  const std::optional<double> &amplitude_bound() const { return bound_; }

 private:
  std::vector<double> amplitudes_;
  double dt_;
  std::optional<double> bound_;
};

struct LieClosureReport {
  int generated_dimension = 0;
  // d^2 - 1 when both generators are traceless, d^2 otherwise.
  int full_algebra_dimension = 0;
  int unitary_algebra_dimension = 0;          // dim u(d) = d^2
  int special_unitary_algebra_dimension = 0;  // dim su(d) = d^2 - 1
  bool traceless_generators = false;
  bool controllable = false;
  int depth_reached = 0;
};

// Product of slice exponentials, last slice leftmost.
UnitaryOperator propagate(const ControlSystem &system, const PulseSchedule &pulse);

// H0 = omega * sigma_x, Hc = sigma_z.
ControlSystem single_qubit_system(double omega);

// H0 = J sum_j (|j><j+1| + h.c.), Hc = |1><1|. With normalize the drift is
// rescaled so that ||H0||_F = |J|.
ControlSystem chain_system(int n_levels, double coupling, bool normalize = false);

int default_lie_depth(Eigen::Index dim);

LieClosureReport lie_rank(const ControlSystem &system, int max_depth);
LieClosureReport lie_rank(const ControlSystem &system);

}  // namespace qsl
