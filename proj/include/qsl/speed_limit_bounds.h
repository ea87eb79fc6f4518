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

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qsl/control_model.h"

namespace qsl {

inline constexpr double kUnboundedField = std::numeric_limits<double>::infinity();

class TargetGate {
 public:
  explicit TargetGate(UnitaryOperator u) : u_(std::move(u)) {}
  explicit TargetGate(ComplexMatrix m) : u_(std::move(m)) {}

  const UnitaryOperator &unitary() const { return u_; }
  const ComplexMatrix &matrix() const { return u_.matrix(); }
  Eigen::Index dim() const { return u_.dim(); }

 private:
  UnitaryOperator u_;
};

/// Eigenbasis of a Hermitian operator, with eigenvalues grouped into
/// degenerate blocks.
struct EigenbasisCache {
  RealVector eigenvalues;
  ComplexMatrix basis;  // columns are the eigenvectors
  double highest_abs_eigenvalue = 0.0;
  // Index ranges [begin, end) of (numerically) equal eigenvalues.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;

  bool degenerate() const { return blocks.size() < static_cast<std::size_t>(eigenvalues.size()); }
  Eigen::Index dim() const { return eigenvalues.size(); }
};

EigenbasisCache make_eigenbasis(const HermitianOperator &h);

// sqrt(2 (d - sum_j |<phi_j|U|phi_j>|)) / 2.
//
// Inside a degenerate block the sum over the block is replaced by |tr(P U P)|
// (P the block projector), which never exceeds the sum of diagonal moduli in
// any eigenbasis of that block. The result is therefore basis independent and
// at least as large as C evaluated in any particular eigenbasis.
double c_quantity(const TargetGate &gate, const EigenbasisCache &basis);

// Variant that uses the given columns literally, ignoring degeneracy.
double c_quantity_in_basis(const TargetGate &gate, const ComplexMatrix &basis);

// 2 C(U, Hc) / ||H0||_F
double drift_speed_limit(const ControlSystem &system, const TargetGate &gate);
// 2 C(U, H0) / (f_max ||Hc||_F); zero for an unbounded field.
double field_speed_limit(const ControlSystem &system, const TargetGate &gate, double f_max);

struct BoundOptions {
  // Convex weight of the drift bound; 0.5 gives the equal-weight combination.
  double weight = 0.5;
  std::optional<double> decoherence_time;
};

struct BoundReport {
  double c_drift = 0.0;    // C(U, H0)
  double c_control = 0.0;  // C(U, Hc)
  double drift_bound = 0.0;
  double field_bound = 0.0;
  double combined_bound = 0.0;
  double max_bound = 0.0;
  double f_max = 0.0;
  double weight = 0.5;
  double critical_time = 0.0;
  bool degenerate_drift_basis = false;
  bool degenerate_control_basis = false;
  std::optional<bool> decoherence_feasible;
};

BoundReport combined_bound(const ControlSystem &system, const TargetGate &gate, double f_max,
                           const BoundOptions &options = {});

// Precomputed eigenbases for evaluating many gates against one system.
class BoundEvaluator {
 public:
  explicit BoundEvaluator(const ControlSystem &system);

  BoundReport evaluate(const TargetGate &gate, double f_max,
                       const BoundOptions &options = {}) const;
  double combined(const TargetGate &gate, double f_max) const;

  const EigenbasisCache &drift_basis() const { return drift_basis_; }
  const EigenbasisCache &control_basis() const { return control_basis_; }
  double drift_norm() const { return drift_norm_; }
  double control_norm() const { return control_norm_; }

 private:
  EigenbasisCache drift_basis_;
  EigenbasisCache control_basis_;
  double drift_norm_;
  double control_norm_;
};

// True iff T - C(U,H0)/(f_max ||Hc||) >= C(U,Hc)/||H0||. False means the
// pair (T, f_max) provably cannot implement the gate.
bool pareto_region_test(const ControlSystem &system, const TargetGate &gate, double f_max,
                        double total_time);

// Boundary of the feasible region: the smallest T allowed at this f_max.
double pareto_boundary_time(const ControlSystem &system, const TargetGate &gate, double f_max);

// 1/(2|E0|) + 1/(2|f_max Ec|), a lower bound on the time after which every
// gate is reachable. +inf when either operator vanishes.
double critical_time_bound(const ControlSystem &system, double f_max);

// Gate diagonal in the computational basis with Re tr(U^dagger u_i) <= d/2
// for i = 1, 2. Requires even d.
TargetGate construct_hard_gate(const UnitaryOperator &u1, const UnitaryOperator &u2);

// identity, pauli-x, pauli-y, pauli-z, swap-ends
TargetGate named_gate(const std::string &name, Eigen::Index dim);
std::vector<std::string> named_gate_names();

}  // namespace qsl
