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

#include "qsl/speed_limit_bounds.h"

#include <limits>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsl {

namespace {

constexpr double kDegeneracyTolerance = 1e-9;

double c_from_overlap_sum(double overlap_sum, Eigen::Index d) {
  // The square root turns a rounding-level gap of ~1e-16 into ~1e-8, so
  // gaps at the level of accumulated rounding are treated as zero.
  const double dd = static_cast<double>(d);
  const double gap = dd - overlap_sum;
  if (gap <= 16.0 * dd * std::numeric_limits<double>::epsilon())
    return 0.0;
  return std::sqrt(2.0 * gap) / 2.0;
}

void check_same_dim(Eigen::Index a, Eigen::Index b, const char *what) {
  if (a != b)
    throw InvalidArgument(std::string(what) + ": dimension mismatch");
}

double checked_f_max(double f_max) {
  if (std::isnan(f_max) || !(f_max > 0.0))
    throw InvalidArgument("f_max must be positive");
  return f_max;
}

}  // namespace

EigenbasisCache make_eigenbasis(const HermitianOperator &h) {
  const auto spectrum = eigendecompose(h);
  EigenbasisCache cache;
  cache.eigenvalues = spectrum.eigenvalues;
  cache.basis = spectrum.eigenvectors;
  cache.highest_abs_eigenvalue = spectrum.eigenvalues.cwiseAbs().maxCoeff();

  const double tol = kDegeneracyTolerance * std::max(1.0, cache.highest_abs_eigenvalue);
  const Eigen::Index d = cache.eigenvalues.size();
  Eigen::Index begin = 0;
  for (Eigen::Index j = 1; j <= d; ++j) {
    if (j == d || cache.eigenvalues(j) - cache.eigenvalues(j - 1) > tol) {
      cache.blocks.emplace_back(begin, j);
      begin = j;
    }
  }
  return cache;
}

double c_quantity(const TargetGate &gate, const EigenbasisCache &basis) {
  check_same_dim(gate.dim(), basis.dim(), "c_quantity");
  const ComplexMatrix rotated = basis.basis.adjoint() * gate.matrix() * basis.basis;
  double overlap = 0.0;
  for (const auto &[begin, end] : basis.blocks) {
    complex block_trace = 0.0;
    for (Eigen::Index j = begin; j < end; ++j)
      block_trace += rotated(j, j);
    overlap += std::abs(block_trace);
  }
  return c_from_overlap_sum(overlap, gate.dim());
}

double c_quantity_in_basis(const TargetGate &gate, const ComplexMatrix &basis) {
  check_same_dim(gate.dim(), basis.rows(), "c_quantity_in_basis");
  double overlap = 0.0;
  for (Eigen::Index j = 0; j < basis.cols(); ++j)
    overlap += std::abs(basis.col(j).dot(gate.matrix() * basis.col(j)));
  return c_from_overlap_sum(overlap, gate.dim());
}

BoundEvaluator::BoundEvaluator(const ControlSystem &system)
    : drift_basis_(make_eigenbasis(system.drift())),
      control_basis_(make_eigenbasis(system.control())),
      drift_norm_(frobenius_norm(system.drift().matrix())),
      control_norm_(frobenius_norm(system.control().matrix())) {}

double BoundEvaluator::combined(const TargetGate &gate, double f_max) const {
  return evaluate(gate, f_max).combined_bound;
}

BoundReport BoundEvaluator::evaluate(const TargetGate &gate, double f_max,
                                     const BoundOptions &options) const {
  checked_f_max(f_max);
  if (!(options.weight >= 0.0 && options.weight <= 1.0))
    throw InvalidArgument("bound weight must lie in [0, 1]");
  if (drift_norm_ == 0.0)
    throw InvalidArgument("drift Hamiltonian vanishes; the drift bound is undefined");
  if (control_norm_ == 0.0)
    throw InvalidArgument("control Hamiltonian vanishes; the field bound is undefined");

  BoundReport r;
  r.f_max = f_max;
  r.weight = options.weight;
  r.c_control = c_quantity(gate, control_basis_);
  r.c_drift = c_quantity(gate, drift_basis_);
  r.degenerate_control_basis = control_basis_.degenerate();
  r.degenerate_drift_basis = drift_basis_.degenerate();
  r.drift_bound = 2.0 * r.c_control / drift_norm_;
  r.field_bound = std::isinf(f_max) ? 0.0 : 2.0 * r.c_drift / (f_max * control_norm_);
  r.combined_bound = options.weight * r.drift_bound + (1.0 - options.weight) * r.field_bound;
  r.max_bound = std::max(r.drift_bound, r.field_bound);

  const double e0 = drift_basis_.highest_abs_eigenvalue;
  const double ec = control_basis_.highest_abs_eigenvalue;
  r.critical_time = (e0 == 0.0 || ec == 0.0)
                        ? std::numeric_limits<double>::infinity()
                        : 1.0 / (2.0 * e0) + (std::isinf(f_max) ? 0.0 : 1.0 / (2.0 * f_max * ec));
  if (options.decoherence_time)
    r.decoherence_feasible = r.critical_time <= *options.decoherence_time;
  return r;
}

double drift_speed_limit(const ControlSystem &system, const TargetGate &gate) {
  check_same_dim(system.dim(), gate.dim(), "drift_speed_limit");
  const double norm = frobenius_norm(system.drift().matrix());
  if (norm == 0.0)
    throw InvalidArgument("drift Hamiltonian vanishes; the drift bound is undefined");
  return 2.0 * c_quantity(gate, make_eigenbasis(system.control())) / norm;
}

double field_speed_limit(const ControlSystem &system, const TargetGate &gate, double f_max) {
  check_same_dim(system.dim(), gate.dim(), "field_speed_limit");
  checked_f_max(f_max);
  const double norm = frobenius_norm(system.control().matrix());
  if (norm == 0.0)
    throw InvalidArgument("control Hamiltonian vanishes; the field bound is undefined");
  if (std::isinf(f_max))
    return 0.0;
  return 2.0 * c_quantity(gate, make_eigenbasis(system.drift())) / (f_max * norm);
}

BoundReport combined_bound(const ControlSystem &system, const TargetGate &gate, double f_max,
                           const BoundOptions &options) {
  check_same_dim(system.dim(), gate.dim(), "combined_bound");
  return BoundEvaluator(system).evaluate(gate, f_max, options);
}

double pareto_boundary_time(const ControlSystem &system, const TargetGate &gate, double f_max) {
  return combined_bound(system, gate, f_max).combined_bound;
}

bool pareto_region_test(const ControlSystem &system, const TargetGate &gate, double f_max,
                        double total_time) {
  if (!(total_time >= 0.0))
    throw InvalidArgument("total time must be nonnegative");
  const auto r = combined_bound(system, gate, f_max);
  return total_time - r.field_bound / 2.0 >= r.drift_bound / 2.0;
}

double critical_time_bound(const ControlSystem &system, double f_max) {
  checked_f_max(f_max);
  const double e0 = make_eigenbasis(system.drift()).highest_abs_eigenvalue;
  const double ec = make_eigenbasis(system.control()).highest_abs_eigenvalue;
  if (e0 == 0.0 || ec == 0.0)
    return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * e0) + (std::isinf(f_max) ? 0.0 : 1.0 / (2.0 * f_max * ec));
}

TargetGate construct_hard_gate(const UnitaryOperator &u1, const UnitaryOperator &u2) {
  check_same_dim(u1.dim(), u2.dim(), "construct_hard_gate");
  const Eigen::Index d = u1.dim();
  if (d % 2 != 0)
    throw InvalidArgument("construct_hard_gate requires an even dimension");
  // Eigenbasis of the gate: computational basis. Eigenphase lambda_j is chosen
  // so that cos(lambda_j + arg <j|u_i|j>) = 0 on alternating indices; with
  // 1-based j, even j cancel u1 and odd j cancel u2.
  Eigen::VectorXcd diag(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const bool even_one_based = (j + 1) % 2 == 0;
    const complex element = even_one_based ? u1.matrix()(j, j) : u2.matrix()(j, j);
    const double phase = std::arg(element);
    const double lambda = -phase + std::numbers::pi / 2.0;
    diag(j) = std::polar(1.0, -lambda);
  }
  return TargetGate(ComplexMatrix(diag.asDiagonal()));
}

TargetGate named_gate(const std::string &name, Eigen::Index dim) {
  if (dim < 2)
    throw InvalidArgument("gate dimension must be >= 2");
  if (name == "identity")
    return TargetGate(ComplexMatrix(ComplexMatrix::Identity(dim, dim)));
  if (name == "pauli-x" || name == "pauli-y" || name == "pauli-z") {
    if (dim != 2)
      throw InvalidArgument("gate '" + name + "' is only defined for d = 2");
    if (name == "pauli-x")
      return TargetGate(pauli::x());
    if (name == "pauli-y")
      return TargetGate(pauli::y());
    return TargetGate(pauli::z());
  }
  if (name == "swap-ends") {
    // exp(-i pi/2 (|1><N| + |N><1|))
    ComplexMatrix generator = ComplexMatrix::Zero(dim, dim);
    generator(0, dim - 1) = 1.0;
    generator(dim - 1, 0) = 1.0;
    return TargetGate(expm_hermitian_generator(HermitianOperator(generator), std::numbers::pi / 2.0));
  }
  throw InvalidArgument("unknown gate name '" + name + "'");
}

std::vector<std::string> named_gate_names() {
  return {"identity", "pauli-x", "pauli-y", "pauli-z", "swap-ends"};
}

}  // namespace qsl
