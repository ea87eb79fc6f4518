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

#include "qsl/control_model.h"

#include <algorithm>
#include <cmath>

namespace qsl {

ControlSystem::ControlSystem(HermitianOperator drift, HermitianOperator control)
    : drift_(std::move(drift)), control_(std::move(control)) {
  if (drift_.dim() != control_.dim())
    throw InvalidArgument("drift and control dimensions differ");
}

ComplexMatrix ControlSystem::hamiltonian(double amplitude) const {
  return drift_.matrix() + amplitude * control_.matrix();
}

PulseSchedule::PulseSchedule(std::vector<double> amplitudes, double slice_duration,
                             std::optional<double> amplitude_bound)
    : amplitudes_(std::move(amplitudes)), dt_(slice_duration), bound_(amplitude_bound) {
  if (amplitudes_.empty())
    throw InvalidArgument("pulse must contain at least one slice");
  if (!(dt_ > 0.0) || !std::isfinite(dt_))
    throw InvalidArgument("slice duration must be positive and finite");
  for (double f : amplitudes_)
    if (!std::isfinite(f))
      throw InvalidArgument("pulse amplitude is not finite");
  if (bound_) {
    if (!(*bound_ > 0.0))
      throw InvalidArgument("amplitude bound must be positive");
    if (max_abs_amplitude() > *bound_)
      throw InvalidArgument("pulse amplitude exceeds its bound");
  }
}

double PulseSchedule::integrated_field() const {
  double sum = 0.0;
  for (double f : amplitudes_)
    sum += f;
  return dt_ * sum;
}

double PulseSchedule::max_abs_amplitude() const {
  double m = 0.0;
  for (double f : amplitudes_)
    m = std::max(m, std::abs(f));
  return m;
}

UnitaryOperator propagate(const ControlSystem &system, const PulseSchedule &pulse) {
  const auto d = system.dim();
  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  for (double f : pulse.amplitudes()) {
    const auto spectrum = eigendecompose(HermitianOperator(system.hamiltonian(f)));
    u = expm_from_spectrum(spectrum, pulse.slice_duration()) * u;
  }
  return UnitaryOperator(std::move(u));
}

ControlSystem single_qubit_system(double omega) {
  if (omega == 0.0 || !std::isfinite(omega))
    throw InvalidArgument("single qubit drift strength must be nonzero: with omega = 0 the "
                          "system is not controllable");
  return ControlSystem(HermitianOperator(omega * pauli::x()), HermitianOperator(pauli::z()));
}

ControlSystem chain_system(int n_levels, double coupling, bool normalize) {
  if (n_levels < 2)
    throw InvalidArgument("chain needs at least 2 levels");
  if (coupling == 0.0 || !std::isfinite(coupling))
    throw InvalidArgument("chain coupling must be nonzero");
  ComplexMatrix h0 = ComplexMatrix::Zero(n_levels, n_levels);
  for (int j = 0; j + 1 < n_levels; ++j) {
    h0(j, j + 1) = coupling;
    h0(j + 1, j) = coupling;
  }
  if (normalize)
    h0 *= std::abs(coupling) / h0.norm();
  ComplexMatrix hc = ComplexMatrix::Zero(n_levels, n_levels);
  hc(0, 0) = 1.0;
  return ControlSystem(HermitianOperator(std::move(h0)), HermitianOperator(std::move(hc)));
}

int default_lie_depth(Eigen::Index dim) {
  return static_cast<int>(2 * dim * dim);
}

namespace {

constexpr double kNewDirectionThreshold = 1e-10;

double hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
  // Re tr(A^dagger B), the real Hilbert-Schmidt product on u(d).
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

// Orthonormal basis of a real subspace of skew-Hermitian matrices.
class SkewBasis {
 public:
  // Returns true and appends if m adds a new direction.
  bool try_add(const ComplexMatrix &m) {
    const double n = m.norm();
    if (n == 0.0)
      return false;
    ComplexMatrix r = m / n;
    // Two passes of Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto &b : basis_)
        r -= hs_inner(b, r) * b;
    const double residual = r.norm();
    if (residual <= kNewDirectionThreshold)
      return false;
    basis_.push_back(r / residual);
    return true;
  }

  std::size_t size() const { return basis_.size(); }
  const ComplexMatrix &operator[](std::size_t i) const { return basis_[i]; }

 private:
  std::vector<ComplexMatrix> basis_;
};

}  // namespace

LieClosureReport lie_rank(const ControlSystem &system, int max_depth) {
  if (max_depth < 1)
    throw InvalidArgument("lie_rank: max_depth must be >= 1");
  const auto d = system.dim();
  const complex i(0.0, 1.0);
  const ComplexMatrix g0 = i * system.drift().matrix();
  const ComplexMatrix gc = i * system.control().matrix();

  LieClosureReport report;
  report.unitary_algebra_dimension = static_cast<int>(d * d);
  report.special_unitary_algebra_dimension = static_cast<int>(d * d - 1);
  const double trace_scale = std::max(1.0, std::max(g0.norm(), gc.norm()));
  report.traceless_generators = std::abs(g0.trace()) <= 1e-12 * trace_scale &&
                                std::abs(gc.trace()) <= 1e-12 * trace_scale;
  report.full_algebra_dimension = report.traceless_generators
                                      ? report.special_unitary_algebra_dimension
                                      : report.unitary_algebra_dimension;

  SkewBasis basis;
  basis.try_add(g0);
  basis.try_add(gc);
  report.depth_reached = 1;

  // Right-normed brackets [g, x] with g a generator span the whole algebra.
  std::size_t frontier_begin = 0;
  while (report.depth_reached < max_depth &&
         static_cast<int>(basis.size()) < report.full_algebra_dimension) {
    const std::size_t frontier_end = basis.size();
    if (frontier_begin == frontier_end)
      break;
    for (std::size_t k = frontier_begin; k < frontier_end; ++k) {
      basis.try_add(commutator(g0, basis[k]));
      basis.try_add(commutator(gc, basis[k]));
    }
    frontier_begin = frontier_end;
    ++report.depth_reached;
  }

  report.generated_dimension = static_cast<int>(basis.size());
  report.controllable = report.generated_dimension == report.full_algebra_dimension;
  return report;
}

LieClosureReport lie_rank(const ControlSystem &system) {
  return lie_rank(system, default_lie_depth(system.dim()));
}

}  // namespace qsl
