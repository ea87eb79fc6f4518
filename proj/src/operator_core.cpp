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

#include "qsl/operator_core.h"

#include <cmath>

namespace qsl {

void check_complex_matrix(const ComplexMatrix &m, const std::string &what) {
  if (m.rows() != m.cols())
    throw InvalidArgument(what + " must be square");
  if (m.rows() < 2)
    throw InvalidArgument(what + " must have dimension >= 2");
  if (!m.allFinite())
    throw InvalidArgument(what + " has non-finite entries");
}

double frobenius_norm(const ComplexMatrix &a) {
  if (!a.allFinite())
    throw InvalidArgument("matrix has non-finite entries");
  return a.norm();
}

double hermiticity_defect(const ComplexMatrix &a) {
  return (a - a.adjoint()).norm() / std::max(1.0, a.norm());
}

double unitarity_defect(const ComplexMatrix &u) {
  const auto d = u.rows();
  return (u.adjoint() * u - ComplexMatrix::Identity(d, d)).norm();
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  check_complex_matrix(m_, "Hermitian operator");
  const double defect = hermiticity_defect(m_);
  if (defect > kHermitianTolerance)
    throw InvalidArgument("operator is not Hermitian (relative defect " +
                          std::to_string(defect) + ")");
  // Symmetrize away the residual float noise so downstream eigensolvers see
  // an exactly Hermitian input.
  m_ = 0.5 * (m_ + m_.adjoint()).eval();
}

HermitianOperator HermitianOperator::scaled(double c) const {
  return HermitianOperator(c * m_);
}

UnitaryOperator::UnitaryOperator(ComplexMatrix m) : m_(std::move(m)) {
  check_complex_matrix(m_, "unitary operator");
  const double defect = unitarity_defect(m_);
  if (!(defect <= kUnitaryTolerance * static_cast<double>(m_.rows())))
    throw InvalidArgument("operator is not unitary (defect " + std::to_string(defect) + ")");
}

UnitaryOperator UnitaryOperator::identity(Eigen::Index d) {
  return UnitaryOperator(ComplexMatrix::Identity(d, d));
}

SpectralDecomposition eigendecompose(const HermitianOperator &h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success)
    throw NumericError("Hermitian eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm_from_spectrum(const SpectralDecomposition &spectrum, double t) {
  const auto &v = spectrum.eigenvectors;
  Eigen::VectorXcd phases(spectrum.eigenvalues.size());
  for (Eigen::Index j = 0; j < phases.size(); ++j)
    phases(j) = std::polar(1.0, -t * spectrum.eigenvalues(j));
  return v * phases.asDiagonal() * v.adjoint();
}

UnitaryOperator expm_hermitian_generator(const HermitianOperator &h, double t) {
  if (!std::isfinite(t))
    throw InvalidArgument("evolution time must be finite");
  return UnitaryOperator(expm_from_spectrum(eigendecompose(h), t));
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw InvalidArgument("commutator: dimension mismatch");
  return a * b - b * a;
}

ComplexMatrix commutator(const HermitianOperator &a, const HermitianOperator &b) {
  return commutator(a.matrix(), b.matrix());
}

namespace pauli {

ComplexMatrix identity() {
  return ComplexMatrix::Identity(2, 2);
}

ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0, complex(0, -1), complex(0, 1), 0;
  return m;
}

ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace pauli

}  // namespace qsl
