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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qsl {

using complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Precondition violations (bad dimensions, non-Hermitian input, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical breakdown that is not the caller's fault.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

// Throws InvalidArgument unless m is square, at least 2x2 and finite.
void check_complex_matrix(const ComplexMatrix &m, const std::string &what = "matrix");

double frobenius_norm(const ComplexMatrix &a);

// ||A - A^dagger||_F relative to max(1, ||A||_F).
double hermiticity_defect(const ComplexMatrix &a);
// ||U^dagger U - 1||_F
double unitarity_defect(const ComplexMatrix &u);

class HermitianOperator {
 public:
  // Validates the matrix; the stored value is the exact Hermitian part.
  explicit HermitianOperator(ComplexMatrix m);

  const ComplexMatrix &matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  HermitianOperator scaled(double c) const;

 private:
  ComplexMatrix m_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix m);

  const ComplexMatrix &matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  static UnitaryOperator identity(Eigen::Index d);

 private:
  ComplexMatrix m_;
};

// H = V diag(eigenvalues) V^dagger, eigenvalues ascending.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

SpectralDecomposition eigendecompose(const HermitianOperator &h);

// exp(-i t H) = V exp(-i t Lambda) V^dagger.
UnitaryOperator expm_hermitian_generator(const HermitianOperator &h, double t);
ComplexMatrix expm_from_spectrum(const SpectralDecomposition &spectrum, double t);

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix commutator(const HermitianOperator &a, const HermitianOperator &b);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace qsl
