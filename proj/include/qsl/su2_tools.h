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

#include <array>
#include <vector>

#include "qsl/speed_limit_bounds.h"

namespace qsl {

/// U = Rz(alpha) Ry(gamma) Rz(beta) with alpha in [0, 2pi), beta in [0, 4pi),
/// gamma in [0, pi].
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

void check_euler_range(const EulerAngles &angles);

UnitaryOperator euler_to_unitary(const EulerAngles &angles);

// Inverse of euler_to_unitary for SU(2) input. At gamma in {0, pi} the
// decomposition is not unique; beta is then fixed to 0, so the rebuilt matrix
// may differ from the input by a global sign.
EulerAngles unitary_to_euler(const UnitaryOperator &u);

// Closed form of the equal-weight combined bound for the single-qubit system
// H0 = omega sigma_x, Hc = sigma_z on targets Rz(alpha) Ry(gamma):
//   sqrt(2 - 2 cos(gamma/2)) / (2|omega|)
//     + sqrt(2 - sqrt(2 (1 + cos(alpha) cos(gamma)))) / (sqrt(2) |f_max|)
double qubit_state_bound(double gamma, double alpha, double omega, double f_max);

// The alternative closed form
//   sqrt(2 - 2 cos(gamma/2)) / (4|omega|) + sqrt(3 - cos(alpha) cos(gamma)) / (4|f_max|).
// It does not vanish at the identity and is kept only for comparison plots.
double qubit_state_bound_alternative(double gamma, double alpha, double omega, double f_max);

struct Resolution {
  int alpha = 64;
  int beta = 64;
  int gamma = 64;
};

struct VolumeEstimate {
  double value = 0.0;
  Resolution resolution;
  double total_time = 0.0;
  double omega = 0.0;
  double f_max = 0.0;
};

// Haar volume of the single-qubit gates whose combined bound exceeds T.
// Cells are sampled at their midpoints; each cell carries its exact Haar mass
// (cos gamma_lo - cos gamma_hi) d alpha d beta / (16 pi^2).
VolumeEstimate unreachable_volume(double total_time, double omega, double f_max,
                                  const Resolution &resolution, int threads = 1);

// Same quadrature for many T at once; the bound is evaluated once per cell.
std::vector<VolumeEstimate> unreachable_volume_curve(const std::vector<double> &times,
                                                     double omega, double f_max,
                                                     const Resolution &resolution,
                                                     int threads = 1);

// Total Haar mass assigned by the quadrature (1 up to rounding).
double haar_normalization(const Resolution &resolution);

// pi / (2|omega|): minimum time for sigma_y with an unconstrained field.
double exact_min_time_sigma_y(double omega);

struct ReachabilityMap {
  std::vector<double> gammas;  // gamma_i = pi i / (n - 1)
  std::vector<double> alphas;  // alpha_j = 2 pi j / n
  // reachable[i][j]: bound(gamma_i, alpha_j) <= T, i.e. not provably unreachable.
  std::vector<std::vector<bool>> reachable;
};

enum class StateBoundFormula { combined, alternative };

ReachabilityMap reachable_state_map(double total_time, double omega, double f_max, int grid,
                                    StateBoundFormula formula = StateBoundFormula::combined);

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace qsl
