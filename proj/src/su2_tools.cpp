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

#include "qsl/su2_tools.h"

#include <cmath>
#include <numbers>

#include "parallel.h"

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGimbalTolerance = 1e-12;

double wrap(double angle, double period) {
  double r = std::fmod(angle, period);
  if (r < 0.0)
    r += period;
  // fmod can return exactly `period` after the shift for tiny negative input.
  return r >= period ? 0.0 : r;
}

void check_rates(double omega, double f_max) {
  if (omega == 0.0 || !std::isfinite(omega))
    throw InvalidArgument("omega must be nonzero and finite");
  if (f_max == 0.0 || std::isnan(f_max))
    throw InvalidArgument("f_max must be nonzero");
}

void check_resolution(const Resolution &r) {
  if (r.alpha < 8 || r.beta < 8 || r.gamma < 8)
    throw InvalidArgument("volume resolution must be at least 8 per axis");
}

}  // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    compensation_ += (sum_ - t) + x;
  else
    compensation_ += (x - t) + sum_;
  sum_ = t;
}

void check_euler_range(const EulerAngles &a) {
  if (!(a.alpha >= 0.0 && a.alpha < 2.0 * kPi))
    throw InvalidArgument("alpha must lie in [0, 2pi)");
  if (!(a.beta >= 0.0 && a.beta < 4.0 * kPi))
    throw InvalidArgument("beta must lie in [0, 4pi)");
  if (!(a.gamma >= 0.0 && a.gamma <= kPi))
    throw InvalidArgument("gamma must lie in [0, pi]");
}

UnitaryOperator euler_to_unitary(const EulerAngles &a) {
  check_euler_range(a);
  const double c = std::cos(a.gamma / 2.0);
  const double s = std::sin(a.gamma / 2.0);
  const double sum = (a.alpha + a.beta) / 2.0;
  const double diff = (a.alpha - a.beta) / 2.0;
  ComplexMatrix u(2, 2);
  u << c * std::polar(1.0, -sum), -s * std::polar(1.0, -diff),
       s * std::polar(1.0, diff), c * std::polar(1.0, sum);
  return UnitaryOperator(std::move(u));
}

EulerAngles unitary_to_euler(const UnitaryOperator &op) {
  const ComplexMatrix &u = op.matrix();
  if (u.rows() != 2)
    throw InvalidArgument("unitary_to_euler needs a 2x2 matrix");
  if (std::abs(u.determinant() - 1.0) > 1e-9)
    throw InvalidArgument("unitary_to_euler needs a determinant-one matrix");

  EulerAngles a;
  const double c = std::abs(u(0, 0));
  const double s = std::abs(u(1, 0));
  a.gamma = 2.0 * std::atan2(s, c);
  if (s < kGimbalTolerance) {
    a.alpha = wrap(-2.0 * std::arg(u(0, 0)), 2.0 * kPi);
    a.gamma = 0.0;
    return a;
  }
  if (c < kGimbalTolerance) {
    a.alpha = wrap(2.0 * std::arg(u(1, 0)), 2.0 * kPi);
    a.gamma = kPi;
    return a;
  }
  const double sum = -2.0 * std::arg(u(0, 0));  // alpha + beta
  const double diff = 2.0 * std::arg(u(1, 0));  // alpha - beta
  a.alpha = wrap((sum + diff) / 2.0, 2.0 * kPi);
  a.beta = wrap(sum - a.alpha, 4.0 * kPi);
  // beta and beta + 2pi differ by a global sign; keep the one that rebuilds u.
  if ((euler_to_unitary(a).matrix() - u).norm() > (euler_to_unitary({a.alpha, wrap(a.beta + 2.0 * kPi, 4.0 * kPi), a.gamma}).matrix() - u).norm())
    a.beta = wrap(a.beta + 2.0 * kPi, 4.0 * kPi);
  return a;
}

double qubit_state_bound(double gamma, double alpha, double omega, double f_max) {
  check_rates(omega, f_max);
  const double drift_term = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::cos(gamma / 2.0))) /
                            (2.0 * std::abs(omega));
  if (std::isinf(f_max))
    return drift_term;
  const double overlap = std::sqrt(std::max(0.0, 2.0 * (1.0 + std::cos(alpha) * std::cos(gamma))));
  const double field_term =
      std::sqrt(std::max(0.0, 2.0 - overlap)) / (2.0 * std::abs(f_max));
  return drift_term + field_term;
}

double qubit_state_bound_alternative(double gamma, double alpha, double omega, double f_max) {
  check_rates(omega, f_max);
  return std::sqrt(2.0 - 2.0 * std::cos(gamma / 2.0)) / (4.0 * std::abs(omega)) +
         std::sqrt(3.0 - std::cos(alpha) * std::cos(gamma)) / (4.0 * std::abs(f_max));
}

std::vector<VolumeEstimate> unreachable_volume_curve(const std::vector<double> &times,
                                                     double omega, double f_max,
                                                     const Resolution &res, int threads) {
  check_rates(omega, f_max);
  check_resolution(res);
  for (double t : times)
    if (!(t >= 0.0))
      throw InvalidArgument("evolution time must be nonnegative");

  const BoundEvaluator evaluator(single_qubit_system(omega));
  const double f = std::abs(f_max);
  const double da = 2.0 * kPi / res.alpha;
  const double db = 4.0 * kPi / res.beta;
  const double dg = kPi / res.gamma;
  const double norm = 16.0 * kPi * kPi;

  // One partial sum per (gamma slice, time); combined in slice order below so
  // the result does not depend on the thread count.
  std::vector<std::vector<double>> partial(res.gamma, std::vector<double>(times.size(), 0.0));
  detail::parallel_for(static_cast<std::size_t>(res.gamma), threads, [&](std::size_t i) {
    const double g_lo = static_cast<double>(i) * dg;
    const double g_hi = g_lo + dg;
    const double gamma = g_lo + 0.5 * dg;
    const double cell_mass = (std::cos(g_lo) - std::cos(g_hi)) * da * db / norm;
    std::vector<CompensatedSum> sums(times.size());
    for (int ia = 0; ia < res.alpha; ++ia) {
      const double alpha = (ia + 0.5) * da;
      for (int ib = 0; ib < res.beta; ++ib) {
        const double beta = (ib + 0.5) * db;
        const double bound =
            evaluator.combined(TargetGate(euler_to_unitary({alpha, beta, gamma})), f);
        for (std::size_t k = 0; k < times.size(); ++k)
          if (bound > times[k])
            sums[k].add(cell_mass);
      }
    }
    for (std::size_t k = 0; k < times.size(); ++k)
      partial[i][k] = sums[k].value();
  });

  std::vector<VolumeEstimate> out(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    CompensatedSum total;
    for (int i = 0; i < res.gamma; ++i)
      total.add(partial[i][k]);
    out[k].value = std::clamp(total.value(), 0.0, 1.0);
    out[k].resolution = res;
    out[k].total_time = times[k];
    out[k].omega = omega;
    out[k].f_max = f_max;
  }
  return out;
}

VolumeEstimate unreachable_volume(double total_time, double omega, double f_max,
                                  const Resolution &resolution, int threads) {
  return unreachable_volume_curve({total_time}, omega, f_max, resolution, threads).front();
}

double haar_normalization(const Resolution &res) {
  check_resolution(res);
  const double da = 2.0 * kPi / res.alpha;
  const double db = 4.0 * kPi / res.beta;
  const double dg = kPi / res.gamma;
  CompensatedSum total;
  for (int i = 0; i < res.gamma; ++i) {
    const double mass = (std::cos(i * dg) - std::cos((i + 1) * dg)) * da * db / (16.0 * kPi * kPi);
    for (int j = 0; j < res.alpha * res.beta; ++j)
      total.add(mass);
  }
  return total.value();
}

double exact_min_time_sigma_y(double omega) {
  if (omega == 0.0 || !std::isfinite(omega))
    throw InvalidArgument("omega must be nonzero and finite");
  return kPi / (2.0 * std::abs(omega));
}

ReachabilityMap reachable_state_map(double total_time, double omega, double f_max, int grid,
                                    StateBoundFormula formula) {
  if (grid < 16)
    throw InvalidArgument("reachability grid must be at least 16x16");
  check_rates(omega, f_max);
  ReachabilityMap map;
  map.gammas.resize(grid);
  map.alphas.resize(grid);
  for (int i = 0; i < grid; ++i) {
    map.gammas[i] = kPi * i / (grid - 1);
    map.alphas[i] = 2.0 * kPi * i / grid;
  }
  map.reachable.assign(grid, std::vector<bool>(grid, false));
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double b = formula == StateBoundFormula::combined
                           ? qubit_state_bound(map.gammas[i], map.alphas[j], omega, f_max)
                           : qubit_state_bound_alternative(map.gammas[i], map.alphas[j], omega, f_max);
      map.reachable[i][j] = b <= total_time;
    }
  return map;
}

}  // namespace qsl
