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

#include <gtest/gtest.h>

#include <numbers>

#include "qsl/grape.h"
#include "test_util.h"

namespace qsl {
namespace {

using std::numbers::pi;

const TargetGate kSigmaY{UnitaryOperator(pauli::y())};

OptimizationConfig quick(double f_max, int restarts = 4) {
  OptimizationConfig c;
  c.slice_count = 64;
  c.f_max = f_max;
  c.restarts = restarts;
  c.max_iterations = 3000;
  return c;
}

TEST(Infidelity, Examples) {
  EXPECT_EQ(infidelity(kSigmaY, pauli::y()), 0.0);
  EXPECT_EQ(infidelity(kSigmaY, ComplexMatrix(pauli::identity())), 1.0);
}

TEST(Infidelity, GlobalPhaseInvariance) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const TargetGate g(testing::haar_unitary(3, rng));
    const ComplexMatrix u = testing::haar_unitary(3, rng);
    const complex phase = std::polar(1.0, 0.1 * trial);
    EXPECT_NEAR(infidelity(g, ComplexMatrix(phase * u)), infidelity(g, u), 1e-15);
    EXPECT_NEAR(infidelity(g, ComplexMatrix(phase * g.matrix())), 0.0, 1e-15);
  }
}

TEST(Gradient, MatchesCentralDifferences) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> amp(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = trial % 2 == 0 ? 2 : 4;
    const ControlSystem s(HermitianOperator(testing::random_hermitian(d, rng)),
                          HermitianOperator(testing::random_hermitian(d, rng)));
    const TargetGate g(testing::haar_unitary(d, rng));
    std::vector<double> a(12);
    for (double &x : a)
      x = amp(rng);
    const PulseSchedule p(a, 0.15);
    const auto analytic = gradient(s, g, p);
    const GrapeObjective obj(s, g, 0.15);
    double diff = 0.0, norm = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      auto up = a, down = a;
      up[k] += 1e-6;
      down[k] -= 1e-6;
      const double fd = (obj.value(up) - obj.value(down)) / 2e-6;
      diff += (fd - analytic[k]) * (fd - analytic[k]);
      norm += analytic[k] * analytic[k];
      EXPECT_TRUE(std::isfinite(analytic[k]));
    }
    EXPECT_LT(std::sqrt(diff / norm), 1e-6) << "instance " << trial;
  }
}

TEST(Gradient, DegenerateSliceSpectrum) {
  // f = 0 on a drift with repeated eigenvalues exercises the divided-difference limit.
  const auto s = chain_system(4, 1.0);
  const TargetGate g = named_gate("swap-ends", 4);
  std::vector<double> a{0.0, 0.3, -0.2, 0.0};
  const auto analytic = gradient(s, g, PulseSchedule(a, 0.4));
  const GrapeObjective obj(s, g, 0.4);
  for (std::size_t k = 0; k < a.size(); ++k) {
    auto up = a, down = a;
    up[k] += 1e-6;
    down[k] -= 1e-6;
    EXPECT_NEAR((obj.value(up) - obj.value(down)) / 2e-6, analytic[k], 1e-7);
  }
}

TEST(Optimize, FeasibleRunConverges) {
  const auto s = single_qubit_system(1.0);
  const auto r = optimize(s, kSigmaY, 2.4, quick(1.0));
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.final_infidelity, 1e-7);
  EXPECT_TRUE(pareto_region_test(s, kSigmaY, r.best_pulse.max_abs_amplitude(), 2.4));
  EXPECT_LE(combined_bound(s, kSigmaY, r.best_pulse.max_abs_amplitude()).combined_bound, 2.4);
  EXPECT_NEAR(infidelity(kSigmaY, propagate(s, r.best_pulse)), r.final_infidelity, 1e-12);
}

TEST(Optimize, InfeasibleRunDoesNotConverge) {
  const auto r = optimize(single_qubit_system(1.0), kSigmaY, 0.5, quick(1.0, 2));
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.final_infidelity, 1e-3);
}

TEST(Optimize, ProjectionKeepsAmplitudesInBox) {
  for (double f : {0.3, 0.7, 1.5}) {
    const auto r = optimize(single_qubit_system(1.0), kSigmaY, 1.8, quick(f, 2));
    for (double a : r.best_pulse.amplitudes())
      EXPECT_LE(std::abs(a), f);
  }
}

TEST(Optimize, TraceIsStrictlyDecreasing) {
  const auto r = optimize(single_qubit_system(1.0), kSigmaY, 1.2, quick(0.8, 2));
  ASSERT_GT(r.infidelity_trace.size(), 2u);
  for (std::size_t k = 1; k < r.infidelity_trace.size(); ++k)
    EXPECT_LT(r.infidelity_trace[k], r.infidelity_trace[k - 1]);
  EXPECT_EQ(r.infidelity_trace.back(), r.final_infidelity);
}

TEST(Optimize, Deterministic) {
  const auto s = chain_system(4, 1.0, true);
  const auto g = named_gate("swap-ends", 4);
  auto c = quick(2.0, 2);
  c.max_iterations = 200;
  c.rng_seed = 1234;
  const auto a = optimize(s, g, 5.0, c), b = optimize(s, g, 5.0, c);
  EXPECT_EQ(a.best_pulse.amplitudes(), b.best_pulse.amplitudes());
  EXPECT_EQ(a.infidelity_trace, b.infidelity_trace);
  EXPECT_EQ(a.restart_index, b.restart_index);
  c.rng_seed = 1235;
  EXPECT_NE(optimize(s, g, 5.0, c).best_pulse.amplitudes(), a.best_pulse.amplitudes());
}

TEST(Optimize, DriftOnlyTargetConvergesImmediately) {
  const auto s = single_qubit_system(1.3);
  const TargetGate g(expm_hermitian_generator(s.drift(), 0.9));
  const auto c = quick(1.0);
  const auto r = optimize_from(s, g, 0.9, c, std::vector<double>(c.slice_count, 0.0));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_LT(r.final_infidelity, 1e-12);
}

TEST(Optimize, GradientVanishesAtInteriorOptimum) {
  const auto s = single_qubit_system(1.0);
  auto c = quick(kUnboundedField);
  c.threshold = 1e-13;
  const auto r = optimize(s, kSigmaY, 2.0, c);
  ASSERT_LT(r.final_infidelity, 1e-12);
  for (double v : gradient(s, kSigmaY, r.best_pulse))
    EXPECT_LT(std::abs(v), 1e-5);
}

TEST(Optimize, RejectsBadConfig) {
  auto c = quick(1.0);
  c.slice_count = 0;
  EXPECT_THROW(optimize(single_qubit_system(1.0), kSigmaY, 1.0, c), InvalidArgument);
  c = quick(-1.0);
  EXPECT_THROW(optimize(single_qubit_system(1.0), kSigmaY, 1.0, c), InvalidArgument);
  EXPECT_THROW(optimize(single_qubit_system(1.0), kSigmaY, 0.0, quick(1.0)), InvalidArgument);
}

TEST(DeriveSeed, StreamsDiffer) {
  EXPECT_NE(derive_seed(0, 0, 0), derive_seed(0, 0, 1));
  EXPECT_NE(derive_seed(0, 1, 0), derive_seed(0, 0, 1));
  EXPECT_NE(derive_seed(1, 0, 0), derive_seed(0, 0, 0));
  EXPECT_EQ(derive_seed(5, 6, 7), derive_seed(5, 6, 7));
}

TEST(MinTime, SingleQubitIsTight) {
  const double omega = 2.0;
  const auto s = single_qubit_system(omega);
  const double exact = pi / (2 * omega);
  const auto est = min_time_search(s, kSigmaY, quick(kUnboundedField), 0.9 * exact,
                                   1.3 * exact, 5);
  ASSERT_TRUE(est.t_star_upper.has_value());
  EXPECT_GE(*est.t_star_upper, exact);
  EXPECT_LE(*est.t_star_upper, 1.05 * exact);
  EXPECT_LE(drift_speed_limit(s, kSigmaY), *est.t_star_upper);
  bool bisected = false;
  for (const auto &rec : est.scan)
    bisected = bisected || rec.bisection;
  EXPECT_TRUE(bisected);
}

TEST(MinTime, NothingConverges) {
  MinTimeOptions o;
  o.refine = false;
  const auto est =
      min_time_search(single_qubit_system(1.0), kSigmaY, quick(1.0, 1), 0.2, 0.6, 3, o);
  EXPECT_FALSE(est.t_star_upper.has_value());
  EXPECT_EQ(est.scan.size(), 3u);
}

TEST(ParetoSweep, SmallGrid) {
  const auto s = single_qubit_system(1.0);
  const std::vector<double> times{0.8, 2.6}, fields{0.5, 1.0};
  const auto serial = pareto_sweep(s, kSigmaY, times, fields, quick(1.0), 1);
  const auto parallel = pareto_sweep(s, kSigmaY, times, fields, quick(1.0), 3);
  EXPECT_EQ(serial.infidelity, parallel.infidelity);
  EXPECT_FALSE(pareto_region_test(s, kSigmaY, 0.5, 0.8));
  EXPECT_GT(serial.infidelity[0][0], 1e-2);
  EXPECT_TRUE(serial.converged[1][1]);
  for (std::size_t i = 0; i < times.size(); ++i)
    for (std::size_t j = 0; j < fields.size(); ++j)
      if (serial.converged[i][j])
        EXPECT_TRUE(pareto_region_test(s, kSigmaY, fields[j], times[i]));
  ASSERT_EQ(serial.boundary_time.size(), fields.size());
  EXPECT_NEAR(serial.boundary_time[1], std::sqrt(2.0), 1e-14);
}

}  // namespace
}  // namespace qsl
