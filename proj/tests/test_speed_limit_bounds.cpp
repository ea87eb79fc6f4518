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

#include "qsl/speed_limit_bounds.h"
#include "test_util.h"

namespace qsl {
namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

const TargetGate kSigmaY{UnitaryOperator(pauli::y())};

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / sqrt2;
}

TEST(CQuantity, IdentityIsZero) {
  std::mt19937_64 rng(1);
  const ComplexMatrix basis = testing::haar_unitary(4, rng);
  EXPECT_NEAR(c_quantity_in_basis(TargetGate(ComplexMatrix::Identity(4, 4)), basis), 0.0, 1e-7);
}

TEST(CQuantity, SigmaYInTwoBases) {
  EXPECT_NEAR(c_quantity_in_basis(kSigmaY, ComplexMatrix::Identity(2, 2)), 1.0, 1e-15);
  EXPECT_NEAR(c_quantity_in_basis(kSigmaY, hadamard()), 1.0, 1e-15);
  EXPECT_NEAR(c_quantity(kSigmaY, make_eigenbasis(HermitianOperator(pauli::z()))), 1.0, 1e-15);
}

TEST(CQuantity, PhaseAndPermutationInvariance) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> theta(0.0, 2 * pi);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix u = testing::haar_unitary(4, rng);
    const ComplexMatrix basis = testing::haar_unitary(4, rng);
    const double c = c_quantity_in_basis(TargetGate(u), basis);
    const complex phase = std::exp(complex(0, theta(rng)));
    EXPECT_NEAR(c_quantity_in_basis(TargetGate(ComplexMatrix(phase * u)), basis), c, 1e-12);
    Eigen::PermutationMatrix<4> perm;
    perm.setIdentity();
    std::shuffle(perm.indices().data(), perm.indices().data() + 4, rng);
    EXPECT_NEAR(c_quantity_in_basis(TargetGate(u), basis * perm), c, 1e-12);
  }
}

TEST(CQuantity, DegenerateBlocksAreBasisIndependent) {
  // Hc of the chain is |1><1|: a three-fold degenerate zero eigenvalue.
  const auto s = chain_system(4, 1.0, true);
  const auto cache = make_eigenbasis(s.control());
  EXPECT_TRUE(cache.degenerate());
  const TargetGate swap = named_gate("swap-ends", 4);
  EXPECT_NEAR(c_quantity(swap, cache), 1.0, 1e-12);
}

TEST(DriftBound, Examples) {
  const auto s = single_qubit_system(1.0);
  EXPECT_NEAR(drift_speed_limit(s, kSigmaY), sqrt2, 1e-14);
  EXPECT_NEAR(drift_speed_limit(single_qubit_system(2.0), kSigmaY), sqrt2 / 2, 1e-14);
  const TargetGate control_gate(expm_hermitian_generator(s.control(), 0.7));
  EXPECT_NEAR(drift_speed_limit(s, control_gate), 0.0, 1e-7);
}

TEST(FieldBound, Examples) {
  const auto s = single_qubit_system(1.0);
  EXPECT_NEAR(field_speed_limit(s, kSigmaY, 1.0), sqrt2, 1e-14);
  EXPECT_EQ(field_speed_limit(s, kSigmaY, kUnboundedField), 0.0);
  const TargetGate drift_gate(expm_hermitian_generator(s.drift(), 0.4));
  EXPECT_NEAR(field_speed_limit(s, drift_gate, 1.0), 0.0, 1e-7);
  EXPECT_THROW(field_speed_limit(s, kSigmaY, 0.0), InvalidArgument);
}

TEST(CombinedBound, Examples) {
  const auto s = single_qubit_system(1.0);
  const auto r = combined_bound(s, kSigmaY, 1.0);
  EXPECT_NEAR(r.combined_bound, sqrt2, 1e-14);
  EXPECT_NEAR(combined_bound(s, kSigmaY, 10.0).combined_bound, 1 / sqrt2 + 1 / (10 * sqrt2),
              1e-14);
  const auto id = combined_bound(s, TargetGate(ComplexMatrix::Identity(2, 2)), 1.0);
  EXPECT_NEAR(id.drift_bound, 0.0, 1e-7);
  EXPECT_NEAR(id.field_bound, 0.0, 1e-7);
  EXPECT_NEAR(id.combined_bound, 0.0, 1e-7);
}

TEST(CombinedBound, UnboundedField) {
  const auto r = combined_bound(single_qubit_system(1.0), kSigmaY, kUnboundedField);
  EXPECT_EQ(r.field_bound, 0.0);
  EXPECT_NEAR(r.max_bound, sqrt2, 1e-14);
  EXPECT_NEAR(r.combined_bound, sqrt2 / 2, 1e-14);
}

TEST(CombinedBound, Decoherence) {
  const auto s = single_qubit_system(1.0);
  BoundOptions o;
  // Compared against the critical time, which is 1 here.
  o.decoherence_time = 0.9;
  EXPECT_EQ(combined_bound(s, kSigmaY, 1.0, o).decoherence_feasible, false);
  o.decoherence_time = 1.0;
  EXPECT_EQ(combined_bound(s, kSigmaY, 1.0, o).decoherence_feasible, true);
}

TEST(CombinedBound, Scaling) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const ControlSystem s(HermitianOperator(testing::random_hermitian(3, rng)),
                          HermitianOperator(testing::random_hermitian(3, rng)));
    const TargetGate g(testing::haar_unitary(3, rng));
    const double c = 0.25 + trial * 0.2;
    const ControlSystem scaled(s.drift().scaled(c), s.control());
    EXPECT_NEAR(drift_speed_limit(scaled, g) * c, drift_speed_limit(s, g), 1e-12);
    EXPECT_NEAR(field_speed_limit(scaled, g, 1.3), field_speed_limit(s, g, 1.3), 1e-12);
    // Power-of-two scaling is exact in floating point, so the eigenbasis is too.
    const double p2 = std::ldexp(1.0, trial % 7 - 3);
    const ControlSystem exact(s.drift().scaled(p2), s.control());
    EXPECT_EQ(field_speed_limit(exact, g, 1.3), field_speed_limit(s, g, 1.3));
  }
}

TEST(CombinedBound, Ordering) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 3;
    const ControlSystem s(HermitianOperator(testing::random_hermitian(d, rng)),
                          HermitianOperator(testing::random_hermitian(d, rng)));
    const auto r = combined_bound(s, TargetGate(testing::haar_unitary(d, rng)), 0.3 + trial * 0.05);
    EXPECT_GE(r.max_bound, r.combined_bound);
    EXPECT_GE(r.combined_bound, std::min(r.drift_bound, r.field_bound));
    if (r.drift_bound != r.field_bound)
      EXPECT_LT(r.combined_bound, r.max_bound);
  }
}

TEST(CombinedBound, EvaluatorMatchesFreeFunction) {
  const auto s = chain_system(4, 1.0, true);
  const BoundEvaluator e(s);
  const auto g = named_gate("swap-ends", 4);
  EXPECT_EQ(e.combined(g, 2.0), combined_bound(s, g, 2.0).combined_bound);
}

TEST(ParetoRegion, Examples) {
  const auto s = single_qubit_system(1.0);
  EXPECT_FALSE(pareto_region_test(s, kSigmaY, 1.0, 1.0));
  EXPECT_TRUE(pareto_region_test(s, kSigmaY, 1.0, 2.0));
  const TargetGate id(ComplexMatrix::Identity(2, 2));
  for (double t : {0.0, 0.1, 5.0})
    EXPECT_TRUE(pareto_region_test(s, id, 1.0, t));
  EXPECT_NEAR(pareto_boundary_time(s, kSigmaY, 0.5), 1 / sqrt2 + 1 / (0.5 * sqrt2), 1e-14);
}

TEST(CriticalTime, Examples) {
  EXPECT_EQ(critical_time_bound(single_qubit_system(1.0), 1.0), 1.0);
  EXPECT_DOUBLE_EQ(critical_time_bound(single_qubit_system(1.0), 2.0), 0.75);
  const ControlSystem no_drift(HermitianOperator(ComplexMatrix::Zero(2, 2)),
                               HermitianOperator(pauli::z()));
  EXPECT_EQ(critical_time_bound(no_drift, 1.0), kUnboundedField);
}

TEST(HardGate, IdentityPair) {
  const auto id = UnitaryOperator::identity(2);
  const auto g = construct_hard_gate(id, id);
  EXPECT_LT((g.matrix() - complex(0, -1) * ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_NEAR(g.matrix().adjoint().trace().real(), 0.0, 1e-15);
}

TEST(HardGate, PauliExponentials) {
  const auto u1 = expm_hermitian_generator(HermitianOperator(pauli::x()), 1.0);
  const auto u2 = expm_hermitian_generator(HermitianOperator(pauli::z()), 1.0);
  const auto g = construct_hard_gate(u1, u2);
  EXPECT_LE((g.matrix().adjoint() * u1.matrix()).trace().real(), 1.0 + 1e-9);
  EXPECT_LE((g.matrix().adjoint() * u2.matrix()).trace().real(), 1.0 + 1e-9);
}

TEST(HardGate, RandomPairs) {
  std::mt19937_64 rng(5);
  for (Eigen::Index d : {2, 4, 6}) {
    for (int trial = 0; trial < 200; ++trial) {
      const UnitaryOperator u1(testing::haar_unitary(d, rng)), u2(testing::haar_unitary(d, rng));
      const auto g = construct_hard_gate(u1, u2);
      const double half = static_cast<double>(d) / 2.0;
      EXPECT_LE((g.matrix().adjoint() * u1.matrix()).trace().real(), half + 1e-9);
      EXPECT_LE((g.matrix().adjoint() * u2.matrix()).trace().real(), half + 1e-9);
    }
  }
}

TEST(HardGate, OddDimensionRejected) {
  const auto id = UnitaryOperator::identity(3);
  EXPECT_THROW(construct_hard_gate(id, id), InvalidArgument);
}

TEST(NamedGate, Lookup) {
  EXPECT_LT((named_gate("pauli-y", 2).matrix() - pauli::y()).norm(), 0.0 + 1e-15);
  EXPECT_THROW(named_gate("pauli-y", 4), InvalidArgument);
  EXPECT_THROW(named_gate("nope", 2), InvalidArgument);
  const auto swap = named_gate("swap-ends", 4).matrix();
  EXPECT_NEAR(std::abs(swap(0, 3)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(swap(1, 1)), 1.0, 1e-15);
}

}  // namespace
}  // namespace qsl
