// Copyright 2026 The teur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "teur/ensembles.hpp"
#include "teur/qstate.hpp"

namespace teur {
namespace {

const SubsystemLayout kQubitA{{"A", 2}};
const SubsystemLayout kQubitB{{"B", 2}};
const SubsystemLayout kTwoQubits{{"A", 2}, {"B", 2}};

DensityMatrix ket(const SubsystemLayout& layout, std::initializer_list<Index> digits) {
  const std::vector<Index> d(digits);
  return basis_state(layout, d);
}

TEST(SubsystemLayoutTest, RejectsDuplicateLabelsAndZeroDims) {
  EXPECT_THROW(SubsystemLayout({{"A", 2}, {"A", 3}}), std::invalid_argument);
  EXPECT_THROW(SubsystemLayout({{"A", 0}}), std::invalid_argument);
  EXPECT_THROW(SubsystemLayout({{"", 2}}), std::invalid_argument);
}

TEST(SubsystemLayoutTest, LookupAndRestriction) {
  const SubsystemLayout l{{"A", 2}, {"B", 3}, {"C", 5}};
  EXPECT_EQ(l.total_dim(), 30);
  EXPECT_EQ(l.position("C"), 2u);
  EXPECT_EQ(l.dim_of({"C", "A"}), 10);
  EXPECT_EQ(l.restrict_to({"C", "A"}), (SubsystemLayout{{"A", 2}, {"C", 5}}));
  EXPECT_EQ(l.complement({"B"}), (LabelList{"A", "C"}));
  EXPECT_THROW(l.position("D"), std::invalid_argument);
  EXPECT_THROW(l.concat(SubsystemLayout{{"B", 2}}), std::invalid_argument);
}

TEST(DensityMatrixTest, RejectsInvalidOperators) {
  Matrix not_hermitian = Matrix::Zero(2, 2);
  not_hermitian(0, 0) = 1.0;
  not_hermitian(0, 1) = 0.5;
  EXPECT_THROW(DensityMatrix(kQubitA, not_hermitian), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(kQubitA, Matrix::Identity(2, 2)), std::invalid_argument);  // trace 2
  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(kQubitA, negative), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(kTwoQubits, Matrix::Identity(2, 2) / 2.0), std::invalid_argument);
}

TEST(DensityMatrixTest, AcceptsTinyNegativeEigenvalues) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0 + 5e-11;
  m(1, 1) = -5e-11;
  EXPECT_NO_THROW(DensityMatrix(kQubitA, m));
}

TEST(PureStateTest, RequiresUnitNorm) {
  Vector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(PureState(kQubitA, v), std::invalid_argument);
  v /= std::sqrt(2.0);
  EXPECT_TRUE(DensityMatrix(PureState(kQubitA, v)).is_pure());
}

TEST(TensorTest, MaximallyMixedProduct) {
  const DensityMatrix t = tensor(maximally_mixed(kQubitA), maximally_mixed(kQubitB));
  EXPECT_LE(max_abs(t.matrix() - Matrix::Identity(4, 4) / 4.0), 1e-15);
}

TEST(TensorTest, BasisProduct) {
  const DensityMatrix t = tensor(ket(kQubitA, {0}), ket(kQubitB, {1}));
  EXPECT_LE(max_abs(t.matrix() - ket(kTwoQubits, {0, 1}).matrix()), 0.0);
  EXPECT_EQ(t.layout(), kTwoQubits);
}

TEST(TensorTest, TraceIsMultiplicative) {
  SeededSource src(1, "tensor");
  for (int s = 0; s < 20; ++s) {
    const DensityMatrix a = ginibre_mixed(SubsystemLayout{{"A", 3}}, 2, src);
    const DensityMatrix b = ginibre_mixed(kQubitB, 2, src);
    EXPECT_NEAR(std::abs(tensor(a, b).matrix().trace()), 1.0, 1e-12);
  }
  EXPECT_THROW(tensor(maximally_mixed(kQubitA), maximally_mixed(kQubitA)), std::invalid_argument);
}

TEST(PartialTraceTest, ProductMarginal) {
  SeededSource src(2, "ptrace");
  const DensityMatrix a = ginibre_mixed(kQubitA, 2, src);
  const DensityMatrix b = ginibre_mixed(kQubitB, 2, src);
  EXPECT_LE(max_abs(partial_trace(tensor(a, b), {"A"}).matrix() - a.matrix()), 1e-15);
}

TEST(PartialTraceTest, BellMarginalIsMaximallyMixed) {
  const DensityMatrix bell(kTwoQubits, oracle::bell());
  EXPECT_LE(max_abs(partial_trace(bell, {"A"}).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_THROW(partial_trace(bell, {}), std::invalid_argument);
}

TEST(PartialTraceTest, MatchesIndexSumOracle) {
  const SubsystemLayout l{{"A", 2}, {"B", 3}, {"C", 2}};
  const std::vector<Index> dims{2, 3, 2};
  SeededSource src(3, "ptrace3");
  for (int s = 0; s < 10; ++s) {
    const DensityMatrix rho = ginibre_mixed(l, 1 + s, src);
    for (const auto& [keep, mask] : std::vector<std::pair<LabelList, std::vector<bool>>>{
             {{"A"}, {true, false, false}},
             {{"B"}, {false, true, false}},
             {{"A", "C"}, {true, false, true}},
             {{"B", "C"}, {false, true, true}},
             {{"A", "B", "C"}, {true, true, true}}}) {
      EXPECT_LE(max_abs(partial_trace(rho, keep).matrix() - oracle::partial_trace(rho.matrix(), dims, mask)), 1e-14);
    }
  }
}

TEST(PartialTraceTest, KeepOrderFollowsLayout) {
  const SubsystemLayout l{{"A", 2}, {"B", 3}};
  SeededSource src(4, "order");
  const DensityMatrix rho = ginibre_mixed(l, 6, src);
  EXPECT_LE(max_abs(partial_trace(rho, {"B", "A"}).matrix() - rho.matrix()), 0.0);
}

TEST(ApplyUnitaryTest, IdentityLeavesStateUnchanged) {
  SeededSource src(5, "unitary");
  const DensityMatrix rho = ginibre_mixed(kTwoQubits, 3, src);
  EXPECT_LE(max_abs(apply_unitary(rho, Matrix::Identity(2, 2), {"B"}).matrix() - rho.matrix()), 1e-15);
}

TEST(ApplyUnitaryTest, EigenstateOfGeneratorIsInvariant) {
  const Generator g("A", pauli_z());
  for (double r : {0.3, 1.0, 2.5, std::numbers::pi}) {
    const DensityMatrix out = apply_unitary(ket(kQubitA, {0}), g.rotation(r), {"A"});
    EXPECT_LE(max_abs(out.matrix() - ket(kQubitA, {0}).matrix()), 1e-15);
  }
}

TEST(ApplyUnitaryTest, PreservesSpectrum) {
  SeededSource src(6, "spectrum");
  for (int s = 0; s < 20; ++s) {
    const DensityMatrix rho = ginibre_mixed(kTwoQubits, 1 + s % 4, src);
    const DensityMatrix out = apply_unitary(rho, random_unitary(4, src), {"A", "B"});
    EXPECT_LE((out.spectrum() - rho.spectrum()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ApplyUnitaryTest, TargetOrderMatters) {
  const SubsystemLayout l{{"A", 2}, {"B", 2}};
  Matrix x_on_first = kron(pauli_x(), Matrix::Identity(2, 2));
  const DensityMatrix out = apply_unitary(ket(l, {0, 0}), x_on_first, {"B", "A"});
  EXPECT_LE(max_abs(out.matrix() - ket(l, {0, 1}).matrix()), 0.0);
}

TEST(ApplyUnitaryTest, RejectsNonUnitaryAndWrongSize) {
  EXPECT_THROW(apply_unitary(ket(kQubitA, {0}), 2.0 * Matrix::Identity(2, 2), {"A"}), std::invalid_argument);
  EXPECT_THROW(apply_unitary(ket(kQubitA, {0}), Matrix::Identity(3, 3), {"A"}), std::invalid_argument);
}

TEST(EigHermitianTest, IdentityAndPauli) {
  const HermitianEigen id = eig_hermitian(Matrix::Identity(3, 3));
  EXPECT_LE((id.values.array() - 1.0).abs().maxCoeff(), 1e-15);
  const HermitianEigen z = eig_hermitian(pauli_z());
  EXPECT_NEAR(z.values(0), -1.0, 1e-15);
  EXPECT_NEAR(z.values(1), 1.0, 1e-15);
}

TEST(EigHermitianTest, ReconstructsRandomHermitian) {
  SeededSource src(7, "eig");
  for (int s = 0; s < 20; ++s) {
    const Matrix h = random_hermitian(5, src);
    const HermitianEigen e = eig_hermitian(h);
    EXPECT_LE(max_abs(e.vectors * e.values.asDiagonal() * e.vectors.adjoint() - h), 1e-12);
    for (Index i = 1; i < 5; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
  }
  EXPECT_THROW(eig_hermitian(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST(GeneratorTest, RotationMatchesMatrixExponential) {
  SeededSource src(8, "rotation");
  for (int s = 0; s < 10; ++s) {
    const Matrix h = random_hermitian(3, src);
    const Generator g("A", h);
    const double r = 2.0 * src.uniform();
    EXPECT_LE(max_abs(g.rotation(r) - oracle::expm(Complex(0, -r) * h)), 1e-12);
  }
}

TEST(GeneratorTest, DegenerateSpectrumNeedsExplicitBasis) {
  Matrix h = Matrix::Identity(3, 3);
  h(2, 2) = 2.0;
  EXPECT_THROW(Generator("A", h), std::invalid_argument);
  EXPECT_NO_THROW(Generator("A", h, Matrix::Identity(3, 3)));
}

}  // namespace
}  // namespace teur
