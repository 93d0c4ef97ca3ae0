// Copyright 2026 The gentyp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gentyp/channels.h"

#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include "gentyp/bns.h"
#include "gentyp/errors.h"
#include "gentyp/serialization.h"
#include "oracles.h"

namespace gentyp {
namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

DensityOperator basis_dm(Index dim, Index i) { return DensityOperator::from_trusted(matrix_unit(dim, i, i)); }

Matrix phi_plus(Index d) {
  Vector v = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return v * v.adjoint();
}

DensityOperator random_mixed_state(Index dim, std::uint64_t seed) {
  const StateVector psi = haar_sample(dim * 2, seed);
  return partial_trace(DensityOperator::pure(psi), Keep::kFirst, {dim, 2});
}

std::vector<QuantumChannel> channel_zoo() {
  std::vector<QuantumChannel> zoo;
  zoo.push_back(identity_channel(3));
  zoo.push_back(depolarizing(2, 0.3));
  zoo.push_back(depolarizing(3, 1.0));
  zoo.push_back(depolarizing(2, 1.2));
  zoo.push_back(partial_trace_channel(2, 3));
  zoo.push_back(bns_block_channel(2));
  zoo.push_back(random_channel(4, 3, 5, 17));
  zoo.push_back(compose(depolarizing(2, 0.4), random_channel(3, 2, 2, 5)));
  zoo.push_back(tensor(random_channel(2, 2, 3, 8), depolarizing(2, 0.6)));
  return zoo;
}

TEST(QuantumChannelTest, RejectsNonTracePreservingFamily) {
  EXPECT_THROW(QuantumChannel(2, 2, {0.5 * Matrix::Identity(2, 2)}), NotCptpError);
  EXPECT_THROW(QuantumChannel(2, 2, {Matrix::Identity(3, 2)}), DimensionError);
  EXPECT_THROW(QuantumChannel(2, 2, {}), NotCptpError);
}

TEST(QuantumChannelTest, OverlongFamilyIsCompressed) {
  const QuantumChannel c = compose(depolarizing(2, 0.5), depolarizing(2, 0.5));
  EXPECT_LE(c.kraus_rank(), 4u);
}

TEST(QuantumChannelTest, OutputsAreStatesOnRandomInputs) {
  std::uint64_t seed = 1;
  for (const QuantumChannel& ch : channel_zoo()) {
    for (int i = 0; i < 100; ++i) {
      const DensityOperator rho = random_mixed_state(ch.dim_in(), seed++);
      const Matrix out = apply(ch, rho).matrix();
      EXPECT_NEAR(out.trace().real(), 1.0, 1e-10);
      Eigen::SelfAdjointEigenSolver<Matrix> es(out, Eigen::EigenvaluesOnly);
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    }
  }
}

TEST(ApplyTest, IdentityChannel) {
  const DensityOperator rho = random_mixed_state(3, 4);
  EXPECT_LE(max_abs(apply(identity_channel(3), rho).matrix() - rho.matrix()), 1e-15);
}

TEST(ApplyTest, FullDepolarizationGivesMaximallyMixed) {
  const DensityOperator rho = random_mixed_state(2, 5);
  EXPECT_LE(max_abs(apply(depolarizing(2, 1.0), rho).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(ApplyTest, TwoSiteDetectorMapsSingleExcitationToClick) {
  const DensityOperator out = apply(bns_block_channel(2), basis_dm(4, 0b01));
  EXPECT_LE(max_abs(out.matrix() - matrix_unit(2, 1, 1)), 1e-12);
}

TEST(ApplyTest, DimensionMismatch) {
  EXPECT_THROW(apply(identity_channel(2), DensityOperator::maximally_mixed(3)), DimensionError);
}

TEST(ChoiTest, IdentityChannelIsPhiPlus) {
  const ChoiState j = choi(identity_channel(3));
  EXPECT_LE(max_abs(j.matrix() - phi_plus(3)), 1e-15);
  EXPECT_NEAR(j.purity(), 1.0, 1e-14);
}

TEST(ChoiTest, DepolarizingClosedForm) {
  for (Index d : {2, 3}) {
    for (double lambda : {0.0, 0.3, 1.0, 1.1}) {
      const Matrix expected = lambda * Matrix::Identity(d * d, d * d) / static_cast<double>(d * d) +
                              (1.0 - lambda) * phi_plus(d);
      EXPECT_LE(max_abs(choi(depolarizing(d, lambda)).matrix() - expected), 1e-12) << d << " " << lambda;
    }
  }
}

TEST(ChoiTest, ReplacementChannelIsSigmaTensorMaximallyMixed) {
  const DensityOperator sigma = random_mixed_state(2, 21);
  const Index d = 3;
  const Matrix expected = kron(sigma.matrix(), Matrix::Identity(d, d) / static_cast<double>(d));
  EXPECT_LE(max_abs(choi(replacement_channel(sigma, d)).matrix() - expected), 1e-12);
}

TEST(ChoiTest, InputMarginalIsMaximallyMixed) {
  for (const QuantumChannel& ch : channel_zoo()) {
    const Matrix marg = partial_trace(ch.choi_matrix(), Keep::kSecond, {ch.dim_out(), ch.dim_in()});
    EXPECT_LE(max_abs(marg - Matrix::Identity(ch.dim_in(), ch.dim_in()) / static_cast<double>(ch.dim_in())), 1e-10);
  }
}

TEST(ChoiTest, CacheIsSafeUnderConcurrentFirstAccess) {
  const QuantumChannel ch = random_channel(6, 5, 7, 3);
  std::vector<const Matrix*> seen(8, nullptr);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < seen.size(); ++t) pool.emplace_back([&, t] { seen[t] = &ch.choi_matrix(); });
  for (auto& th : pool) th.join();
  for (const Matrix* p : seen) EXPECT_EQ(p, seen[0]);
  const QuantumChannel copy = ch;
  EXPECT_EQ(&copy.choi_matrix(), seen[0]);
}

TEST(ChoiToKrausTest, PhiPlusGivesSingleUnitaryKraus) {
  const QuantumChannel ch = choi_to_kraus(ChoiState(3, 3, phi_plus(3)));
  ASSERT_EQ(ch.kraus_rank(), 1u);
  const Matrix& k = ch.kraus()[0];
  const Complex phase = k(0, 0);
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
  EXPECT_LE(max_abs(k - phase * Matrix::Identity(3, 3)), 1e-12);
}

TEST(ChoiToKrausTest, DepolarizingRoundTrip) {
  const ChoiState j = choi(depolarizing(2, 0.5));
  const QuantumChannel back = choi_to_kraus(j);
  EXPECT_LE(back.kraus_rank(), 5u);
  EXPECT_LE(max_abs(choi(back).matrix() - j.matrix()), 1e-10);
}

TEST(ChoiToKrausTest, RandomRoundTrip) {
  for (int t = 0; t < 20; ++t) {
    const QuantumChannel ch = random_channel(1 + t % 4, 1 + t % 3, 1 + t % 5, 100 + t);
    EXPECT_LE(max_abs(choi(choi_to_kraus(choi(ch))).matrix() - ch.choi_matrix()), 1e-9);
  }
}

TEST(ChoiToKrausTest, NegativeEigenvalueRejected) {
  // Depolarizing Choi with the phi+ eigenvalue 1 - 3 lambda / 4 set to -0.01.
  const double lambda = 1.01 / 0.75;
  const Matrix j = lambda * Matrix::Identity(4, 4) / 4.0 + (1.0 - lambda) * phi_plus(2);
  Eigen::SelfAdjointEigenSolver<Matrix> es(j, Eigen::EigenvaluesOnly);
  ASSERT_NEAR(es.eigenvalues().minCoeff(), -0.01, 1e-12);
  EXPECT_THROW(ChoiState(2, 2, j), NotCptpError);
  EXPECT_THROW(channel_from_choi(2, 2, j), NotCptpError);
}

TEST(ChoiToKrausTest, NonTracePreservingRejected) {
  Matrix j = Matrix::Zero(4, 4);
  j(0, 0) = 1.0;  // |0><0| (x) |0><0|: input marginal diag(1, 0)
  EXPECT_THROW(ChoiState(2, 2, j), NotCptpError);
}

TEST(LinearEntropyTest, NamedValues) {
  EXPECT_NEAR(linear_entropy(identity_channel(5)), 0.0, 1e-14);
  EXPECT_NEAR(linear_entropy(depolarizing(2, 1.0)), 0.75, 1e-14);
  // Partial trace with d_E = 4 has entropy 1 - 1/d_E.
  EXPECT_NEAR(linear_entropy(partial_trace_channel(2, 4)), 1.0 - 0.25, 1e-14);
}

TEST(LinearEntropyTest, TwoRoutePurityIdentityOnRandomChannels) {
  for (int t = 0; t < 60; ++t) {
    const Index din = 1 + t % 8;
    const Index dout = 1 + (t * 5) % 8;
    const QuantumChannel ch = random_channel(din, dout, 1 + (t * 3) % 9, 500 + t);
    const PurityRoutes r = purity_routes(ch);
    const double din2 = static_cast<double>(din * din);
    EXPECT_NEAR(din2 * r.choi_purity, din2 * r.kraus_double_sum, 1e-9);
  }
}

TEST(LinearEntropyTest, InvariantUnderUnitaryPrePostProcessing) {
  for (int t = 0; t < 10; ++t) {
    const QuantumChannel ch = random_channel(3, 4, 3, 900 + t);
    const QuantumChannel u = unitary_channel(haar_unitary(4, 77 + t));
    const QuantumChannel v = unitary_channel(haar_unitary(3, 55 + t));
    EXPECT_NEAR(linear_entropy(compose(u, compose(ch, v))), linear_entropy(ch), 1e-10);
  }
}

TEST(ComposeTest, IdentityIsNeutral) {
  const QuantumChannel ch = random_channel(3, 2, 4, 9);
  EXPECT_TRUE(same_action(compose(identity_channel(2), ch), ch));
  EXPECT_TRUE(same_action(compose(ch, identity_channel(3)), ch));
}

TEST(ComposeTest, FullDepolarizationAfterAnythingIsConstant) {
  const QuantumChannel c = compose(depolarizing(2, 1.0), random_channel(3, 2, 4, 12));
  for (Index i = 0; i < 3; ++i) {
    const Matrix out = apply(c, basis_dm(3, i)).matrix();
    EXPECT_LE(max_abs(out - Matrix::Identity(2, 2) / 2.0), 1e-12);
  }
}

TEST(ComposeTest, DepolarizingParametersMultiply) {
  const double l1 = 0.3;
  const double l2 = 0.45;
  const QuantumChannel c = compose(depolarizing(3, l1), depolarizing(3, l2));
  const QuantumChannel expected = depolarizing(3, 1.0 - (1.0 - l1) * (1.0 - l2));
  EXPECT_TRUE(same_action(c, expected));
}

TEST(ComposeTest, DimensionMismatch) {
  EXPECT_THROW(compose(identity_channel(2), identity_channel(3)), DimensionError);
}

TEST(TensorTest, IdentitiesMultiply) {
  EXPECT_TRUE(same_action(tensor(identity_channel(2), identity_channel(2)), identity_channel(4)));
}

TEST(TensorTest, ProductInputsGiveProductOutputs) {
  const QuantumChannel a = random_channel(2, 3, 2, 31);
  const QuantumChannel b = depolarizing(2, 0.7);
  const DensityOperator ra = random_mixed_state(2, 32);
  const DensityOperator rb = random_mixed_state(2, 33);
  const Matrix out = apply(tensor(a, b), DensityOperator::from_trusted(kron(ra.matrix(), rb.matrix()))).matrix();
  EXPECT_LE(max_abs(out - kron(apply(a, ra).matrix(), apply(b, rb).matrix())), 1e-12);
}

TEST(TensorTest, TwoDetectorBlocksOnAlternatingString) {
  const QuantumChannel ch = tensor(bns_block_channel(2), bns_block_channel(2));
  const Matrix in = matrix_unit(16, 0b0101, 0b0101);
  const Matrix oracle_out = oracle::apply_detector(in, 4, 2);
  const Matrix out = apply_to_matrix(ch, in);
  EXPECT_LE(max_abs(out - oracle_out), 1e-12);
  EXPECT_LE(max_abs(out - matrix_unit(4, 0b11, 0b11)), 1e-12);
}

TEST(DepolarizingTest, ZeroIsIdentity) {
  EXPECT_TRUE(same_action(depolarizing(4, 0.0), identity_channel(4)));
}

TEST(DepolarizingTest, FullOnQutrit) {
  EXPECT_LE(max_abs(apply(depolarizing(3, 1.0), basis_dm(3, 0)).matrix() - Matrix::Identity(3, 3) / 3.0), 1e-14);
}

TEST(DepolarizingTest, HalfOnQubitEntropy) {
  // 1 - lambda (2 - lambda) / d^2 - (1 - lambda)^2 at d = 2, lambda = 1/2.
  const double closed = 1.0 - (0.5 * 1.5) / 4.0 - 0.25;
  EXPECT_DOUBLE_EQ(closed, 0.5625);
  EXPECT_NEAR(linear_entropy(depolarizing(2, 0.5)), closed, 1e-12);
}

TEST(DepolarizingTest, AboveOneWithinCpRange) {
  // Standard CP limit at d = 2 is 4/3.
  const QuantumChannel ch = depolarizing(2, 1.3);
  const DensityOperator out = apply(ch, basis_dm(2, 0));
  EXPECT_NEAR(out.matrix()(0, 0).real(), 1.3 / 2.0 + (1.0 - 1.3), 1e-12);
  EXPECT_NO_THROW(depolarizing(2, 4.0 / 3.0));
}

TEST(DepolarizingTest, OutsideCpRangeRejected) {
  EXPECT_THROW(depolarizing(2, 1.4), NotCptpError);
  EXPECT_THROW(depolarizing(3, 1.2), NotCptpError);
  EXPECT_THROW(depolarizing(2, -0.1), NotCptpError);
}

TEST(DepolarizingTest, RangeClassification) {
  const DepolarizingRange r = check_depolarizing_range(2, 1.2);
  EXPECT_NEAR(r.standard_upper, 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.quoted_upper, 1.0 + 1.0 / 9.0, 1e-15);
  EXPECT_TRUE(r.within_standard);
  EXPECT_FALSE(r.within_quoted);
  EXPECT_TRUE(check_depolarizing_range(3, 0.5).within_quoted);
}

TEST(StinespringTest, IdentityIsTrivialDilation) {
  const StinespringIsometry v = stinespring(identity_channel(3));
  EXPECT_EQ(v.dim_env, 1);
  EXPECT_LE(max_abs(v.isometry - Matrix::Identity(3, 3)), 1e-15);
}

void expect_reconstructs(const QuantumChannel& ch) {
  const StinespringIsometry v = stinespring(ch);
  EXPECT_LE(max_abs(v.isometry.adjoint() * v.isometry - Matrix::Identity(ch.dim_in(), ch.dim_in())), 1e-10);
  for (Index i = 0; i < ch.dim_in(); ++i) {
    for (Index j = 0; j < ch.dim_in(); ++j) {
      const Matrix e = matrix_unit(ch.dim_in(), i, j);
      const Matrix via_v = partial_trace(v.isometry * e * v.isometry.adjoint(), Keep::kFirst, {v.dim_out, v.dim_env});
      EXPECT_LE(max_abs(via_v - apply_to_matrix(ch, e)), 1e-10);
    }
  }
}

TEST(StinespringTest, PartialTraceIsAReshuffle) {
  const QuantumChannel ch = partial_trace_channel(2, 3);
  const StinespringIsometry v = stinespring(ch);
  EXPECT_EQ(v.dim_env, 3);
  // Square 0/1 matrix with one entry per row and column.
  ASSERT_EQ(v.isometry.rows(), v.isometry.cols());
  EXPECT_LE(max_abs(v.isometry * v.isometry.adjoint() - Matrix::Identity(6, 6)), 1e-15);
  for (Index r = 0; r < 6; ++r) EXPECT_NEAR(v.isometry.row(r).cwiseAbs().sum(), 1.0, 1e-15);
  expect_reconstructs(ch);
}

TEST(StinespringTest, DetectorBlockUsesChoiRank) {
  const QuantumChannel ch = bns_block_channel(2);
  Eigen::SelfAdjointEigenSolver<Matrix> es(ch.choi_matrix(), Eigen::EigenvaluesOnly);
  Index rank = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) rank += es.eigenvalues()(i) > 1e-12 ? 1 : 0;
  EXPECT_EQ(stinespring(ch).dim_env, rank);
  expect_reconstructs(ch);
  const DensityOperator rho = random_mixed_state(4, 8);
  EXPECT_LE(max_abs(apply(stinespring(ch), rho).matrix() - apply(ch, rho).matrix()), 1e-10);
}

TEST(LipschitzTest, IdentityIsOne) {
  EXPECT_NEAR(lipschitz_estimate(identity_channel(4), 3, 1), 1.0, 1e-9);
}

TEST(LipschitzTest, ConstantChannelIsZero) {
  EXPECT_NEAR(lipschitz_estimate(depolarizing(3, 1.0), 5, 2), 0.0, 1e-12);
}

TEST(LipschitzTest, NondecreasingInTrialsAndBoundedByOne) {
  const QuantumChannel ch = random_channel(4, 2, 3, 44);
  double prev = 0.0;
  for (int trials = 1; trials <= 6; ++trials) {
    const double est = lipschitz_estimate(ch, trials, 99);
    EXPECT_GE(est, prev);
    EXPECT_LE(est, 1.0);
    prev = est;
  }
  EXPECT_GT(prev, 0.0);
}

TEST(LipschitzTest, PartialDepolarizationContractsByOneMinusLambda) {
  // ||Lambda(X)||_1 = (1 - lambda) ||X||_1 for traceless X.
  EXPECT_NEAR(lipschitz_estimate(depolarizing(3, 0.4), 2, 5), 0.6, 1e-9);
}

TEST(ChannelJsonTest, RoundTripPreservesAction) {
  for (int t = 0; t < 5; ++t) {
    const QuantumChannel ch = random_channel(2 + t, 3, 2, 70 + t);
    const QuantumChannel back = channel_from_json(channel_to_json(ch));
    EXPECT_TRUE(same_action(ch, back, 1e-13));
    EXPECT_EQ(back.kraus_rank(), ch.kraus_rank());
  }
}

TEST(ChannelJsonTest, NestedRowsAccepted) {
  const QuantumChannel ch = channel_from_json(R"({"dim_in": 2, "dim_out": 2,
      "kraus": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]})");
  EXPECT_TRUE(same_action(ch, identity_channel(2)));
}

TEST(ChannelJsonTest, Errors) {
  EXPECT_THROW(channel_from_json("{not json"), FormatError);
  EXPECT_THROW(channel_from_json(R"({"dim_in": 2})"), FormatError);
  EXPECT_THROW(channel_from_json(R"({"dim_in": 2, "dim_out": 2, "kraus": [[[1,0],[0,0],[0,0]]]})"), FormatError);
  EXPECT_THROW(channel_from_json(R"({"dim_in": 1, "dim_out": 1, "kraus": [[[0.5, 0]]]})"), NotCptpError);
}

}  // namespace
}  // namespace gentyp
