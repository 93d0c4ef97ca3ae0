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

#include "gentyp/restriction.h"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "gentyp/bns.h"
#include "gentyp/errors.h"
#include "gentyp/typicality.h"
#include "oracles.h"

namespace gentyp {
namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(EnumerateBasisTest, TwoSitesOneExcitation) {
  const ExcitationSubspace sub = enumerate_basis(2, 1);
  ASSERT_EQ(sub.dim(), 2);
  EXPECT_EQ(sub.basis()[0], 0b01u);
  EXPECT_EQ(sub.basis()[1], 0b10u);
  EXPECT_EQ(format_bitstring(sub.basis()[0], 2), "01");
}

TEST(EnumerateBasisTest, DimensionsMatchBinomials) {
  EXPECT_EQ(enumerate_basis(4, 2).dim(), 6);
  EXPECT_EQ(enumerate_basis(8, 4).dim(), 70);
  for (int n = 1; n <= 12; ++n) {
    for (int np = 0; np <= n; ++np) {
      const ExcitationSubspace sub = enumerate_basis(n, np);
      ASSERT_EQ(static_cast<std::uint64_t>(sub.dim()), oracle::choose(n, np));
      for (std::size_t i = 0; i < sub.basis().size(); ++i) {
        EXPECT_EQ(std::popcount(sub.basis()[i]), np);
        if (i > 0) EXPECT_LT(sub.basis()[i - 1], sub.basis()[i]);
        EXPECT_EQ(sub.index_of(sub.basis()[i]), static_cast<Index>(i));
      }
    }
  }
}

TEST(EnumerateBasisTest, OutOfRange) {
  EXPECT_THROW(enumerate_basis(4, 5), DomainError);
  EXPECT_THROW(enumerate_basis(4, -1), DomainError);
  EXPECT_THROW(enumerate_basis(kMaxEnumerationSites + 1, 1), DomainError);
  EXPECT_EQ(enumerate_basis(4, 2).index_of(0b0111), -1);
}

TEST(MicrocanonicalTest, TwoSites) {
  const ExcitationSubspace sub = enumerate_basis(2, 1);
  EXPECT_LE(max_abs(microcanonical(sub).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(MicrocanonicalTest, PurityIsInverseDimension) {
  for (auto [n, np] : {std::pair{4, 2}, std::pair{8, 4}, std::pair{6, 1}}) {
    const ExcitationSubspace sub = enumerate_basis(n, np);
    EXPECT_NEAR(microcanonical(sub).purity(), 1.0 / static_cast<double>(sub.dim()), 1e-14);
    EXPECT_NEAR(embedded_microcanonical(sub).purity(), 1.0 / static_cast<double>(sub.dim()), 1e-14);
  }
}

TEST(MicrocanonicalTest, EmbeddedAndReducedToFirstQubit) {
  const ExcitationSubspace sub = enumerate_basis(2, 1);
  const Matrix reduced = partial_trace(embedded_microcanonical(sub), Keep::kFirst, {2, 2}).matrix();
  EXPECT_LE(max_abs(reduced - Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(EmbeddingTest, IsAnIsometryOntoTheSector) {
  const ExcitationSubspace sub = enumerate_basis(5, 2);
  const Matrix& w = embedding(sub).matrix;
  EXPECT_LE(max_abs(w.adjoint() * w - Matrix::Identity(sub.dim(), sub.dim())), 1e-15);
  for (Index r = 0; r < sub.dim(); ++r) EXPECT_EQ(w(static_cast<Index>(sub.basis()[r]), r), Complex(1.0));
  EXPECT_THROW(embedding(enumerate_basis(kMaxDenseSites + 1, 1)), SizeLimitError);
}

TEST(RestrictChannelTest, IdentityRestrictedIsEmbedding) {
  const ExcitationSubspace sub = enumerate_basis(4, 2);
  const QuantumChannel r = restrict_channel(identity_channel(16), sub);
  EXPECT_EQ(r.dim_in(), 6);
  EXPECT_EQ(r.dim_out(), 16);
  EXPECT_NEAR(choi(r).purity(), 1.0, 1e-14);
  const Matrix& w = embedding(sub).matrix;
  for (Index i = 0; i < 6; ++i) {
    const Matrix e = matrix_unit(6, i, (i + 1) % 6);
    EXPECT_LE(max_abs(apply_to_matrix(r, e) - w * e * w.adjoint()), 1e-15);
  }
}

TEST(RestrictChannelTest, TwoSiteDetectorIsConstant) {
  const QuantumChannel r = restrict_channel(bns_block_channel(2), enumerate_basis(2, 1));
  for (Index i = 0; i < 2; ++i) {
    EXPECT_LE(max_abs(apply(r, DensityOperator::from_trusted(matrix_unit(2, i, i))).matrix() - matrix_unit(2, 1, 1)),
              1e-12);
  }
}

TEST(RestrictChannelTest, DimensionMismatch) {
  EXPECT_THROW(restrict_channel(identity_channel(8), enumerate_basis(4, 2)), DimensionError);
}

TEST(EffectiveEnvironmentTest, PureEnvironmentWhenEmpty) {
  EXPECT_NEAR(effective_environment_dimension(enumerate_basis(2, 0), {1, 1}), 1.0, 1e-15);
}

TEST(EffectiveEnvironmentTest, FullBipartiteSpace) {
  const DensityOperator e = DensityOperator::maximally_mixed(8);
  EXPECT_NEAR(effective_environment_dimension(e, {2, 4}), 4.0, 1e-12);
}

TEST(EffectiveEnvironmentTest, FourSitesTwoExcitations) {
  EXPECT_NEAR(effective_environment_dimension(enumerate_basis(4, 2), {2, 2}), 3.6, 1e-12);
}

TEST(EffectiveEnvironmentTest, CombinatorialMatchesDense) {
  for (int n = 2; n <= 8; ++n) {
    for (int np = 0; np <= n; ++np) {
      const ExcitationSubspace sub = enumerate_basis(n, np);
      for (int s = 1; s < n; ++s) {
        const double dense = effective_environment_dimension(embedded_microcanonical(sub),
                                                             {Index{1} << s, Index{1} << (n - s)});
        EXPECT_NEAR(effective_environment_dimension(sub, {s, n - s}), dense, 1e-10) << n << " " << np << " " << s;
      }
    }
  }
}

TEST(EffectiveEnvironmentTest, SplitMismatch) {
  EXPECT_THROW(effective_environment_dimension(enumerate_basis(4, 2), {1, 2}), DimensionError);
}

TEST(ReductionIdentityTest, RestrictedPartialTraceMatchesEnvironmentPurity) {
  // tr(J^2) of the restricted tr_E channel equals 1/d_E^eff, and the two
  // bounds coincide.
  for (int n = 2; n <= 8; ++n) {
    for (int np = 1; np < n; ++np) {
      const ExcitationSubspace sub = enumerate_basis(n, np);
      for (int s = 1; s < n; ++s) {
        const QubitSplit split{s, n - s};
        const QuantumChannel ch =
            restrict_channel(partial_trace_channel(Index{1} << s, Index{1} << (n - s)), sub);
        const double d_eff = effective_environment_dimension(sub, split);
        EXPECT_NEAR(choi(ch).purity(), 1.0 / d_eff, 1e-10);
        EXPECT_NEAR(entropy_bound(ch), partial_trace_bound(sub, split), 1e-10);
      }
    }
  }
}

TEST(ExcitationCountTest, Examples) {
  EXPECT_EQ(excitation_count("0000"), 0);
  EXPECT_EQ(excitation_count("1111"), 4);
  EXPECT_EQ(excitation_count("0110"), 2);
  EXPECT_EQ(excitation_count(parse_bitstring("0110")), 2);
  EXPECT_EQ(parse_bitstring("0110"), 0b0110u);
  EXPECT_THROW(excitation_count("01a"), DomainError);
}

TEST(RestrictedHaarTest, FirstMomentIsMicrocanonical) {
  const ExcitationSubspace sub = enumerate_basis(4, 2);
  constexpr int kSamples = 20000;
  Matrix acc = Matrix::Zero(sub.dim(), sub.dim());
  for (int i = 0; i < kSamples; ++i) acc += haar_sample(sub.dim(), derive_seed(3, i)).projector();
  acc /= kSamples;
  EXPECT_LE(max_abs(acc - microcanonical(sub).matrix()), 5.0 / std::sqrt(kSamples));
}

}  // namespace
}  // namespace gentyp
