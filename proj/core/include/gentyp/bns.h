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

// Blurred-and-saturated detector: a block of n two-level sites seen as one
// effective site that reads |1> whenever any site in the block is excited.
//
// Dense channels cover small N. The canonical state and the |s|
// distributions are computed in exact rational arithmetic and stay exact
// at N = 10000.

#ifndef GENTYP_BNS_H
#define GENTYP_BNS_H

#include <string>
#include <vector>

#include <gmpxx.h>

#include "gentyp/channels.h"
#include "gentyp/restriction.h"

namespace gentyp {

inline constexpr int kMaxBlockSites = 10;

/// Choi matrix of the n -> 1 block map, built entry by entry from its
/// action on matrix units. `coherence_scale` multiplies the coherence factor
/// 1/sqrt(2^n - 1); values above 1 break complete positivity.
Matrix bns_block_choi(int block_sites, double coherence_scale = 1.0);

/// n -> 1 block channel (Choi first, then Kraus extraction). n <= 10.
QuantumChannel bns_block_channel(int block_sites);

/// k-fold tensor power of the (N/k) -> 1 block channel on the full 2^N
/// space. Requires k | N and N <= kMaxDenseSites.
QuantumChannel bns_channel(int n_sites, int blocks);

/// The same map restricted to a fixed-excitation subspace, built without
/// materializing the full-space Kraus family. Uses the sparse block family
/// K_t = |0><0...0| / sqrt(2^n - 1) + |1><t|, t != 0, and drops operators
/// that vanish on the subspace.
QuantumChannel bns_restricted_channel(const ExcitationSubspace& sub, int blocks);

/// C(a, b), zero when b < 0 or b > a.
mpz_class binomial(long a, long b);
/// ceil(a / b) for a >= 0, b > 0.
long ceil_div(long a, long b);

/// Exact per-string weights of the canonical state, one entry per sector
/// m = |s| in [m_min, m_max]. The state is sum_m w_m Pi_m.
struct BnSCanonicalSpectrum {
  int n_sites = 0;
  int n_excited = 0;
  int blocks = 0;
  int m_min = 0;
  int m_max = -1;
  std::vector<mpq_class> weights;

  /// w_m, zero outside [m_min, m_max].
  mpq_class weight(int m) const;
  /// C(k, m) w_m.
  mpq_class sector_probability(int m) const;
  /// sum_m C(k, m) w_m; equals 1 exactly.
  mpq_class total() const;
};

/// Probability vector over m in [m_min, m_max], exact.
struct ExactDistribution {
  int m_min = 0;
  std::vector<mpq_class> probabilities;

  int m_max() const { return m_min + static_cast<int>(probabilities.size()) - 1; }
  mpq_class at(int m) const;
  mpq_class total() const;
  mpq_class mean() const;
  std::vector<double> as_doubles() const;
};

/// Number of N/k-site block fillings with Np excitations in which exactly
/// the m chosen blocks are occupied: sum_q C(m,q) C((N/k) q, Np) (-1)^(m-q).
mpz_class bns_sector_count(int n_sites, int n_excited, int blocks, int m);

/// Requires 1 <= k, k | N, 0 <= Np <= N.
BnSCanonicalSpectrum canonical_spectrum(int n_sites, int n_excited, int blocks);

/// Dense diagonal canonical state on k effective sites (k <= 14).
DensityOperator canonical_state(const BnSCanonicalSpectrum& spectrum);

/// Hypergeometric distribution of |s| on k sites after tracing out N - k.
ExactDistribution energy_distribution_trace(int n_sites, int n_excited, int k);

/// Distribution of |s| on the k effective sites: C(k, m) w_m.
ExactDistribution energy_distribution_bns(int n_sites, int n_excited, int blocks);

/// Closed form of the detector-count mean, k (1 - C(N - N/k, Np) / C(N, Np)).
mpq_class bns_mean_closed_form(int n_sites, int n_excited, int blocks);

/// Decimal string of an exact rational's numerator / denominator.
std::string numerator_string(const mpq_class& q);
std::string denominator_string(const mpq_class& q);

}  // namespace gentyp

#endif  // GENTYP_BNS_H
