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

#include "gentyp/bns.h"

#include <algorithm>
#include <cmath>

#include "gentyp/errors.h"

namespace gentyp {

namespace {

void require_blocks(int n_sites, int blocks) {
  if (n_sites < 1) throw DomainError("BnS: N must be >= 1, got " + std::to_string(n_sites));
  if (blocks < 1 || n_sites % blocks != 0) {
    throw DomainError("BnS: k=" + std::to_string(blocks) + " does not divide N=" + std::to_string(n_sites));
  }
}

void require_excitations(int n_sites, int n_excited) {
  if (n_excited < 0 || n_excited > n_sites) {
    throw DomainError("BnS: Np must be in [0, N], got Np=" + std::to_string(n_excited) +
                      " with N=" + std::to_string(n_sites));
  }
}

}  // namespace

Matrix bns_block_choi(int block_sites, double coherence_scale) {
  if (block_sites < 1 || block_sites > kMaxBlockSites) {
    throw SizeLimitError("bns_block_choi: block size must be in [1, " + std::to_string(kMaxBlockSites) +
                         "], got " + std::to_string(block_sites));
  }
  const Index d = Index{1} << block_sites;
  const double c = coherence_scale / std::sqrt(static_cast<double>(d - 1));
  const double inv_d = 1.0 / static_cast<double>(d);
  // J(o1 * d + s1, o2 * d + s2) = Lambda(|s1><s2|)(o1, o2) / d.
  Matrix j = Matrix::Zero(2 * d, 2 * d);
  j(0, 0) = inv_d;  // |0..0><0..0| -> |0><0|
  for (Index s = 1; s < d; ++s) {
    j(d + s, d + s) = inv_d;  // |s><s| -> |1><1|, diagonal only
    j(0, d + s) = c * inv_d;  // |0..0><s| -> c |0><1|
    j(d + s, 0) = c * inv_d;  // |s><0..0| -> c |1><0|
  }
  // |s'><s''| with s' != s'' both nonzero has no image.
  return j;
}

QuantumChannel bns_block_channel(int block_sites) {
  const Matrix j = bns_block_choi(block_sites);
  const Index d = Index{1} << block_sites;
  try {
    return channel_from_choi(d, 2, j);
  } catch (const NotCptpError& e) {
    throw ConsistencyError(std::string("bns_block_channel: Choi matrix rejected: ") + e.what());
  }
}

QuantumChannel bns_channel(int n_sites, int blocks) {
  require_blocks(n_sites, blocks);
  if (n_sites > kMaxDenseSites) {
    throw SizeLimitError("bns_channel: dense path limited to N <= " + std::to_string(kMaxDenseSites));
  }
  const QuantumChannel block = bns_block_channel(n_sites / blocks);
  QuantumChannel out = block;
  for (int b = 1; b < blocks; ++b) out = tensor(out, block);
  return out;
}

QuantumChannel bns_restricted_channel(const ExcitationSubspace& sub, int blocks) {
  const int n_sites = sub.n_sites();
  require_blocks(n_sites, blocks);
  if (n_sites > kMaxDenseSites) {
    throw SizeLimitError("bns_restricted_channel: dense path limited to N <= " + std::to_string(kMaxDenseSites));
  }
  const int n = n_sites / blocks;
  const Bitstring block_mask = (Bitstring{1} << n) - 1;
  const std::uint64_t labels = (std::uint64_t{1} << n) - 1;  // nonzero block patterns
  const double vacuum_amp = 1.0 / std::sqrt(static_cast<double>(labels));
  const Index d_out = Index{1} << blocks;

  // Block pattern of every basis string, block 0 = most significant.
  std::vector<std::vector<Bitstring>> patterns(static_cast<std::size_t>(sub.dim()));
  for (Index r = 0; r < sub.dim(); ++r) {
    const Bitstring s = sub.basis()[static_cast<std::size_t>(r)];
    auto& p = patterns[static_cast<std::size_t>(r)];
    p.resize(static_cast<std::size_t>(blocks));
    for (int b = 0; b < blocks; ++b) p[static_cast<std::size_t>(b)] = (s >> ((blocks - 1 - b) * n)) & block_mask;
  }

  std::vector<Matrix> kraus;
  std::vector<std::uint64_t> label(static_cast<std::size_t>(blocks), 1);
  while (true) {
    Matrix k = Matrix::Zero(d_out, sub.dim());
    bool nonzero = false;
    for (Index r = 0; r < sub.dim(); ++r) {
      const auto& p = patterns[static_cast<std::size_t>(r)];
      double amp = 1.0;
      Index out = 0;
      bool hit = true;
      for (int b = 0; b < blocks && hit; ++b) {
        const Bitstring pb = p[static_cast<std::size_t>(b)];
        out <<= 1;
        if (pb == 0) {
          amp *= vacuum_amp;
        } else if (pb == label[static_cast<std::size_t>(b)]) {
          out |= 1;
        } else {
          hit = false;
        }
      }
      if (hit) {
        k(out, r) = amp;
        nonzero = true;
      }
    }
    if (nonzero) kraus.push_back(std::move(k));
    // Mixed-radix increment over labels in [1, 2^n - 1]^k.
    int b = blocks - 1;
    while (b >= 0 && label[static_cast<std::size_t>(b)] == labels) {
      label[static_cast<std::size_t>(b)] = 1;
      --b;
    }
    if (b < 0) break;
    ++label[static_cast<std::size_t>(b)];
  }
  return QuantumChannel(sub.dim(), d_out, std::move(kraus));
}

mpz_class binomial(long a, long b) {
  if (b < 0 || a < 0 || b > a) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return out;
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

mpq_class BnSCanonicalSpectrum::weight(int m) const {
  if (m < m_min || m > m_max) return 0;
  return weights[static_cast<std::size_t>(m - m_min)];
}

mpq_class BnSCanonicalSpectrum::sector_probability(int m) const {
  return mpq_class(binomial(blocks, m)) * weight(m);
}

mpq_class BnSCanonicalSpectrum::total() const {
  mpq_class sum = 0;
  for (int m = m_min; m <= m_max; ++m) sum += sector_probability(m);
  return sum;
}

mpq_class ExactDistribution::at(int m) const {
  if (m < m_min || m > m_max()) return 0;
  return probabilities[static_cast<std::size_t>(m - m_min)];
}

mpq_class ExactDistribution::total() const {
  mpq_class sum = 0;
  for (const auto& p : probabilities) sum += p;
  return sum;
}

mpq_class ExactDistribution::mean() const {
  mpq_class sum = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) sum += probabilities[i] * (m_min + static_cast<long>(i));
  return sum;
}

std::vector<double> ExactDistribution::as_doubles() const {
  std::vector<double> out;
  out.reserve(probabilities.size());
  for (const auto& p : probabilities) out.push_back(p.get_d());
  return out;
}

mpz_class bns_sector_count(int n_sites, int n_excited, int blocks, int m) {
  require_blocks(n_sites, blocks);
  require_excitations(n_sites, n_excited);
  if (m < 0 || m > blocks) return 0;
  const long n = n_sites / blocks;
  mpz_class sum = 0;
  mpz_class choose_mq = 1;  // C(m, q), updated incrementally
  for (long q = 0; q <= m; ++q) {
    if (q > 0) {
      choose_mq *= (m - q + 1);
      choose_mq /= q;
    }
    const mpz_class term = choose_mq * binomial(n * q, n_excited);
    if ((m - q) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

BnSCanonicalSpectrum canonical_spectrum(int n_sites, int n_excited, int blocks) {
  require_blocks(n_sites, blocks);
  require_excitations(n_sites, n_excited);
  BnSCanonicalSpectrum spectrum;
  spectrum.n_sites = n_sites;
  spectrum.n_excited = n_excited;
  spectrum.blocks = blocks;
  spectrum.m_min = static_cast<int>(ceil_div(static_cast<long>(blocks) * n_excited, n_sites));
  spectrum.m_max = std::min(n_excited, blocks);
  const long n = n_sites / blocks;

  // C(n q, Np) for q = 0..m_max, shared by every sector.
  std::vector<mpz_class> filled(static_cast<std::size_t>(spectrum.m_max) + 1);
  for (long q = 0; q <= spectrum.m_max; ++q) filled[static_cast<std::size_t>(q)] = binomial(n * q, n_excited);
  const mpz_class d_r = binomial(n_sites, n_excited);

  spectrum.weights.reserve(static_cast<std::size_t>(spectrum.m_max - spectrum.m_min + 1));
  for (int m = spectrum.m_min; m <= spectrum.m_max; ++m) {
    mpz_class sum = 0;
    mpz_class choose_mq = 1;
    for (long q = 0; q <= m; ++q) {
      if (q > 0) {
        choose_mq *= (m - q + 1);
        choose_mq /= q;
      }
      const mpz_class term = choose_mq * filled[static_cast<std::size_t>(q)];
      if ((m - q) % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    mpq_class w(sum, d_r);
    w.canonicalize();
    spectrum.weights.push_back(std::move(w));
  }
  return spectrum;
}

DensityOperator canonical_state(const BnSCanonicalSpectrum& spectrum) {
  if (spectrum.blocks > kMaxDenseSites) {
    throw SizeLimitError("canonical_state: dense state limited to k <= " + std::to_string(kMaxDenseSites));
  }
  const Index d = Index{1} << spectrum.blocks;
  Matrix m = Matrix::Zero(d, d);
  std::vector<double> w(static_cast<std::size_t>(spectrum.blocks) + 1);
  for (int c = 0; c <= spectrum.blocks; ++c) w[static_cast<std::size_t>(c)] = spectrum.weight(c).get_d();
  for (Index s = 0; s < d; ++s) m(s, s) = w[static_cast<std::size_t>(excitation_count(static_cast<Bitstring>(s)))];
  return DensityOperator::from_trusted(std::move(m));
}

ExactDistribution energy_distribution_trace(int n_sites, int n_excited, int k) {
  if (n_sites < 1 || k < 0 || k > n_sites) {
    throw DomainError("energy_distribution_trace: need 0 <= k <= N, got k=" + std::to_string(k) +
                      " with N=" + std::to_string(n_sites));
  }
  require_excitations(n_sites, n_excited);
  ExactDistribution dist;
  dist.m_min = std::max(0, n_excited - (n_sites - k));
  const int m_max = std::min(k, n_excited);
  const mpz_class total = binomial(n_sites, n_excited);
  for (int m = dist.m_min; m <= m_max; ++m) {
    mpq_class p(binomial(k, m) * binomial(n_sites - k, n_excited - m), total);
    p.canonicalize();
    dist.probabilities.push_back(std::move(p));
  }
  return dist;
}

ExactDistribution energy_distribution_bns(int n_sites, int n_excited, int blocks) {
  const BnSCanonicalSpectrum spectrum = canonical_spectrum(n_sites, n_excited, blocks);
  ExactDistribution dist;
  dist.m_min = spectrum.m_min;
  for (int m = spectrum.m_min; m <= spectrum.m_max; ++m) dist.probabilities.push_back(spectrum.sector_probability(m));
  return dist;
}

mpq_class bns_mean_closed_form(int n_sites, int n_excited, int blocks) {
  require_blocks(n_sites, blocks);
  require_excitations(n_sites, n_excited);
  const long n = n_sites / blocks;
  mpq_class empty_block(binomial(n_sites - n, n_excited), binomial(n_sites, n_excited));
  empty_block.canonicalize();
  return mpq_class(blocks) * (mpq_class(1) - empty_block);
}

std::string numerator_string(const mpq_class& q) { return q.get_num().get_str(); }
std::string denominator_string(const mpq_class& q) { return q.get_den().get_str(); }

}  // namespace gentyp
