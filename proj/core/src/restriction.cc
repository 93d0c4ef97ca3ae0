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

#include <algorithm>
#include <bit>
#include <map>

#include "gentyp/errors.h"

namespace gentyp {

Index ExcitationSubspace::index_of(Bitstring s) const {
  const auto it = std::lower_bound(basis_.begin(), basis_.end(), s);
  if (it == basis_.end() || *it != s) return -1;
  return static_cast<Index>(it - basis_.begin());
}

ExcitationSubspace enumerate_basis(int n_sites, int n_excited) {
  if (n_sites < 1 || n_sites > kMaxEnumerationSites) {
    throw DomainError("enumerate_basis: N must be in [1, " + std::to_string(kMaxEnumerationSites) +
                      "], got " + std::to_string(n_sites));
  }
  if (n_excited < 0 || n_excited > n_sites) {
    throw DomainError("enumerate_basis: Np must be in [0, N], got Np=" + std::to_string(n_excited) +
                      " with N=" + std::to_string(n_sites));
  }
  std::vector<Bitstring> basis;
  const Bitstring limit = Bitstring{1} << n_sites;
  if (n_excited == 0) {
    basis.push_back(0);
  } else {
    // Gosper's hack walks same-weight integers in increasing order.
    Bitstring s = (Bitstring{1} << n_excited) - 1;
    while (s < limit) {
      basis.push_back(s);
      const Bitstring c = s & (~s + 1);
      const Bitstring r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  return ExcitationSubspace(n_sites, n_excited, std::move(basis));
}

namespace {

void require_dense(const ExcitationSubspace& sub, const char* what) {
  if (sub.n_sites() > kMaxDenseSites) {
    throw SizeLimitError(std::string(what) + ": dense full-space path refused for N=" +
                         std::to_string(sub.n_sites()) + " > " + std::to_string(kMaxDenseSites) +
                         "; use the exact combinatorial routines instead");
  }
}

}  // namespace

EmbeddingIsometry embedding(const ExcitationSubspace& sub) {
  require_dense(sub, "embedding");
  const Index full = Index{1} << sub.n_sites();
  EmbeddingIsometry w{Matrix::Zero(full, sub.dim())};
  for (Index r = 0; r < sub.dim(); ++r) w.matrix(static_cast<Index>(sub.basis()[static_cast<std::size_t>(r)]), r) = 1.0;
  return w;
}

DensityOperator microcanonical(const ExcitationSubspace& sub) {
  return DensityOperator::maximally_mixed(sub.dim());
}

DensityOperator embedded_microcanonical(const ExcitationSubspace& sub) {
  require_dense(sub, "embedded_microcanonical");
  const Index full = Index{1} << sub.n_sites();
  Matrix m = Matrix::Zero(full, full);
  const double w = 1.0 / static_cast<double>(sub.dim());
  for (Bitstring s : sub.basis()) m(static_cast<Index>(s), static_cast<Index>(s)) = w;
  return DensityOperator::from_trusted(std::move(m));
}

QuantumChannel restrict_channel(const QuantumChannel& ch, const ExcitationSubspace& sub) {
  require_dense(sub, "restrict_channel");
  const Index full = Index{1} << sub.n_sites();
  if (ch.dim_in() != full) {
    throw DimensionError("restrict_channel: channel input dimension " + std::to_string(ch.dim_in()) +
                         " is not 2^N = " + std::to_string(full));
  }
  // K W selects the basis columns of K.
  std::vector<Matrix> kraus;
  kraus.reserve(ch.kraus_rank());
  for (const Matrix& k : ch.kraus()) {
    Matrix kw(ch.dim_out(), sub.dim());
    for (Index r = 0; r < sub.dim(); ++r) kw.col(r) = k.col(static_cast<Index>(sub.basis()[static_cast<std::size_t>(r)]));
    if (kw.cwiseAbs().maxCoeff() == 0.0) continue;
    kraus.push_back(std::move(kw));
  }
  return QuantumChannel(sub.dim(), ch.dim_out(), std::move(kraus));
}

double effective_environment_dimension(const ExcitationSubspace& sub, QubitSplit split) {
  if (split.system_qubits < 0 || split.environment_qubits < 0 ||
      split.system_qubits + split.environment_qubits != sub.n_sites()) {
    throw DimensionError("effective_environment_dimension: split " + std::to_string(split.system_qubits) +
                         "|" + std::to_string(split.environment_qubits) + " does not cover N=" +
                         std::to_string(sub.n_sites()));
  }
  // The microcanonical state is diagonal, so tr_S of it is diagonal with
  // weight (#basis strings sharing the environment bits) / d_R.
  const Bitstring env_mask = (Bitstring{1} << split.environment_qubits) - 1;
  std::map<Bitstring, double> counts;
  for (Bitstring s : sub.basis()) counts[s & env_mask] += 1.0;
  const double d_r = static_cast<double>(sub.dim());
  double purity = 0.0;
  for (const auto& [env, c] : counts) purity += (c / d_r) * (c / d_r);
  return 1.0 / purity;
}

double effective_environment_dimension(const DensityOperator& microcanonical_state,
                                       BipartiteDims system_environment) {
  const Matrix omega = partial_trace(microcanonical_state.matrix(), Keep::kSecond, system_environment);
  return 1.0 / omega.squaredNorm();
}

int excitation_count(Bitstring s) { return std::popcount(s); }

int excitation_count(std::string_view bits) {
  int count = 0;
  for (char c : bits) {
    if (c == '1') {
      ++count;
    } else if (c != '0') {
      throw DomainError("excitation_count: '" + std::string(bits) + "' is not a bitstring");
    }
  }
  return count;
}

Bitstring parse_bitstring(std::string_view bits) {
  if (bits.empty() || bits.size() > 64) throw DomainError("parse_bitstring: length must be in [1, 64]");
  Bitstring s = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("parse_bitstring: '" + std::string(bits) + "' is not a bitstring");
    s = (s << 1) | static_cast<Bitstring>(c == '1');
  }
  return s;
}

std::string format_bitstring(Bitstring s, int n_sites) {
  std::string out(static_cast<std::size_t>(n_sites), '0');
  for (int q = 0; q < n_sites; ++q) {
    if ((s >> (n_sites - 1 - q)) & 1U) out[static_cast<std::size_t>(q)] = '1';
  }
  return out;
}

}  // namespace gentyp
