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

// Fixed-excitation subspaces of N qubits and their embedding into the
// full 2^N-dimensional space.

#ifndef GENTYP_RESTRICTION_H
#define GENTYP_RESTRICTION_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gentyp/channels.h"
#include "gentyp/qcore.h"

namespace gentyp {

/// Bitstring packed into an integer; qubit 0 is the most significant of the
/// n_sites used bits, so ascending integers are lexicographic bitstrings.
using Bitstring = std::uint64_t;

inline constexpr int kMaxEnumerationSites = 30;
inline constexpr int kMaxDenseSites = 14;

class ExcitationSubspace {
 public:
  int n_sites() const { return n_sites_; }
  int n_excited() const { return n_excited_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  const std::vector<Bitstring>& basis() const { return basis_; }
  /// Position of `s` in the basis, or -1 when |s| != n_excited.
  Index index_of(Bitstring s) const;

 private:
  friend ExcitationSubspace enumerate_basis(int n_sites, int n_excited);
  ExcitationSubspace(int n_sites, int n_excited, std::vector<Bitstring> basis)
      : n_sites_(n_sites), n_excited_(n_excited), basis_(std::move(basis)) {}

  int n_sites_;
  int n_excited_;
  std::vector<Bitstring> basis_;
};

/// W : C^{d_R} -> C^{2^N}, column r equal to |basis[r]>.
struct EmbeddingIsometry {
  Matrix matrix;
};

/// Split of the N qubits into a leading system block and a trailing
/// environment block.
struct QubitSplit {
  int system_qubits = 0;
  int environment_qubits = 0;
};

/// All N-bit strings of Hamming weight Np in ascending (lexicographic)
/// order. Requires 0 <= Np <= N <= kMaxEnumerationSites.
ExcitationSubspace enumerate_basis(int n_sites, int n_excited);

/// SizeLimitError for N > kMaxDenseSites.
EmbeddingIsometry embedding(const ExcitationSubspace& sub);

/// 1/d_R in restricted coordinates.
DensityOperator microcanonical(const ExcitationSubspace& sub);

/// The microcanonical state written in the full 2^N space, W E_R W^dagger.
DensityOperator embedded_microcanonical(const ExcitationSubspace& sub);

/// {K_m W}: a channel on the restricted space. Requires dim_in = 2^N.
QuantumChannel restrict_channel(const QuantumChannel& ch, const ExcitationSubspace& sub);

/// 1 / tr(Omega^2) with Omega = tr_S of the embedded microcanonical state.
/// Computed combinatorially, so it works for any N the basis allows.
double effective_environment_dimension(const ExcitationSubspace& sub, QubitSplit split);

/// Same quantity for an arbitrary microcanonical state on H_S (x) H_E.
double effective_environment_dimension(const DensityOperator& microcanonical_state,
                                       BipartiteDims system_environment);

int excitation_count(Bitstring s);
/// Counts '1' characters; throws DomainError on characters other than 0/1.
int excitation_count(std::string_view bits);
/// Parses "0110" into a Bitstring (qubit 0 first).
Bitstring parse_bitstring(std::string_view bits);
std::string format_bitstring(Bitstring s, int n_sites);

}  // namespace gentyp

#endif  // GENTYP_RESTRICTION_H
