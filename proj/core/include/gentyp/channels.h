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

// CPTP maps held in Kraus form, with Choi and Stinespring forms derived on
// demand.
//
// Choi convention: J = (Lambda (x) id)(|phi+><phi+|) with
// |phi+> = sum_i |i>|i> / sqrt(dim_in). The output factor comes first, so
// J(s * dim_in + i, t * dim_in + j) = Lambda(|i><j|)(s, t) / dim_in.

#ifndef GENTYP_CHANNELS_H
#define GENTYP_CHANNELS_H

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "gentyp/qcore.h"

namespace gentyp {

class QuantumChannel {
 public:
  /// Validates that every Kraus operator is dim_out x dim_in and that
  /// sum_m K_m^dagger K_m = 1 within 1e-10 (NotCptpError otherwise).
  /// Families longer than dim_in * dim_out are replaced by the minimal
  /// family extracted from the Choi matrix.
  QuantumChannel(Index dim_in, Index dim_out, std::vector<Matrix> kraus);

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  std::size_t kraus_rank() const { return kraus_.size(); }

  /// Choi matrix, computed once and shared between copies.
  const Matrix& choi_matrix() const;

 private:
  friend QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner);
  friend QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);
  struct TrustedTag {};
  QuantumChannel(Index dim_in, Index dim_out, std::vector<Matrix> kraus, TrustedTag);

  struct ChoiCache {
    std::once_flag once;
    Matrix matrix;
  };

  Index dim_in_;
  Index dim_out_;
  std::vector<Matrix> kraus_;
  std::shared_ptr<ChoiCache> choi_cache_;
};

/// Choi state of a channel: a density operator on H_out (x) H_in whose
/// marginal on the input factor is 1/dim_in.
class ChoiState {
 public:
  /// Validates hermiticity, unit trace, eigenvalues >= -1e-10 and the
  /// input marginal; any failure is a NotCptpError.
  ChoiState(Index dim_in, Index dim_out, Matrix matrix);

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const Matrix& matrix() const { return matrix_; }
  double purity() const { return matrix_.squaredNorm(); }
  DensityOperator as_density_operator() const { return DensityOperator::from_trusted(matrix_); }

 private:
  friend ChoiState choi(const QuantumChannel& ch);
  struct TrustedTag {};
  ChoiState(Index dim_in, Index dim_out, Matrix matrix, TrustedTag);

  Index dim_in_;
  Index dim_out_;
  Matrix matrix_;
};

struct StinespringIsometry {
  /// Rows indexed s * dim_env + e (output first, environment second).
  Matrix isometry;
  Index dim_in = 1;
  Index dim_out = 1;
  Index dim_env = 1;
};

/// Both sides of tr(J^2): the Choi purity and
/// (1 / dim_in^2) sum_{m,n} |tr(K_m K_n^dagger)|^2.
struct PurityRoutes {
  double choi_purity = 0.0;
  double kraus_double_sum = 0.0;

  double discrepancy() const;
};

/// Result of checking a depolarizing parameter against the two candidate
/// complete-positivity ranges, 1 + 1/(d^2-1) and 1 + 1/(d^2-1)^2.
struct DepolarizingRange {
  double standard_upper = 0.0;
  double quoted_upper = 0.0;
  bool within_standard = false;
  bool within_quoted = false;
};

// Application.
DensityOperator apply(const QuantumChannel& ch, const DensityOperator& rho);
DensityOperator apply(const QuantumChannel& ch, const StateVector& psi);
/// Action on an arbitrary operator (matrix units, differences).
Matrix apply_to_matrix(const QuantumChannel& ch, const Matrix& op);

/// True when both channels act identically on every matrix unit.
bool same_action(const QuantumChannel& a, const QuantumChannel& b, double tol = 1e-10);

// Representations.
ChoiState choi(const QuantumChannel& ch);
QuantumChannel choi_to_kraus(const ChoiState& j);
/// Kraus extraction straight from a Choi matrix. Eigenpairs with eigenvalue
/// above 1e-12 become K = sqrt(dim_in * mu) * unvec(u).
QuantumChannel channel_from_choi(Index dim_in, Index dim_out, const Matrix& j);
StinespringIsometry stinespring(const QuantumChannel& ch);
/// tr_env(V rho V^dagger).
DensityOperator apply(const StinespringIsometry& v, const DensityOperator& rho);

// Entropy.
PurityRoutes purity_routes(const QuantumChannel& ch);
/// 1 - tr(J^2). Throws ConsistencyError when the two purity routes
/// disagree by more than 1e-8.
double linear_entropy(const QuantumChannel& ch);

// Algebra.
QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner);
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);

// Constructors.
QuantumChannel identity_channel(Index dim);
QuantumChannel unitary_channel(const Matrix& u);
/// O -> lambda tr(O) 1/d + (1 - lambda) O. Weyl-operator Kraus family for
/// 0 <= lambda <= 1, Choi route otherwise (NotCptpError if not CP).
QuantumChannel depolarizing(Index dim, double lambda);
DepolarizingRange check_depolarizing_range(Index dim, double lambda);
/// tr_E on H_S (x) H_E.
QuantumChannel partial_trace_channel(Index dim_s, Index dim_e);
/// rho -> tr(rho) sigma.
QuantumChannel replacement_channel(const DensityOperator& sigma, Index dim_in);
/// Random channel from a Haar-like isometry with `rank` Kraus operators.
QuantumChannel random_channel(Index dim_in, Index dim_out, Index rank, std::uint64_t seed);

/// Lower bound on the trace-norm contraction constant: maximizes
/// ||Lambda(psi) - Lambda(phi)||_1 / 2 over orthogonal pure pairs with a
/// hill-climbing refinement per trial. Trial t uses derive_seed(seed, t),
/// so the estimate is nondecreasing in `trials`.
double lipschitz_estimate(const QuantumChannel& ch, int trials, std::uint64_t seed);

}  // namespace gentyp

#endif  // GENTYP_CHANNELS_H
