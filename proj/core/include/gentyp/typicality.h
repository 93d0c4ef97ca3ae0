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

// Monte Carlo canonical-typicality experiments: distances of Lambda(psi)
// to the canonical state Lambda(1/d_R) for Haar-random psi, compared with
// the purity-based mean bound and the Levy concentration tail bound.

#ifndef GENTYP_TYPICALITY_H
#define GENTYP_TYPICALITY_H

#include <cstdint>
#include <optional>
#include <variant>
#include <utility>
#include <vector>

#include "gentyp/channels.h"
#include "gentyp/restriction.h"

namespace gentyp {

/// Concentration constant for the Haar sphere S^{2 d_R - 1}: 2 / (9 pi^3).
double levy_constant();

/// Channel-independent Lipschitz constant: eta = 1.
struct EtaFixedOne {};

/// Lipschitz lower bound from lipschitz_estimate(). The tail comparison
/// becomes diagnostic only because the estimate may undershoot the true eta.
struct EtaEstimated {
  int trials = 32;
  std::uint64_t seed = 0;
};

using EtaMode = std::variant<EtaFixedOne, EtaEstimated>;

/// Partial-trace scenario data needed for the system/effective-environment
/// bound.
struct PartialTraceReference {
  Index system_dim = 1;
  double effective_environment_dim = 1.0;
};

struct ExperimentConfig {
  explicit ExperimentConfig(QuantumChannel ch) : channel(std::move(ch)) {}

  QuantumChannel channel;
  std::int64_t samples = 1000;
  std::uint64_t master_seed = 0;
  std::vector<double> epsilon_grid;
  EtaMode eta_mode = EtaFixedOne{};
  std::optional<PartialTraceReference> partial_trace;
  /// 0 picks GENTYP_THREADS from the environment, else 1. Never changes
  /// results.
  int threads = 0;

  /// DomainError when samples < 1 or an epsilon lies outside (0, 1].
  void validate() const;
};

struct TailRow {
  double epsilon = 0.0;
  double empirical_fraction = 0.0;
  double levy_bound = 0.0;  // clamped to [0, 1]
  double levy_bound_unclamped = 0.0;
};

struct TypicalityReport {
  Index d_r = 0;
  Index d_s = 0;
  std::int64_t samples = 0;
  std::uint64_t master_seed = 0;
  double mean_distance = 0.0;
  double std_distance = 0.0;
  double max_distance = 0.0;
  double entropy_bound = 0.0;
  std::optional<double> partial_trace_bound;
  double linear_entropy = 0.0;
  double eta_used = 1.0;
  bool eta_estimated = false;
  /// Set when eta came from the estimator; the Levy column is then not a
  /// guaranteed bound.
  bool tail_diagnostic_only = false;
  /// mean <= entropy_bound + 3 std / sqrt(samples).
  bool mean_within_bound = false;
  std::vector<TailRow> tail_table;
};

/// Lambda(1/d_R).
DensityOperator canonical_state(const QuantumChannel& ch);

/// D_i = trace_distance(Lambda(psi_i), canonical) with
/// psi_i = haar_sample(d_R, derive_seed(master_seed, i)), in index order.
std::vector<double> sample_distances(const ExperimentConfig& cfg);

/// (1/2) sqrt(d_S (1 - S_L)), d_S the declared output dimension.
double entropy_bound(const QuantumChannel& ch);

/// (1/2) sqrt(d_S / d_E^eff).
double partial_trace_bound(Index system_dim, double effective_environment_dim);
double partial_trace_bound(const ExcitationSubspace& sub, QubitSplit split);
/// Full bipartite space H_S (x) H_E, where d_E^eff = d_E.
double partial_trace_bound(Index system_dim, Index environment_dim);

/// (1/2) sqrt(lambda (2 - lambda) / d + d (1 - lambda)^2).
double depolarizing_bound(Index dim, double lambda);

/// 2 exp(-C d_R eps^2 / (4 eta^2)), unclamped. eta = 0 gives 0 for eps > 0.
double levy_tail_bound(Index d_r, double epsilon, double eta);

TypicalityReport run_experiment(const ExperimentConfig& cfg, std::vector<double>* distances = nullptr);

/// Resolves a requested thread count (0 = environment / default).
int resolve_thread_count(int requested);

}  // namespace gentyp

#endif  // GENTYP_TYPICALITY_H
