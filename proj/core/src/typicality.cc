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

#include "gentyp/typicality.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "gentyp/errors.h"

namespace gentyp {

double levy_constant() {
  const double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
  return 2.0 / (9.0 * pi3);
}

void ExperimentConfig::validate() const {
  if (samples < 1) throw DomainError("experiment: samples must be >= 1");
  for (double eps : epsilon_grid) {
    if (!(eps > 0.0 && eps <= 1.0)) {
      throw DomainError("experiment: epsilon " + std::to_string(eps) + " outside (0, 1]");
    }
  }
  if (const auto* est = std::get_if<EtaEstimated>(&eta_mode); est && est->trials < 1) {
    throw DomainError("experiment: estimated eta needs trials >= 1");
  }
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GENTYP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(std::min<long>(v, 256));
  }
  return 1;
}

DensityOperator canonical_state(const QuantumChannel& ch) {
  return apply(ch, DensityOperator::maximally_mixed(ch.dim_in()));
}

std::vector<double> sample_distances(const ExperimentConfig& cfg) {
  cfg.validate();
  const QuantumChannel& ch = cfg.channel;
  const DensityOperator omega = canonical_state(ch);
  const auto n = static_cast<std::size_t>(cfg.samples);
  std::vector<double> out(n, 0.0);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const StateVector psi = haar_sample(ch.dim_in(), derive_seed(cfg.master_seed, i));
      out[i] = trace_distance(apply(ch, psi), omega);
    }
  };

  const auto threads = static_cast<std::size_t>(std::min<std::int64_t>(resolve_thread_count(cfg.threads), cfg.samples));
  if (threads <= 1) {
    work(0, n);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(n, t * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&, t, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

double entropy_bound(const QuantumChannel& ch) {
  const double s_l = linear_entropy(ch);
  const double purity = std::max(0.0, 1.0 - s_l);
  return 0.5 * std::sqrt(static_cast<double>(ch.dim_out()) * purity);
}

double partial_trace_bound(Index system_dim, double effective_environment_dim) {
  if (system_dim < 1 || !(effective_environment_dim > 0.0)) {
    throw DomainError("partial_trace_bound: dimensions must be positive");
  }
  return 0.5 * std::sqrt(static_cast<double>(system_dim) / effective_environment_dim);
}

double partial_trace_bound(const ExcitationSubspace& sub, QubitSplit split) {
  const double d_eff = effective_environment_dimension(sub, split);
  return partial_trace_bound(Index{1} << split.system_qubits, d_eff);
}

double partial_trace_bound(Index system_dim, Index environment_dim) {
  return partial_trace_bound(system_dim, static_cast<double>(environment_dim));
}

double depolarizing_bound(Index dim, double lambda) {
  if (dim < 1) throw DimensionError("depolarizing_bound: dimension must be >= 1");
  const double d = static_cast<double>(dim);
  const double inner = lambda * (2.0 - lambda) / d + d * (1.0 - lambda) * (1.0 - lambda);
  return 0.5 * std::sqrt(std::max(0.0, inner));
}

double levy_tail_bound(Index d_r, double epsilon, double eta) {
  if (eta < 0.0) throw DomainError("levy_tail_bound: eta must be >= 0");
  if (eta == 0.0) return epsilon > 0.0 ? 0.0 : 2.0;
  const double exponent = levy_constant() * static_cast<double>(d_r) * epsilon * epsilon / (4.0 * eta * eta);
  return 2.0 * std::exp(-exponent);
}

TypicalityReport run_experiment(const ExperimentConfig& cfg, std::vector<double>* distances) {
  cfg.validate();
  const std::vector<double> d = sample_distances(cfg);
  TypicalityReport rep;
  rep.d_r = cfg.channel.dim_in();
  rep.d_s = cfg.channel.dim_out();
  rep.samples = cfg.samples;
  rep.master_seed = cfg.master_seed;

  double sum = 0.0;
  double max_d = 0.0;
  for (double x : d) {
    sum += x;
    max_d = std::max(max_d, x);
  }
  const double n = static_cast<double>(d.size());
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  rep.mean_distance = mean;
  rep.std_distance = d.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  rep.max_distance = max_d;

  rep.linear_entropy = linear_entropy(cfg.channel);
  rep.entropy_bound = entropy_bound(cfg.channel);
  if (cfg.partial_trace) {
    rep.partial_trace_bound =
        partial_trace_bound(cfg.partial_trace->system_dim, cfg.partial_trace->effective_environment_dim);
  }
  rep.mean_within_bound = rep.mean_distance <= rep.entropy_bound + 3.0 * rep.std_distance / std::sqrt(n);

  if (const auto* est = std::get_if<EtaEstimated>(&cfg.eta_mode)) {
    rep.eta_used = lipschitz_estimate(cfg.channel, est->trials, est->seed);
    rep.eta_estimated = true;
    rep.tail_diagnostic_only = true;
  } else {
    rep.eta_used = 1.0;
  }

  // Two-sided deviations from the empirical mean stand in for deviations
  // from the exact Haar mean.
  for (double eps : cfg.epsilon_grid) {
    std::int64_t exceed = 0;
    for (double x : d)
      if (std::abs(x - mean) > eps) ++exceed;
    TailRow row;
    row.epsilon = eps;
    row.empirical_fraction = static_cast<double>(exceed) / n;
    row.levy_bound_unclamped = levy_tail_bound(rep.d_r, eps, rep.eta_used);
    row.levy_bound = std::clamp(row.levy_bound_unclamped, 0.0, 1.0);
    rep.tail_table.push_back(row);
  }
  if (distances) *distances = d;
  return rep;
}

}  // namespace gentyp
