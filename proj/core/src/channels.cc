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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gentyp/errors.h"

namespace gentyp {

namespace {

constexpr double kTracePreservingTol = 1e-10;
constexpr double kKrausCutoff = 1e-12;
constexpr double kRouteTol = 1e-8;

std::string dims_str(Index r, Index c) { return std::to_string(r) + "x" + std::to_string(c); }

// Row-major flattening of a dim_out x dim_in operator: v[s * dim_in + i] = K(s, i).
Vector row_major(const Matrix& k) {
  Vector v(k.size());
  const Index cols = k.cols();
  for (Index s = 0; s < k.rows(); ++s)
    for (Index i = 0; i < cols; ++i) v(s * cols + i) = k(s, i);
  return v;
}

Matrix choi_from_kraus(Index dim_in, Index dim_out, const std::vector<Matrix>& kraus) {
  Matrix vecs(dim_in * dim_out, static_cast<Index>(kraus.size()));
  for (std::size_t m = 0; m < kraus.size(); ++m) vecs.col(static_cast<Index>(m)) = row_major(kraus[m]);
  Matrix j = vecs * vecs.adjoint();
  j /= static_cast<double>(dim_in);
  return j;
}

double trace_preservation_error(Index dim_in, Index dim_out, const std::vector<Matrix>& kraus) {
  // Stack operators into tall blocks so the sum is a few large products.
  const Index per_block = std::max<Index>(1, 4096 / dim_out);
  Matrix acc = Matrix::Zero(dim_in, dim_in);
  Matrix stack;
  for (std::size_t first = 0; first < kraus.size(); first += static_cast<std::size_t>(per_block)) {
    const std::size_t last = std::min(kraus.size(), first + static_cast<std::size_t>(per_block));
    stack.resize(static_cast<Index>(last - first) * dim_out, dim_in);
    for (std::size_t m = first; m < last; ++m) stack.middleRows(static_cast<Index>(m - first) * dim_out, dim_out) = kraus[m];
    acc.selfadjointView<Eigen::Lower>().rankUpdate(stack.adjoint());
  }
  acc = acc.selfadjointView<Eigen::Lower>();
  acc -= Matrix::Identity(dim_in, dim_in);
  return acc.cwiseAbs().maxCoeff();
}

// Eigen-decomposes the nonzero support of a Hermitian matrix. Rows that are
// identically zero carry eigenvalue 0 and are dropped before the solve.
struct SupportEigen {
  std::vector<Index> support;
  RealVector values;
  Matrix vectors;  // columns in support coordinates
};

SupportEigen support_eigen(const Matrix& j, bool with_vectors) {
  SupportEigen out;
  for (Index i = 0; i < j.rows(); ++i) {
    if (j.row(i).cwiseAbs().maxCoeff() > 0.0) out.support.push_back(i);
  }
  const auto n = static_cast<Index>(out.support.size());
  if (n == 0) {
    out.values = RealVector::Zero(0);
    return out;
  }
  Matrix sub(n, n);
  for (Index b = 0; b < n; ++b)
    for (Index a = 0; a < n; ++a) sub(a, b) = j(out.support[a], out.support[b]);
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      sub, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  out.values = es.eigenvalues();
  if (with_vectors) out.vectors = es.eigenvectors();
  return out;
}

void check_choi_marginal(Index dim_in, Index dim_out, const Matrix& j) {
  const Matrix marginal = partial_trace(j, Keep::kSecond, {dim_out, dim_in});
  const Matrix target = Matrix::Identity(dim_in, dim_in) / static_cast<double>(dim_in);
  const double err = (marginal - target).cwiseAbs().maxCoeff();
  if (err > kTracePreservingTol) {
    throw NotCptpError("Choi matrix input marginal deviates from 1/dim_in by " +
                       std::to_string(err) + " (map is not trace preserving)");
  }
}

void check_choi_shape(Index dim_in, Index dim_out, const Matrix& j) {
  if (dim_in < 1 || dim_out < 1) throw DimensionError("channel dimensions must be >= 1");
  if (j.rows() != dim_in * dim_out || j.cols() != dim_in * dim_out) {
    throw DimensionError("Choi matrix is " + dims_str(j.rows(), j.cols()) + ", expected " +
                         dims_str(dim_in * dim_out, dim_in * dim_out));
  }
  const double dev = hermitian_deviation(j);
  if (dev > tol::kPsd) {
    throw NotCptpError("Choi matrix is not Hermitian (deviation " + std::to_string(dev) + ")");
  }
}

std::vector<Matrix> kraus_from_choi(Index dim_in, Index dim_out, const Matrix& j) {
  const SupportEigen eig = support_eigen(j, true);
  if (eig.values.size() > 0 && eig.values.minCoeff() < -tol::kPsd) {
    throw NotCptpError("Choi matrix has eigenvalue " + std::to_string(eig.values.minCoeff()) +
                       " (map is not completely positive)");
  }
  std::vector<Matrix> kraus;
  // Largest eigenvalues first so the family is ordered by weight.
  for (Index e = eig.values.size() - 1; e >= 0; --e) {
    const double mu = eig.values(e);
    if (mu <= kKrausCutoff) continue;
    const double scale = std::sqrt(static_cast<double>(dim_in) * mu);
    Matrix k = Matrix::Zero(dim_out, dim_in);
    for (std::size_t a = 0; a < eig.support.size(); ++a) {
      const Index flat = eig.support[a];
      k(flat / dim_in, flat % dim_in) = scale * eig.vectors(static_cast<Index>(a), e);
    }
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) throw NotCptpError("Choi matrix has no positive eigenvalues");
  return kraus;
}

// Matrix whose columns are the outputs K_m psi, so that
// Lambda(|psi><psi|) = M M^dagger.
Matrix kraus_images(const QuantumChannel& ch, const Vector& psi) {
  Matrix m(ch.dim_out(), static_cast<Index>(ch.kraus_rank()));
  for (std::size_t i = 0; i < ch.kraus_rank(); ++i) m.col(static_cast<Index>(i)).noalias() = ch.kraus()[i] * psi;
  return m;
}

}  // namespace

QuantumChannel::QuantumChannel(Index dim_in, Index dim_out, std::vector<Matrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)), choi_cache_(std::make_shared<ChoiCache>()) {
  if (dim_in_ < 1 || dim_out_ < 1) {
    throw DimensionError("QuantumChannel: dimensions must be >= 1, got " + dims_str(dim_out_, dim_in_));
  }
  if (kraus_.empty()) throw NotCptpError("QuantumChannel: empty Kraus family");
  for (const Matrix& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw DimensionError("QuantumChannel: Kraus operator is " + dims_str(k.rows(), k.cols()) +
                           ", expected " + dims_str(dim_out_, dim_in_));
    }
  }
  const double tp = trace_preservation_error(dim_in_, dim_out_, kraus_);
  if (!(tp <= kTracePreservingTol)) {
    throw NotCptpError("QuantumChannel: sum K^dagger K deviates from identity by " + std::to_string(tp));
  }
  if (static_cast<Index>(kraus_.size()) > dim_in_ * dim_out_) {
    kraus_ = kraus_from_choi(dim_in_, dim_out_, choi_from_kraus(dim_in_, dim_out_, kraus_));
  }
}

QuantumChannel::QuantumChannel(Index dim_in, Index dim_out, std::vector<Matrix> kraus, TrustedTag)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)), choi_cache_(std::make_shared<ChoiCache>()) {
  if (static_cast<Index>(kraus_.size()) > dim_in_ * dim_out_) {
    kraus_ = kraus_from_choi(dim_in_, dim_out_, choi_from_kraus(dim_in_, dim_out_, kraus_));
  }
}

const Matrix& QuantumChannel::choi_matrix() const {
  std::call_once(choi_cache_->once,
                 [this] { choi_cache_->matrix = choi_from_kraus(dim_in_, dim_out_, kraus_); });
  return choi_cache_->matrix;
}

ChoiState::ChoiState(Index dim_in, Index dim_out, Matrix matrix)
    : dim_in_(dim_in), dim_out_(dim_out), matrix_(std::move(matrix)) {
  check_choi_shape(dim_in_, dim_out_, matrix_);
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol::kTrace) {
    throw NotCptpError("Choi matrix trace " + std::to_string(tr.real()) + " is not 1");
  }
  check_choi_marginal(dim_in_, dim_out_, matrix_);
  const SupportEigen eig = support_eigen(matrix_, false);
  if (eig.values.size() > 0 && eig.values.minCoeff() < -tol::kPsd) {
    throw NotCptpError("Choi matrix has eigenvalue " + std::to_string(eig.values.minCoeff()) +
                       " (map is not completely positive)");
  }
}

ChoiState::ChoiState(Index dim_in, Index dim_out, Matrix matrix, TrustedTag)
    : dim_in_(dim_in), dim_out_(dim_out), matrix_(std::move(matrix)) {}

double PurityRoutes::discrepancy() const { return std::abs(choi_purity - kraus_double_sum); }

DensityOperator apply(const QuantumChannel& ch, const DensityOperator& rho) {
  if (rho.dim() != ch.dim_in()) {
    throw DimensionError("apply: state dimension " + std::to_string(rho.dim()) +
                         " does not match channel input " + std::to_string(ch.dim_in()));
  }
  return DensityOperator::from_trusted(apply_to_matrix(ch, rho.matrix()));
}

DensityOperator apply(const QuantumChannel& ch, const StateVector& psi) {
  if (psi.dim() != ch.dim_in()) {
    throw DimensionError("apply: state dimension " + std::to_string(psi.dim()) +
                         " does not match channel input " + std::to_string(ch.dim_in()));
  }
  const Matrix images = kraus_images(ch, psi.amplitudes());
  Matrix out = images * images.adjoint();
  return DensityOperator::from_trusted(std::move(out));
}

Matrix apply_to_matrix(const QuantumChannel& ch, const Matrix& op) {
  if (op.rows() != ch.dim_in() || op.cols() != ch.dim_in()) {
    throw DimensionError("apply: operator is " + dims_str(op.rows(), op.cols()) +
                         ", channel input dimension is " + std::to_string(ch.dim_in()));
  }
  Matrix out = Matrix::Zero(ch.dim_out(), ch.dim_out());
  Matrix tmp(ch.dim_out(), ch.dim_in());
  for (const Matrix& k : ch.kraus()) {
    tmp.noalias() = k * op;
    out.noalias() += tmp * k.adjoint();
  }
  return out;
}

bool same_action(const QuantumChannel& a, const QuantumChannel& b, double tol) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) return false;
  // The Choi matrix collects the action on every matrix unit.
  return (a.choi_matrix() - b.choi_matrix()).cwiseAbs().maxCoeff() * static_cast<double>(a.dim_in()) <= tol;
}

ChoiState choi(const QuantumChannel& ch) {
  return ChoiState(ch.dim_in(), ch.dim_out(), ch.choi_matrix(), ChoiState::TrustedTag{});
}

QuantumChannel choi_to_kraus(const ChoiState& j) {
  return QuantumChannel(j.dim_in(), j.dim_out(), kraus_from_choi(j.dim_in(), j.dim_out(), j.matrix()));
}

QuantumChannel channel_from_choi(Index dim_in, Index dim_out, const Matrix& j) {
  check_choi_shape(dim_in, dim_out, j);
  check_choi_marginal(dim_in, dim_out, j);
  return QuantumChannel(dim_in, dim_out, kraus_from_choi(dim_in, dim_out, j));
}

StinespringIsometry stinespring(const QuantumChannel& ch) {
  const auto tau = static_cast<Index>(ch.kraus_rank());
  StinespringIsometry v;
  v.dim_in = ch.dim_in();
  v.dim_out = ch.dim_out();
  v.dim_env = tau;
  v.isometry = Matrix::Zero(ch.dim_out() * tau, ch.dim_in());
  for (Index m = 0; m < tau; ++m) {
    const Matrix& k = ch.kraus()[static_cast<std::size_t>(m)];
    for (Index s = 0; s < ch.dim_out(); ++s) v.isometry.row(s * tau + m) = k.row(s);
  }
  return v;
}

DensityOperator apply(const StinespringIsometry& v, const DensityOperator& rho) {
  if (rho.dim() != v.dim_in) {
    throw DimensionError("apply: state dimension " + std::to_string(rho.dim()) +
                         " does not match isometry input " + std::to_string(v.dim_in));
  }
  const Matrix dilated = v.isometry * rho.matrix() * v.isometry.adjoint();
  return DensityOperator::from_trusted(partial_trace(dilated, Keep::kFirst, {v.dim_out, v.dim_env}));
}

PurityRoutes purity_routes(const QuantumChannel& ch) {
  PurityRoutes r;
  r.choi_purity = ch.choi_matrix().squaredNorm();
  // tr(K_m K_n^dagger) is the Frobenius inner product of K_m and K_n.
  const auto tau = static_cast<Index>(ch.kraus_rank());
  Matrix flat(ch.dim_in() * ch.dim_out(), tau);
  for (Index m = 0; m < tau; ++m) flat.col(m) = row_major(ch.kraus()[static_cast<std::size_t>(m)]);
  const Matrix gram = flat.adjoint() * flat;
  const double din = static_cast<double>(ch.dim_in());
  r.kraus_double_sum = gram.squaredNorm() / (din * din);
  return r;
}

double linear_entropy(const QuantumChannel& ch) {
  const PurityRoutes r = purity_routes(ch);
  if (r.discrepancy() > kRouteTol) {
    throw ConsistencyError("linear_entropy: Choi purity " + std::to_string(r.choi_purity) +
                           " and Kraus double sum " + std::to_string(r.kraus_double_sum) + " disagree");
  }
  return 1.0 - r.choi_purity;
}

QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner) {
  if (inner.dim_out() != outer.dim_in()) {
    throw DimensionError("compose: inner output " + std::to_string(inner.dim_out()) +
                         " does not match outer input " + std::to_string(outer.dim_in()));
  }
  std::vector<Matrix> kraus;
  kraus.reserve(outer.kraus_rank() * inner.kraus_rank());
  for (const Matrix& ko : outer.kraus())
    for (const Matrix& ki : inner.kraus()) kraus.push_back(ko * ki);
  return QuantumChannel(inner.dim_in(), outer.dim_out(), std::move(kraus), QuantumChannel::TrustedTag{});
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
  std::vector<Matrix> kraus;
  kraus.reserve(a.kraus_rank() * b.kraus_rank());
  for (const Matrix& ka : a.kraus())
    for (const Matrix& kb : b.kraus()) kraus.push_back(kron(ka, kb));
  return QuantumChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(), std::move(kraus),
                        QuantumChannel::TrustedTag{});
}

QuantumChannel identity_channel(Index dim) {
  if (dim < 1) throw DimensionError("identity_channel: dimension must be >= 1");
  return QuantumChannel(dim, dim, {Matrix::Identity(dim, dim)});
}

QuantumChannel unitary_channel(const Matrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0) throw DimensionError("unitary_channel: matrix must be square");
  return QuantumChannel(u.cols(), u.rows(), {u});
}

DepolarizingRange check_depolarizing_range(Index dim, double lambda) {
  DepolarizingRange r;
  const double d2m1 = static_cast<double>(dim * dim - 1);
  r.standard_upper = d2m1 > 0 ? 1.0 + 1.0 / d2m1 : std::numeric_limits<double>::infinity();
  r.quoted_upper = d2m1 > 0 ? 1.0 + 1.0 / (d2m1 * d2m1) : std::numeric_limits<double>::infinity();
  r.within_standard = lambda >= 0.0 && lambda <= r.standard_upper;
  r.within_quoted = lambda >= 0.0 && lambda <= r.quoted_upper;
  return r;
}

QuantumChannel depolarizing(Index dim, double lambda) {
  if (dim < 1) throw DimensionError("depolarizing: dimension must be >= 1");
  if (!std::isfinite(lambda)) throw DomainError("depolarizing: lambda must be finite");
  const double d = static_cast<double>(dim);
  if (lambda >= 0.0 && lambda <= 1.0) {
    // Weyl operators X^a Z^b average any operator to tr(O) 1/d.
    std::vector<Matrix> kraus;
    kraus.reserve(static_cast<std::size_t>(dim * dim));
    kraus.push_back(std::sqrt(1.0 - lambda + lambda / (d * d)) * Matrix::Identity(dim, dim));
    if (lambda > 0.0) {
      const double w = std::sqrt(lambda) / d;
      for (Index a = 0; a < dim; ++a) {
        for (Index b = 0; b < dim; ++b) {
          if (a == 0 && b == 0) continue;
          Matrix k = Matrix::Zero(dim, dim);
          for (Index j = 0; j < dim; ++j) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(b * j) / d;
            k((j + a) % dim, j) = w * std::polar(1.0, phase);
          }
          kraus.push_back(std::move(k));
        }
      }
    }
    return QuantumChannel(dim, dim, std::move(kraus));
  }
  // lambda (1/d)(1/d) + (1 - lambda) phi+, output factor first.
  Matrix j = Matrix::Identity(dim * dim, dim * dim) * (lambda / (d * d));
  for (Index i = 0; i < dim; ++i)
    for (Index k = 0; k < dim; ++k) j(i * dim + i, k * dim + k) += (1.0 - lambda) / d;
  return channel_from_choi(dim, dim, j);
}

QuantumChannel partial_trace_channel(Index dim_s, Index dim_e) {
  if (dim_s < 1 || dim_e < 1) throw DimensionError("partial_trace_channel: dimensions must be >= 1");
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(dim_e));
  for (Index e = 0; e < dim_e; ++e) {
    // K_e = 1_S (x) <e|
    Matrix k = Matrix::Zero(dim_s, dim_s * dim_e);
    for (Index s = 0; s < dim_s; ++s) k(s, s * dim_e + e) = 1.0;
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(dim_s * dim_e, dim_s, std::move(kraus));
}

QuantumChannel replacement_channel(const DensityOperator& sigma, Index dim_in) {
  if (dim_in < 1) throw DimensionError("replacement_channel: dimension must be >= 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.matrix());
  std::vector<Matrix> kraus;
  for (Index v = 0; v < sigma.dim(); ++v) {
    const double p = es.eigenvalues()(v);
    if (p <= kKrausCutoff) continue;
    for (Index i = 0; i < dim_in; ++i) {
      Matrix k = Matrix::Zero(sigma.dim(), dim_in);
      k.col(i) = std::sqrt(p) * es.eigenvectors().col(v);
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(dim_in, sigma.dim(), std::move(kraus));
}

QuantumChannel random_channel(Index dim_in, Index dim_out, Index rank, std::uint64_t seed) {
  if (dim_in < 1 || dim_out < 1) throw DimensionError("random_channel: dimensions must be >= 1");
  // An isometry needs dim_out * rank >= dim_in rows.
  rank = std::max<Index>({rank, 1, (dim_in + dim_out - 1) / dim_out});
  rank = std::min(rank, dim_in * dim_out);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim_out * rank, dim_in);
  for (Index c = 0; c < g.cols(); ++c)
    for (Index r = 0; r < g.rows(); ++r) g(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix v = qr.householderQ() * Matrix::Identity(g.rows(), dim_in);
  std::vector<Matrix> kraus(static_cast<std::size_t>(rank), Matrix::Zero(dim_out, dim_in));
  for (Index m = 0; m < rank; ++m)
    for (Index s = 0; s < dim_out; ++s) kraus[static_cast<std::size_t>(m)].row(s) = v.row(s * rank + m);
  return QuantumChannel(dim_in, dim_out, std::move(kraus));
}

namespace {

// ||Lambda(|psi><psi|) - Lambda(|phi><phi|)||_1 / 2 for orthogonal unit
// psi, phi; the denominator ||psi - phi||_1 equals 2 for such pairs.
double contraction(const QuantumChannel& ch, const Vector& psi, const Vector& phi) {
  const Matrix a = kraus_images(ch, psi);
  const Matrix b = kraus_images(ch, phi);
  Matrix diff = a * a.adjoint() - b * b.adjoint();
  diff = 0.5 * (diff + diff.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Vector gaussian_vector(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

// Normalizes `v` after projecting out `against`; false if it degenerates.
bool orthonormalize(Vector& v, const Vector& against) {
  v -= against * against.dot(v);
  const double n = v.norm();
  if (n < 1e-8) return false;
  v /= n;
  return true;
}

}  // namespace

double lipschitz_estimate(const QuantumChannel& ch, int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("lipschitz_estimate: trials must be >= 1");
  const Index dim = ch.dim_in();
  if (dim < 2) return 0.0;  // a single ray: every pair of states coincides
  constexpr int kClimbSteps = 80;
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    Vector psi = haar_sample(dim, rng).amplitudes();
    Vector phi = gaussian_vector(dim, rng);
    while (!orthonormalize(phi, psi)) phi = gaussian_vector(dim, rng);
    double value = contraction(ch, psi, phi);
    double step = 0.5;
    for (int it = 0; it < kClimbSteps && value < 1.0; ++it) {
      Vector psi2 = psi + step * gaussian_vector(dim, rng);
      psi2.normalize();
      Vector phi2 = phi + step * gaussian_vector(dim, rng);
      if (!orthonormalize(phi2, psi2)) continue;
      const double candidate = contraction(ch, psi2, phi2);
      if (candidate > value) {
        value = candidate;
        psi = std::move(psi2);
        phi = std::move(phi2);
        step = std::min(1.0, step * 1.3);
      } else {
        step *= 0.8;
      }
    }
    best = std::max(best, value);
  }
  return std::clamp(best, 0.0, 1.0);
}

}  // namespace gentyp
