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

// Dense complex linear algebra shared by every other module: validated
// state types, Haar sampling, norms, distances and partial traces.
//
// Basis convention: computational basis ordered lexicographically by
// bitstring with qubit 0 as the most significant bit. For a bipartite
// space A (x) B the composite index is a * dim(B) + b.

#ifndef GENTYP_QCORE_H
#define GENTYP_QCORE_H

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace gentyp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tol {
inline constexpr double kNorm = 1e-12;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kTrace = 1e-10;
}  // namespace tol

/// Unit vector in a finite-dimensional Hilbert space.
class StateVector {
 public:
  /// Throws DimensionError for an empty vector and InvalidStateError when
  /// the Euclidean norm deviates from 1 by more than tol::kNorm.
  explicit StateVector(Vector amplitudes);

  Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  Vector amplitudes_;
};

/// Square matrix equal to its adjoint within tol::kHermitian.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix matrix);

  Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  RealVector eigenvalues() const;

 private:
  Matrix matrix_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityOperator {
 public:
  /// Full validation: hermiticity, eigenvalues >= -tol::kPsd, trace 1.
  explicit DensityOperator(Matrix matrix);

  /// For operators that are states by construction (channel outputs,
  /// projectors). Checks hermiticity and trace but skips the
  /// eigendecomposition; the stored matrix is symmetrized.
  static DensityOperator from_trusted(Matrix matrix);
  static DensityOperator maximally_mixed(Index dim);
  static DensityOperator pure(const StateVector& psi);

  Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  double purity() const;

 private:
  struct TrustedTag {};
  DensityOperator(Matrix matrix, TrustedTag);

  Matrix matrix_;
};

/// Largest elementwise |M - M^dagger|. Non-square input returns +inf.
double hermitian_deviation(const Matrix& m);

/// Splitmix-style mix of a master seed and a sample index. The per-sample
/// stream depends only on (master, index), never on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Unitarily invariant random pure state: 2*dim iid standard normals
/// assembled into a complex vector and normalized.
StateVector haar_sample(Index dim, std::uint64_t seed);
StateVector haar_sample(Index dim, std::mt19937_64& rng);

/// Haar-random unitary (QR of a complex Ginibre matrix with the R-diagonal
/// phases divided out).
Matrix haar_unitary(Index dim, std::uint64_t seed);

/// Random Hermitian matrix with iid Gaussian entries (GUE-like), for tests
/// and property checks.
HermitianOperator random_hermitian(Index dim, std::mt19937_64& rng);

HermitianOperator difference(const DensityOperator& a, const DensityOperator& b);

/// Schatten-1 norm from the eigenvalues of a Hermitian operator.
double trace_norm(const HermitianOperator& a);

/// sqrt(tr(A^dagger A)).
double hs_norm(const HermitianOperator& a);

/// ||a - b||_1 / 2. Throws DimensionError on mismatch.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

enum class Keep { kFirst, kSecond };

struct BipartiteDims {
  Index first = 1;
  Index second = 1;
};

/// Reduced operator on the kept factor of first (x) second.
Matrix partial_trace(const Matrix& m, Keep keep, BipartiteDims dims);
DensityOperator partial_trace(const DensityOperator& rho, Keep keep, BipartiteDims dims);

Matrix kron(const Matrix& a, const Matrix& b);

/// |row><col| on a space of the given dimension.
Matrix matrix_unit(Index dim, Index row, Index col);

}  // namespace gentyp

#endif  // GENTYP_QCORE_H
