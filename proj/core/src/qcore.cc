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

#include "gentyp/qcore.h"

#include <cmath>
#include <limits>
#include <string>

#include "gentyp/errors.h"

namespace gentyp {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_hermitian(const Matrix& m, const char* what) {
  const double dev = hermitian_deviation(m);
  if (dev > tol::kHermitian) {
    throw InvalidStateError(std::string(what) + ": not Hermitian (max deviation " +
                            std::to_string(dev) + ")");
  }
}

void require_unit_trace(const Matrix& m, const char* what) {
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol::kTrace) {
    throw InvalidStateError(std::string(what) + ": trace " + std::to_string(tr.real()) +
                            (tr.imag() != 0.0 ? "+" + std::to_string(tr.imag()) + "i" : "") +
                            " differs from 1");
  }
}

Matrix symmetrized(Matrix m) {
  Matrix out = 0.5 * (m + m.adjoint());
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("StateVector: dimension must be >= 1");
  const double n = amplitudes_.norm();
  if (std::abs(n - 1.0) > tol::kNorm) {
    throw InvalidStateError("StateVector: norm " + std::to_string(n) + " is not 1");
  }
}

HermitianOperator::HermitianOperator(Matrix matrix) : matrix_(std::move(matrix)) {
  require_square(matrix_, "HermitianOperator");
  require_hermitian(matrix_, "HermitianOperator");
}

RealVector HermitianOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

DensityOperator::DensityOperator(Matrix matrix) : matrix_(std::move(matrix)) {
  require_square(matrix_, "DensityOperator");
  require_hermitian(matrix_, "DensityOperator");
  require_unit_trace(matrix_, "DensityOperator");
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol::kPsd) {
    throw InvalidStateError("DensityOperator: eigenvalue " + std::to_string(min_eig) +
                            " below PSD tolerance");
  }
}

DensityOperator::DensityOperator(Matrix matrix, TrustedTag) : matrix_(std::move(matrix)) {}

DensityOperator DensityOperator::from_trusted(Matrix matrix) {
  require_square(matrix, "DensityOperator");
  // Channel outputs accumulate rounding of order 1e-15 per entry, so the
  // hermiticity check here uses the PSD tolerance and the result is
  // symmetrized.
  const double dev = hermitian_deviation(matrix);
  if (dev > tol::kPsd) {
    throw InvalidStateError("DensityOperator: not Hermitian (max deviation " +
                            std::to_string(dev) + ")");
  }
  Matrix sym = symmetrized(std::move(matrix));
  require_unit_trace(sym, "DensityOperator");
  return DensityOperator(std::move(sym), TrustedTag{});
}

DensityOperator DensityOperator::maximally_mixed(Index dim) {
  if (dim < 1) throw DimensionError("maximally_mixed: dimension must be >= 1");
  Matrix m = Matrix::Identity(dim, dim) / static_cast<double>(dim);
  return DensityOperator(std::move(m), TrustedTag{});
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  return DensityOperator(psi.projector(), TrustedTag{});
}

double DensityOperator::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return matrix_.squaredNorm();
}

double hermitian_deviation(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double dev = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i <= j; ++i) {
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return dev;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

StateVector haar_sample(Index dim, std::mt19937_64& rng) {
  if (dim < 1) throw DimensionError("haar_sample: dimension must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  double n = v.norm();
  // Probability zero, but a zero draw would otherwise divide by zero.
  while (n == 0.0) {
    for (Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
    n = v.norm();
  }
  v /= n;
  return StateVector(std::move(v));
}

StateVector haar_sample(Index dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("haar_sample: dimension must be >= 1");
  std::mt19937_64 rng(seed);
  return haar_sample(dim, rng);
}

Matrix haar_unitary(Index dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("haar_unitary: dimension must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

HermitianOperator random_hermitian(Index dim, std::mt19937_64& rng) {
  if (dim < 1) throw DimensionError("random_hermitian: dimension must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  Matrix h = 0.5 * (g + g.adjoint());
  return HermitianOperator(std::move(h));
}

HermitianOperator difference(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("difference: dimensions " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()) + " differ");
  }
  return HermitianOperator(a.matrix() - b.matrix());
}

double trace_norm(const HermitianOperator& a) {
  return a.eigenvalues().cwiseAbs().sum();
}

double hs_norm(const HermitianOperator& a) {
  return a.matrix().norm();
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  return 0.5 * trace_norm(difference(a, b));
}

Matrix partial_trace(const Matrix& m, Keep keep, BipartiteDims dims) {
  const Index da = dims.first;
  const Index db = dims.second;
  if (da < 1 || db < 1 || m.rows() != da * db || m.cols() != da * db) {
    throw DimensionError("partial_trace: operator of size " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " does not match factor dims " +
                         std::to_string(da) + "*" + std::to_string(db));
  }
  if (keep == Keep::kFirst) {
    Matrix out = Matrix::Zero(da, da);
    for (Index a2 = 0; a2 < da; ++a2)
      for (Index a1 = 0; a1 < da; ++a1) {
        Complex acc = 0.0;
        for (Index b = 0; b < db; ++b) acc += m(a1 * db + b, a2 * db + b);
        out(a1, a2) = acc;
      }
    return out;
  }
  Matrix out = Matrix::Zero(db, db);
  for (Index a = 0; a < da; ++a) out += m.block(a * db, a * db, db, db);
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, Keep keep, BipartiteDims dims) {
  return DensityOperator::from_trusted(partial_trace(rho.matrix(), keep, dims));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix matrix_unit(Index dim, Index row, Index col) {
  if (row < 0 || col < 0 || row >= dim || col >= dim) {
    throw DimensionError("matrix_unit: index out of range");
  }
  Matrix e = Matrix::Zero(dim, dim);
  e(row, col) = 1.0;
  return e;
}

}  // namespace gentyp
