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

// Test-only reference computations. Nothing here calls the code paths it
// is used to check: the detector map is applied from its matrix-unit rules,
// sector weights come from enumerating bitstrings, and binomials are plain
// 64-bit Pascal rows.

#ifndef GENTYP_TESTS_ORACLES_H
#define GENTYP_TESTS_ORACLES_H

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// Detector block rule on a single matrix unit |a><b| of n sites. Returns the
/// 2x2 image.
inline Eigen::Matrix2cd block_rule(std::uint64_t a, std::uint64_t b, int n) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  const double c = 1.0 / std::sqrt(std::pow(2.0, n) - 1.0);
  if (a == b && a == 0) {
    out(0, 0) = 1.0;
  } else if (a == b) {
    out(1, 1) = 1.0;
  } else if (a == 0 && b != 0) {
    out(0, 1) = c;
  } else if (a != 0 && b == 0) {
    out(1, 0) = c;
  }
  return out;
}

/// Applies the k-block detector map to a full-space operator by expanding
/// it in matrix units. Exponential cost; small N only.
inline Matrix apply_detector(const Matrix& rho, int n_sites, int blocks) {
  const int n = n_sites / blocks;
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  const Eigen::Index d_out = Eigen::Index{1} << blocks;
  Matrix out = Matrix::Zero(d_out, d_out);
  for (Eigen::Index a = 0; a < rho.rows(); ++a) {
    for (Eigen::Index b = 0; b < rho.cols(); ++b) {
      if (rho(a, b) == Complex(0.0)) continue;
      Matrix img = Matrix::Ones(1, 1);
      for (int blk = 0; blk < blocks; ++blk) {
        const int shift = (blocks - 1 - blk) * n;
        const Eigen::Matrix2cd r = block_rule((static_cast<std::uint64_t>(a) >> shift) & mask,
                                              (static_cast<std::uint64_t>(b) >> shift) & mask, n);
        Matrix next(img.rows() * 2, img.cols() * 2);
        for (Eigen::Index i = 0; i < img.rows(); ++i)
          for (Eigen::Index j = 0; j < img.cols(); ++j) next.block(i * 2, j * 2, 2, 2) = img(i, j) * r;
        img = next;
      }
      out += rho(a, b) * img;
    }
  }
  return out;
}

/// Probability of each k-bit detector outcome for the microcanonical state,
/// by enumerating all N-bit strings of weight Np.
inline std::map<std::uint64_t, double> detector_outcomes(int n_sites, int n_excited, int blocks) {
  const int n = n_sites / blocks;
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  std::map<std::uint64_t, double> counts;
  double total = 0.0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n_sites); ++s) {
    if (std::popcount(s) != n_excited) continue;
    std::uint64_t o = 0;
    for (int blk = 0; blk < blocks; ++blk) {
      o = (o << 1) | static_cast<std::uint64_t>(((s >> ((blocks - 1 - blk) * n)) & mask) != 0);
    }
    counts[o] += 1.0;
    total += 1.0;
  }
  for (auto& [o, c] : counts) c /= total;
  return counts;
}

}  // namespace oracle

#endif  // GENTYP_TESTS_ORACLES_H
