// Copyright 2026 The cohlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Haar-random states, unitaries, subspaces, and ensemble re-decompositions.
// Every sampler is a pure function of its arguments and the stream state.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cohlab/error.hpp"
#include "cohlab/random_stream.hpp"
#include "cohlab/states.hpp"

namespace cohlab {

/// Decomposition outputs with q_b below this are treated as zero vectors.
inline constexpr double kZeroWeightThreshold = 1e-14;

namespace detail {

/// rows x cols matrix of i.i.d. standard complex Gaussians, E|z|^2 = 1.
inline Eigen::MatrixXcd ginibre(Eigen::Index rows, Eigen::Index cols, RandomStream& stream) {
  Eigen::MatrixXcd g(rows, cols);
  const double scale = std::sqrt(0.5);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = stream.normal();
      const double im = stream.normal();
      g(i, j) = Complex(scale * re, scale * im);
    }
  }
  return g;
}

/// Thin Q of a QR factorization with the column phases chosen so that R has a
/// real positive diagonal. Without that fix the Q factor is not Haar.
inline Eigen::MatrixXcd haar_frame(const Eigen::MatrixXcd& g) {
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(g.rows(), g.cols());
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const Complex rjj = qr.matrixQR()(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

inline void require_dim(std::size_t d, const char* what) {
  require(d >= 1, ErrorKind::invalid_dimension, std::string(what) + " needs d >= 1");
}

}  // namespace detail

/// Haar-random pure state: 2d standard normals, normalized. The complex
/// Gaussian vector is rotation invariant, so its direction is exactly Haar.
inline PureState sample_haar_pure(std::size_t d, RandomStream& stream) {
  detail::require_dim(d, "sample_haar_pure");
  std::vector<Complex> amps(d);
  for (Complex& z : amps) {
    const double re = stream.normal();
    const double im = stream.normal();
    z = Complex(re, im);
  }
  return PureState::normalized(std::move(amps));
}

inline UnitaryMatrix sample_haar_unitary(std::size_t d, RandomStream& stream) {
  detail::require_dim(d, "sample_haar_unitary");
  const auto n = static_cast<Eigen::Index>(d);
  return UnitaryMatrix::from_matrix(detail::haar_frame(detail::ginibre(n, n, stream)));
}

/// Orthonormal frame of a random s-dimensional subspace of C^d; distributed
/// as the first s columns of a Haar unitary.
inline SubspaceBasis sample_random_subspace(std::size_t d, std::size_t s, RandomStream& stream) {
  detail::require_dim(d, "sample_random_subspace");
  detail::require(s >= 1 && s <= d, ErrorKind::invalid_dimension,
                  "sample_random_subspace needs 1 <= s <= d (s=" + std::to_string(s) +
                      ", d=" + std::to_string(d) + ")");
  return SubspaceBasis::from_columns(
      detail::haar_frame(detail::ginibre(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(s), stream)));
}

/// Haar state of the subspace, embedded in the ambient space.
inline PureState sample_pure_in_subspace(const SubspaceBasis& basis, RandomStream& stream) {
  const PureState coeffs = sample_haar_pure(basis.sub_dim(), stream);
  const Eigen::Map<const Eigen::VectorXcd> c(coeffs.amplitudes().data(),
                                             static_cast<Eigen::Index>(coeffs.dim()));
  const Eigen::VectorXcd psi = basis.columns() * c;
  return PureState::normalized(std::vector<Complex>(psi.data(), psi.data() + psi.size()));
}

/// Re-decomposes the state of `seed` through an explicit isometry W
/// (m_out x m, W^dagger W = I): |phi_b> = sum_a W_ba sqrt(p_a) |psi_a>.
/// The density matrix is preserved because Phi Phi^dagger = A W^T conj(W) A^dagger = A A^dagger.
inline Decomposition mix_decomposition(const Decomposition& seed, const Eigen::MatrixXcd& isometry) {
  detail::require(isometry.cols() == static_cast<Eigen::Index>(seed.size()), ErrorKind::invalid_argument,
                  "isometry column count must match the seed ensemble size");
  const Eigen::Index m = isometry.cols();
  const double defect =
      (isometry.adjoint() * isometry - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
  detail::require(defect <= kOrthonormalTolerance, ErrorKind::invalid_argument,
                  "mixing matrix is not an isometry");

  const Eigen::MatrixXcd phi = seed.weighted_columns() * isometry.transpose();
  std::vector<double> weights;
  std::vector<PureState> states;
  CompensatedSum kept;
  for (Eigen::Index b = 0; b < phi.cols(); ++b) {
    const double q = phi.col(b).squaredNorm();
    if (q < kZeroWeightThreshold) continue;
    weights.push_back(q);
    kept.add(q);
    states.push_back(PureState::normalized(std::vector<Complex>(phi.col(b).data(), phi.col(b).data() + phi.rows())));
  }
  detail::require(!weights.empty(), ErrorKind::numeric_failure, "every re-decomposed vector vanished");
  const double total = kept.value();
  for (double& w : weights) w /= total;
  // Renormalized weights can miss 1 by a few ulps; fold the remainder into the largest.
  CompensatedSum check;
  for (double w : weights) check.add(w);
  auto largest = std::max_element(weights.begin(), weights.end());
  *largest += 1.0 - check.value();

  Decomposition out(std::move(weights), std::move(states));
  const double residual = density_residual(seed, out);
  detail::require(residual <= kDensityTolerance, ErrorKind::numeric_failure,
                  "re-decomposition changed the density matrix (residual " + std::to_string(residual) + ")");
  return out;
}

/// Random re-decomposition of the same density matrix into m_out members.
inline Decomposition sample_random_decomposition(const Decomposition& seed, std::size_t m_out,
                                                 RandomStream& stream) {
  detail::require(m_out >= seed.size(), ErrorKind::invalid_argument,
                  "m_out must be at least the seed ensemble size");
  const SubspaceBasis w = sample_random_subspace(m_out, seed.size(), stream);
  return mix_decomposition(seed, w.columns());
}

}  // namespace cohlab
