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

// Value types shared by the sampler, the measures, and the experiments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cohlab/error.hpp"
#include "cohlab/numeric.hpp"

namespace cohlab {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kOrthonormalTolerance = 1e-10;
inline constexpr double kDensityTolerance = 1e-9;

inline double squared_norm(std::span<const Complex> v) noexcept {
  CompensatedSum acc;
  for (const Complex& z : v) acc.add(std::norm(z));
  return acc.value();
}

/// Unit vector of amplitudes in the fixed reference basis.
class PureState {
 public:
  /// Rescales `amplitudes` to unit norm. Throws on an empty or zero vector.
  static PureState normalized(std::vector<Complex> amplitudes) {
    detail::require(!amplitudes.empty(), ErrorKind::invalid_dimension, "pure state needs dim >= 1");
    const double n2 = squared_norm(amplitudes);
    detail::require(n2 > 0.0 && std::isfinite(n2), ErrorKind::invalid_argument,
                    "cannot normalize a zero or non-finite vector");
    const double scale = 1.0 / std::sqrt(n2);
    for (Complex& z : amplitudes) z *= scale;
    return PureState(std::move(amplitudes));
  }

  /// Accepts amplitudes that are already normalized within 1e-12.
  static PureState from_amplitudes(std::vector<Complex> amplitudes) {
    detail::require(!amplitudes.empty(), ErrorKind::invalid_dimension, "pure state needs dim >= 1");
    const double n2 = squared_norm(amplitudes);
    detail::require(std::abs(n2 - 1.0) <= kNormTolerance, ErrorKind::invalid_argument,
                    "amplitudes are not unit norm (|psi|^2 = " + std::to_string(n2) + ")");
    return PureState(std::move(amplitudes));
  }

  static PureState basis(std::size_t dim, std::size_t index) {
    detail::require(dim >= 1, ErrorKind::invalid_dimension, "pure state needs dim >= 1");
    detail::require(index < dim, ErrorKind::invalid_argument, "basis index out of range");
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return PureState(std::move(amps));
  }

  /// Equal-weight superposition, the maximally coherent state.
  static PureState uniform(std::size_t dim) {
    detail::require(dim >= 1, ErrorKind::invalid_dimension, "pure state needs dim >= 1");
    return PureState(std::vector<Complex>(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0)));
  }

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t i) const noexcept { return amplitudes_[i]; }

 private:
  explicit PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {}

  std::vector<Complex> amplitudes_;
};

/// Square matrix with U^dagger U = I within 1e-10 * dim (Frobenius).
class UnitaryMatrix {
 public:
  static UnitaryMatrix from_matrix(Eigen::MatrixXcd m) {
    detail::require(m.rows() >= 1 && m.rows() == m.cols(), ErrorKind::invalid_dimension,
                    "unitary must be square with dim >= 1");
    const auto d = static_cast<double>(m.rows());
    const double defect =
        (m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).norm();
    detail::require(defect <= kOrthonormalTolerance * d, ErrorKind::numeric_failure,
                    "matrix is not unitary (defect " + std::to_string(defect) + ")");
    return UnitaryMatrix(std::move(m));
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }

 private:
  explicit UnitaryMatrix(Eigen::MatrixXcd m) : entries_(std::move(m)) {}

  Eigen::MatrixXcd entries_;
};

/// d x s matrix with orthonormal columns spanning a subspace of C^d.
class SubspaceBasis {
 public:
  static SubspaceBasis from_columns(Eigen::MatrixXcd columns) {
    detail::require(columns.cols() >= 1 && columns.cols() <= columns.rows(),
                    ErrorKind::invalid_dimension, "subspace needs 1 <= s <= d");
    const Eigen::MatrixXcd gram = columns.adjoint() * columns;
    const double defect =
        (gram - Eigen::MatrixXcd::Identity(columns.cols(), columns.cols())).cwiseAbs().maxCoeff();
    detail::require(defect <= kOrthonormalTolerance, ErrorKind::numeric_failure,
                    "subspace columns are not orthonormal (defect " + std::to_string(defect) + ")");
    return SubspaceBasis(std::move(columns));
  }

  std::size_t ambient_dim() const noexcept { return static_cast<std::size_t>(columns_.rows()); }
  std::size_t sub_dim() const noexcept { return static_cast<std::size_t>(columns_.cols()); }
  const Eigen::MatrixXcd& columns() const noexcept { return columns_; }

  /// Coefficients of `state` in the column frame, i.e. columns^dagger * psi.
  Eigen::VectorXcd coordinates(const PureState& state) const {
    detail::require(state.dim() == ambient_dim(), ErrorKind::invalid_dimension,
                    "state and subspace dimensions differ");
    const Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(),
                                                 static_cast<Eigen::Index>(state.dim()));
    return columns_.adjoint() * psi;
  }

 private:
  explicit SubspaceBasis(Eigen::MatrixXcd columns) : columns_(std::move(columns)) {}

  Eigen::MatrixXcd columns_;
};

/// Weighted pure-state ensemble {p_a, psi_a} representing sum_a p_a |psi_a><psi_a|.
class Decomposition {
 public:
  Decomposition(std::vector<double> weights, std::vector<PureState> states)
      : weights_(std::move(weights)), states_(std::move(states)) {
    detail::require(!weights_.empty() && weights_.size() == states_.size(),
                    ErrorKind::invalid_argument, "decomposition needs matching, nonempty weights and states");
    CompensatedSum total;
    for (double w : weights_) {
      detail::require(w >= 0.0 && std::isfinite(w), ErrorKind::invalid_argument,
                      "decomposition weights must be nonnegative");
      total.add(w);
    }
    detail::require(std::abs(total.value() - 1.0) <= kNormTolerance, ErrorKind::invalid_argument,
                    "decomposition weights must sum to 1");
    for (const PureState& s : states_) {
      detail::require(s.dim() == states_.front().dim(), ErrorKind::invalid_dimension,
                      "decomposition states must share one dimension");
    }
  }

  static Decomposition pure(PureState state) {
    std::vector<PureState> states;
    states.push_back(std::move(state));
    return Decomposition({1.0}, std::move(states));
  }

  std::size_t size() const noexcept { return weights_.size(); }
  std::size_t dim() const noexcept { return states_.front().dim(); }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const PureState> states() const noexcept { return states_; }

  /// d x m matrix whose columns are sqrt(p_a) |psi_a>; rho = A A^dagger.
  Eigen::MatrixXcd weighted_columns() const {
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(size()));
    for (std::size_t k = 0; k < size(); ++k) {
      const double w = std::sqrt(weights_[k]);
      const auto amps = states_[k].amplitudes();
      for (std::size_t i = 0; i < amps.size(); ++i) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = w * amps[i];
      }
    }
    return a;
  }

  /// Dense density matrix; intended for small d only.
  Eigen::MatrixXcd density_matrix() const {
    const Eigen::MatrixXcd a = weighted_columns();
    return a * a.adjoint();
  }

 private:
  std::vector<double> weights_;
  std::vector<PureState> states_;
};

/// Upper bound on max_ij |rho_a - rho_b|_ij without forming d x d matrices.
///
/// Both ensembles live in span([A | B]); with a thin QR [A | B] = Q [R_a | R_b]
/// the difference is Q (R_a R_a^dagger - R_b R_b^dagger) Q^dagger, whose
/// Frobenius norm equals that of the small inner matrix.
inline double density_residual(const Decomposition& a, const Decomposition& b) {
  detail::require(a.dim() == b.dim(), ErrorKind::invalid_dimension,
                  "decompositions act on different dimensions");
  const Eigen::MatrixXcd wa = a.weighted_columns();
  const Eigen::MatrixXcd wb = b.weighted_columns();
  Eigen::MatrixXcd stacked(wa.rows(), wa.cols() + wb.cols());
  stacked << wa, wb;
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(stacked);
  const Eigen::Index k = std::min(stacked.rows(), stacked.cols());
  const Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXcd ra = r.leftCols(wa.cols());
  const Eigen::MatrixXcd rb = r.rightCols(wb.cols());
  return (ra * ra.adjoint() - rb * rb.adjoint()).norm();
}

}  // namespace cohlab
