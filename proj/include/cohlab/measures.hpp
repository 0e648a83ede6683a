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

// Coherence functionals of pure states in the fixed reference basis.
//
// Entropies are in nats. Trace distances follow the convention without the
// factor 1/2, i.e. ||a - b||_1 = sum of absolute eigenvalues of the difference.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "cohlab/error.hpp"
#include "cohlab/numeric.hpp"
#include "cohlab/states.hpp"

namespace cohlab {

/// Probabilities below this are treated as exact zeros in entropies.
inline constexpr double kProbabilityFloor = 1e-300;

/// Outcome distribution p_i = |<i|psi>|^2 of a reference-basis measurement.
class DiagonalDistribution {
 public:
  static DiagonalDistribution from_probs(std::vector<double> probs) {
    detail::require(!probs.empty(), ErrorKind::invalid_dimension, "distribution needs dim >= 1");
    for (double p : probs) {
      detail::require(p >= 0.0 && std::isfinite(p), ErrorKind::invalid_argument,
                      "probabilities must be nonnegative");
    }
    detail::require(std::abs(compensated_sum(probs) - 1.0) <= kNormTolerance,
                    ErrorKind::invalid_argument, "probabilities must sum to 1");
    return DiagonalDistribution(std::move(probs));
  }

  std::size_t dim() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }

 private:
  friend DiagonalDistribution diagonal_part(const PureState& psi);
  explicit DiagonalDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

inline DiagonalDistribution diagonal_part(const PureState& psi) {
  std::vector<double> probs(psi.dim());
  for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(psi[i]);
  return DiagonalDistribution(std::move(probs));
}

/// -sum p ln p with 0 ln 0 = 0.
inline double shannon_entropy(std::span<const double> probs) noexcept {
  CompensatedSum acc;
  for (double p : probs) {
    if (p > kProbabilityFloor) acc.add(-p * std::log(p));
  }
  return acc.value();
}

inline double shannon_entropy(const DiagonalDistribution& p) noexcept { return shannon_entropy(p.probs()); }

/// Binary entropy in nats.
inline double binary_entropy(double t) noexcept {
  const double probs[2] = {t, 1.0 - t};
  return shannon_entropy(probs);
}

/// C_r(psi) = S(rho_D); the von Neumann entropy of a pure state is zero.
inline double relative_entropy_coherence(const PureState& psi) { return shannon_entropy(diagonal_part(psi)); }

/// C_l1 for rank one: sum_{i != j} |psi_i||psi_j| = (sum_i |psi_i|)^2 - 1.
inline double l1_coherence_pure(const PureState& psi) noexcept {
  CompensatedSum acc;
  for (const Complex& z : psi.amplitudes()) acc.add(std::abs(z));
  const double s = acc.value();
  return std::max(0.0, s * s - 1.0);
}

/// Tr[rho_D^2].
inline double classical_purity(const PureState& psi) noexcept {
  CompensatedSum acc;
  for (const Complex& z : psi.amplitudes()) {
    const double p = std::norm(z);
    acc.add(p * p);
  }
  return acc.value();
}

/// ||rho_D(psi) - I/d||_1, no factor 1/2. Ranges over [0, 2(1 - 1/d)].
inline double trace_distance_diag_mm(const PureState& psi) noexcept {
  const double uniform = 1.0 / static_cast<double>(psi.dim());
  CompensatedSum acc;
  for (const Complex& z : psi.amplitudes()) acc.add(std::abs(std::norm(z) - uniform));
  return acc.value();
}

/// A pure state's only decomposition is itself, so C_f = C_r.
inline double coherence_of_formation_pure(const PureState& psi) { return relative_entropy_coherence(psi); }

/// sum_a p_a S(rho_D(psi_a)); an upper bound on C_f of the mixture.
inline double decomposition_average_coherence(const Decomposition& dec) {
  CompensatedSum acc;
  for (std::size_t a = 0; a < dec.size(); ++a) {
    if (dec.weights()[a] == 0.0) continue;
    acc.add(dec.weights()[a] * relative_entropy_coherence(dec.states()[a]));
  }
  return acc.value();
}

namespace detail {

inline double fannes_floor_from_distance(std::size_t d, double trace_distance, bool sharp) noexcept {
  if (d < 2) return 0.0;
  const double t = 0.5 * trace_distance;
  const double log_d = std::log(static_cast<double>(d));
  const double h2 = binary_entropy(t);
  if (sharp) return log_d - t * std::log(static_cast<double>(d - 1)) - h2;
  return (1.0 - t) * log_d - h2;
}

}  // namespace detail

/// Fannes-Audenaert floor (1 - T) ln d - H2(T), T = ||rho_D - I/d||_1 / 2.
/// Negative values are valid and vacuous. Returns 0 at d = 1.
inline double fannes_floor(const PureState& psi) noexcept {
  return detail::fannes_floor_from_distance(psi.dim(), trace_distance_diag_mm(psi), false);
}

/// The sharper form ln d - T ln(d - 1) - H2(T) that the weaker one relaxes.
inline double fannes_floor_sharp(const PureState& psi) noexcept {
  return detail::fannes_floor_from_distance(psi.dim(), trace_distance_diag_mm(psi), true);
}

struct CoherenceProfile {
  double c_r = 0.0;
  double c_l1 = 0.0;
  double purity = 1.0;
  double trace_dist_mm = 0.0;
  double fannes_floor = 0.0;
  double fannes_floor_sharp = 0.0;
};

/// All per-state functionals from one pass over the diagonal.
inline CoherenceProfile coherence_profile(const PureState& psi) {
  CoherenceProfile out;
  const DiagonalDistribution diag = diagonal_part(psi);
  out.c_r = shannon_entropy(diag);
  out.c_l1 = l1_coherence_pure(psi);
  out.purity = classical_purity(psi);
  out.trace_dist_mm = trace_distance_diag_mm(psi);
  out.fannes_floor = detail::fannes_floor_from_distance(psi.dim(), out.trace_dist_mm, false);
  out.fannes_floor_sharp = detail::fannes_floor_from_distance(psi.dim(), out.trace_dist_mm, true);
  return out;
}

}  // namespace cohlab
