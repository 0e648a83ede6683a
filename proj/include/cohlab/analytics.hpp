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

// Closed-form expectations, concentration bounds and the special functions
// behind them. Everything here is deterministic and independent of sampling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "cohlab/error.hpp"
#include "cohlab/numeric.hpp"

namespace cohlab {

inline constexpr double kEulerGamma = 0.5772156649015329;

/// Largest d for which harmonic() sums terms exactly.
inline constexpr std::size_t kHarmonicExactLimit = 1'000'000;

/// Inverse of the constant K in the coherent-subspace dimension formula.
inline constexpr double kSubspaceInverseK = 16461.0;

/// Below this ambient dimension the subspace formula cannot give s >= 2.
inline constexpr std::size_t kSubspaceNontrivialDim = 32921;

/// H_d = sum_{k=1}^d 1/k. Exact (compensated, smallest terms first) up to
/// 10^6, Euler-Maclaurin beyond; the two agree to ~1e-27 at the switch.
inline double harmonic(std::size_t d) {
  detail::require(d >= 1, ErrorKind::invalid_dimension, "harmonic number needs d >= 1");
  if (d <= kHarmonicExactLimit) {
    CompensatedSum acc;
    for (std::size_t k = d; k >= 1; --k) acc.add(1.0 / static_cast<double>(k));
    return acc.value();
  }
  const auto x = static_cast<double>(d);
  return std::log(x) + kEulerGamma + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x) + 1.0 / (120.0 * x * x * x * x);
}

/// Psi(n) = H_{n-1} - gamma for positive integers.
inline double digamma_integer(std::size_t n) {
  detail::require(n >= 1, ErrorKind::invalid_argument, "digamma has a pole at n = 0");
  return (n == 1 ? 0.0 : harmonic(n - 1)) - kEulerGamma;
}

inline double beta(double alpha, double beta_arg) {
  detail::require(alpha > 0.0 && beta_arg > 0.0, ErrorKind::invalid_argument,
                  "beta function needs positive arguments");
  return boost::math::beta(alpha, beta_arg);
}

/// Haar average of C_r: H_d - 1 = sum_{k=2}^d 1/k.
inline double expected_cr(std::size_t d) { return harmonic(d) - 1.0; }

/// Same average from the Beta-function derivative:
/// -d(d-1) (Psi(2) - Psi(d+1)) B(2, d-1).
inline double expected_cr_via_beta(std::size_t d) {
  detail::require(d >= 2, ErrorKind::invalid_dimension, "expected_cr_via_beta needs d >= 2");
  const auto x = static_cast<double>(d);
  return -x * (x - 1.0) * (digamma_integer(2) - digamma_integer(d + 1)) * beta(2.0, x - 1.0);
}

/// Same average by integrating -d(d-1) r (1-r)^{d-2} ln r over (0, 1).
inline double expected_cr_via_quadrature(std::size_t d) {
  detail::require(d >= 2 && d <= 50, ErrorKind::unsupported,
                  "expected_cr_via_quadrature supports 2 <= d <= 50");
  const auto x = static_cast<double>(d);
  boost::math::quadrature::tanh_sinh<double> integrator;
  const auto integrand = [x](double r) { return r * std::pow(1.0 - r, x - 2.0) * std::log(r); };
  return -x * (x - 1.0) * integrator.integrate(integrand, 0.0, 1.0, 1e-13);
}

inline double expected_classical_purity(std::size_t d) {
  detail::require(d >= 1, ErrorKind::invalid_dimension, "expected_classical_purity needs d >= 1");
  return 2.0 / (static_cast<double>(d) + 1.0);
}

/// (1 - 1/d)^d, half the average trace distance; tends to 1/e.
inline double typical_half_trace_distance(std::size_t d) {
  detail::require(d >= 1, ErrorKind::invalid_dimension, "trace distance needs d >= 1");
  const auto x = static_cast<double>(d);
  return std::exp(x * std::log1p(-1.0 / x));
}

/// E ||rho_D(psi) - I/d||_1 = 2 (1 - 1/d)^d.
inline double expected_trace_distance(std::size_t d) { return 2.0 * typical_half_trace_distance(d); }

/// Probability bound carried in the log domain so that underflow loses nothing.
struct BoundValue {
  double raw = 0.0;
  double effective = 0.0;
  double log_raw = 0.0;

  static BoundValue from_log(double log_raw) noexcept {
    BoundValue b;
    b.log_raw = log_raw;
    b.raw = std::exp(log_raw);
    b.effective = std::min(b.raw, 1.0);
    return b;
  }
};

/// Inputs to the Levy concentration bound on the k-sphere.
struct LevyParams {
  std::uint64_t sphere_dim_k = 1;
  double epsilon = 0.0;
  double lipschitz_eta = 0.0;

  void validate() const {
    detail::require(sphere_dim_k >= 1, ErrorKind::invalid_dimension, "sphere dimension k must be >= 1");
    detail::require(epsilon > 0.0 && std::isfinite(epsilon), ErrorKind::invalid_epsilon,
                    "epsilon must be positive");
    detail::require(lipschitz_eta > 0.0, ErrorKind::invalid_argument,
                    "Lipschitz constant must be positive");
  }
};

/// Exponent denominator shared by every Levy-type bound: 9 pi^3 ln 2.
inline double levy_base_constant() noexcept {
  return 9.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::ln2;
}

/// Pr{|F - E F| > eps} <= 2 exp(-(k+1) eps^2 / (9 pi^3 eta^2 ln 2)).
inline BoundValue levy_generic(const LevyParams& p) {
  p.validate();
  const double k1 = static_cast<double>(p.sphere_dim_k) + 1.0;
  const double exponent =
      k1 * p.epsilon * p.epsilon / (levy_base_constant() * p.lipschitz_eta * p.lipschitz_eta);
  return BoundValue::from_log(std::numbers::ln2 - exponent);
}

/// Lipschitz constant of C_r on the unit sphere, valid for d >= 3.
inline double lipschitz_cr(std::size_t d) {
  detail::require(d >= 3, ErrorKind::unsupported, "the C_r Lipschitz bound needs d >= 3");
  return std::sqrt(8.0) * std::log(static_cast<double>(d));
}

/// The generic parameters that the C_r bound specializes: k = 2d - 1, eta = sqrt(8) ln d.
inline LevyParams levy_params_cr(std::size_t d, double eps) {
  return LevyParams{2 * static_cast<std::uint64_t>(d) - 1, eps, lipschitz_cr(d)};
}

/// Purity and trace distance both use k = 2d - 1 with eta = 2.
inline LevyParams levy_params_eta2(std::size_t d, double eps) {
  detail::require(d >= 1, ErrorKind::invalid_dimension, "dimension must be >= 1");
  return LevyParams{2 * static_cast<std::uint64_t>(d) - 1, eps, 2.0};
}

/// 2 exp(-d eps^2 / (36 pi^3 ln 2 (ln d)^2)), the printed C_r concentration bound.
inline BoundValue levy_bound_cr(std::size_t d, double eps) {
  detail::require(d >= 3, ErrorKind::unsupported, "the C_r concentration bound needs d >= 3");
  detail::require(eps > 0.0, ErrorKind::invalid_epsilon, "epsilon must be positive");
  const double log_d = std::log(static_cast<double>(d));
  const double denom = 36.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::ln2 *
                       log_d * log_d;
  return BoundValue::from_log(std::numbers::ln2 - static_cast<double>(d) * eps * eps / denom);
}

/// 2 exp(-d eps^2 / (18 pi^3 ln 2)) for the classical purity.
inline BoundValue levy_bound_purity(std::size_t d, double eps) {
  detail::require(d >= 1, ErrorKind::invalid_dimension, "dimension must be >= 1");
  detail::require(eps > 0.0, ErrorKind::invalid_epsilon, "epsilon must be positive");
  const double denom = 18.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::ln2;
  return BoundValue::from_log(std::numbers::ln2 - static_cast<double>(d) * eps * eps / denom);
}

/// Trace distance to I/d shares the purity bound's form (eta = 2).
inline BoundValue levy_bound_trdist(std::size_t d, double eps) { return levy_bound_purity(d, eps); }

struct SubspaceDimension {
  std::uint64_t s = 0;
  /// d (eps / ln d)^2.5 / 16461 before flooring.
  double unfloored = 0.0;
  /// Set when d < 32921, where s >= 2 is impossible.
  bool below_nontrivial_scale = false;
};

inline void validate_subspace_args(std::size_t d, double eps) {
  detail::require(d >= 3, ErrorKind::invalid_dimension, "coherent subspaces need d >= 3");
  const double log_d = std::log(static_cast<double>(d));
  detail::require(eps > 0.0 && eps < log_d, ErrorKind::invalid_epsilon,
                  "epsilon must lie in (0, ln d)");
}

/// s = floor(d K (eps / ln d)^2.5) with K = 1/16461. Returns s = 0 rather
/// than failing when the guarantee is vacuous.
inline SubspaceDimension subspace_dimension(std::size_t d, double eps) {
  validate_subspace_args(d, eps);
  const auto x = static_cast<double>(d);
  SubspaceDimension out;
  out.unfloored = x * std::pow(eps / std::log(x), 2.5) / kSubspaceInverseK;
  out.s = static_cast<std::uint64_t>(std::floor(out.unfloored));
  out.below_nontrivial_scale = d < kSubspaceNontrivialDim;
  return out;
}

/// H_d - 1 - eps, the floor met by every state of the coherent subspace.
inline double subspace_threshold(std::size_t d, double eps) {
  validate_subspace_args(d, eps);
  return expected_cr(d) - eps;
}

/// ln of the eps0-net size bound (5 / eps0)^{2d}; the net itself is never built.
inline double net_log_size(std::size_t d, double eps0) {
  detail::require(d >= 1, ErrorKind::invalid_dimension, "dimension must be >= 1");
  detail::require(eps0 > 0.0 && eps0 < 1.0, ErrorKind::invalid_epsilon, "net resolution must lie in (0, 1)");
  return 2.0 * static_cast<double>(d) * std::log(5.0 / eps0);
}

/// Net resolution eps / (sqrt(8) ln d) used for the coherent-subspace argument.
inline double subspace_net_resolution(std::size_t d, double eps) { return eps / lipschitz_cr(d); }

/// C_l1(psi) <= sqrt(d (d - 1) (1 - P)).
inline double l1_upper_bound_from_purity(std::size_t d, double purity) {
  detail::require(d >= 1, ErrorKind::invalid_dimension, "dimension must be >= 1");
  const auto x = static_cast<double>(d);
  constexpr double slack = 1e-12;
  detail::require(purity >= 1.0 / x - slack && purity <= 1.0 + slack, ErrorKind::invalid_argument,
                  "purity must lie in [1/d, 1]");
  return std::sqrt(x * (x - 1.0) * std::max(0.0, 1.0 - purity));
}

/// The l1 bound evaluated at the typical purity 2/(d+1).
inline double typical_l1_upper(std::size_t d) {
  detail::require(d >= 1, ErrorKind::invalid_dimension, "dimension must be >= 1");
  const auto x = static_cast<double>(d);
  return std::sqrt(x * (x - 1.0) * (x - 1.0) / (x + 1.0));
}

/// Limit of the typical Fannes floor divided by ln d: 1 - 1/e.
inline double fannes_asymptote() noexcept { return 1.0 - std::exp(-1.0); }

/// (1 - T) ln d - H2(T) at the typical T = (1 - 1/d)^d.
inline double typical_fannes_floor(std::size_t d) {
  detail::require(d >= 2, ErrorKind::invalid_dimension, "Fannes floor needs d >= 2");
  const double t = typical_half_trace_distance(d);
  const double h2 = -t * std::log(t) - (1.0 - t) * std::log1p(-t);
  return (1.0 - t) * std::log(static_cast<double>(d)) - h2;
}

}  // namespace cohlab
