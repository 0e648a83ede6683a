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

// Seeded Monte Carlo campaigns that confront sampled statistics with the
// closed forms in analytics.hpp.
//
// Trials are independent work items. Trial i draws from stream i of the
// campaign seed and writes into slot i; every reduction then runs serially
// in trial order, so reports are identical for any thread count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cohlab/analytics.hpp"
#include "cohlab/error.hpp"
#include "cohlab/measures.hpp"
#include "cohlab/numeric.hpp"
#include "cohlab/random_stream.hpp"
#include "cohlab/sampler.hpp"
#include "cohlab/states.hpp"

namespace cohlab {

enum class MeasureKind { cr, l1, purity, trdist };

inline std::string_view to_string(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::cr: return "cr";
    case MeasureKind::l1: return "l1";
    case MeasureKind::purity: return "purity";
    case MeasureKind::trdist: return "trdist";
  }
  return "cr";
}

inline MeasureKind parse_measure_kind(std::string_view name) {
  if (name == "cr") return MeasureKind::cr;
  if (name == "l1") return MeasureKind::l1;
  if (name == "purity") return MeasureKind::purity;
  if (name == "trdist") return MeasureKind::trdist;
  detail::fail(ErrorKind::invalid_argument, "unknown measure '" + std::string(name) + "'");
}

inline double evaluate_measure(MeasureKind kind, const PureState& psi) {
  switch (kind) {
    case MeasureKind::cr: return relative_entropy_coherence(psi);
    case MeasureKind::l1: return l1_coherence_pure(psi);
    case MeasureKind::purity: return classical_purity(psi);
    case MeasureKind::trdist: return trace_distance_diag_mm(psi);
  }
  return 0.0;
}

/// Stream tags that keep the sampling roles of one campaign independent.
namespace stream_tag {
inline constexpr std::uint64_t subspace = 1;
inline constexpr std::uint64_t subspace_states = 2;
inline constexpr std::uint64_t ensembles = 3;
inline constexpr std::uint64_t unitaries = 4;
}  // namespace stream_tag

struct ExperimentConfig {
  std::size_t dim = 2;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::vector<double> epsilons;
  std::size_t histogram_bins = 50;
  MeasureKind measure_kind = MeasureKind::cr;

  void validate() const {
    detail::require(dim >= 1, ErrorKind::invalid_dimension, "dim must be >= 1");
    detail::require(trials >= 1, ErrorKind::invalid_argument, "trials must be >= 1");
    detail::require(histogram_bins >= 2, ErrorKind::invalid_argument, "histogram needs >= 2 bins");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
      detail::require(epsilons[i] > 0.0 && std::isfinite(epsilons[i]), ErrorKind::invalid_epsilon,
                      "epsilons must be positive");
      detail::require(i == 0 || epsilons[i] > epsilons[i - 1], ErrorKind::invalid_epsilon,
                      "epsilons must be strictly ascending");
    }
  }
};

struct HistogramBin {
  double low = 0.0;
  double high = 0.0;
  std::uint64_t count = 0;
};

struct TailEntry {
  double epsilon = 0.0;
  double empirical_tail_frequency = 0.0;
  double levy_raw = 2.0;
  double levy_effective = 1.0;
  double levy_log_raw = 0.0;
  /// False when no concentration bound applies (l1, or C_r with d < 3).
  bool bound_available = false;
  /// Frequency exceeded a non-vacuous bound. A warning, never an error.
  bool exceeds_bound = false;
};

struct ConcentrationReport {
  ExperimentConfig config;
  double empirical_mean = 0.0;
  double empirical_stderr = 0.0;
  double empirical_variance = 0.0;
  double observed_min = 0.0;
  double observed_max = 0.0;
  /// Closed-form mean; empty for l1, which has none.
  std::optional<double> analytic_mean;
  /// The typical upper bound sqrt(d (d-1)^2 / (d+1)), reported for l1 only.
  std::optional<double> typical_upper;
  /// Value the tails are measured around: analytic mean, or empirical mean for l1.
  double tail_center = 0.0;
  bool tails_centered_empirically = false;
  std::vector<HistogramBin> histogram;
  std::vector<TailEntry> tails;
  /// mean / ln d and variance / (ln d)^2; cr with d >= 2 only.
  std::optional<double> scaled_mean;
  std::optional<double> scaled_variance;
  bool bound_flagged = false;
};

namespace detail {

inline std::vector<HistogramBin> histogram(std::span<const double> values, double low, double high,
                                           std::size_t bins) {
  if (!(high > low)) {
    low -= 0.5;
    high += 0.5;
  }
  std::vector<HistogramBin> out(bins);
  const double width = high - low;
  for (std::size_t k = 0; k < bins; ++k) {
    out[k].low = low + width * static_cast<double>(k) / static_cast<double>(bins);
    out[k].high = low + width * static_cast<double>(k + 1) / static_cast<double>(bins);
  }
  for (double v : values) {
    const double pos = (v - low) / width * static_cast<double>(bins);
    const auto k = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(bins - 1)));
    ++out[k].count;
  }
  return out;
}

inline std::optional<BoundValue> concentration_bound(MeasureKind kind, std::size_t d, double eps) {
  switch (kind) {
    case MeasureKind::cr:
      if (d < 3) return std::nullopt;
      return levy_bound_cr(d, eps);
    case MeasureKind::purity: return levy_bound_purity(d, eps);
    case MeasureKind::trdist: return levy_bound_trdist(d, eps);
    case MeasureKind::l1: return std::nullopt;
  }
  return std::nullopt;
}

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;
  double stderr_of_mean = 0.0;
};

/// Two-pass compensated mean and unbiased variance.
inline SampleMoments sample_moments(std::span<const double> values) {
  SampleMoments m;
  const auto n = static_cast<double>(values.size());
  m.mean = compensated_sum(values) / n;
  if (values.size() > 1) {
    CompensatedSum acc;
    for (double v : values) acc.add((v - m.mean) * (v - m.mean));
    m.variance = acc.value() / (n - 1.0);
  }
  m.stderr_of_mean = std::sqrt(m.variance / n);
  return m;
}

}  // namespace detail

/// Runs config.trials Haar samples of the selected functional and compares the
/// empirical distribution with its analytic mean and Levy tail bounds.
inline ConcentrationReport run_concentration(const ExperimentConfig& config, unsigned threads = 1) {
  config.validate();
  const std::size_t d = config.dim;
  const std::vector<double> values = parallel_map<double>(config.trials, threads, [&](std::size_t i) {
    RandomStream stream(config.master_seed, i);
    return evaluate_measure(config.measure_kind, sample_haar_pure(d, stream));
  });

  ConcentrationReport r;
  r.config = config;
  const detail::SampleMoments m = detail::sample_moments(values);
  r.empirical_mean = m.mean;
  r.empirical_variance = m.variance;
  r.empirical_stderr = m.stderr_of_mean;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  r.observed_min = *lo;
  r.observed_max = *hi;

  switch (config.measure_kind) {
    case MeasureKind::cr: r.analytic_mean = expected_cr(d); break;
    case MeasureKind::purity: r.analytic_mean = expected_classical_purity(d); break;
    case MeasureKind::trdist: r.analytic_mean = expected_trace_distance(d); break;
    case MeasureKind::l1: r.typical_upper = typical_l1_upper(d); break;
  }
  r.tails_centered_empirically = !r.analytic_mean.has_value();
  r.tail_center = r.analytic_mean.value_or(r.empirical_mean);

  if (config.measure_kind == MeasureKind::cr) {
    const double log_d = std::log(static_cast<double>(d));
    r.histogram = detail::histogram(values, 0.0, log_d, config.histogram_bins);
    if (d >= 2) {
      r.scaled_mean = r.empirical_mean / log_d;
      r.scaled_variance = r.empirical_variance / (log_d * log_d);
    }
  } else {
    r.histogram = detail::histogram(values, r.observed_min, r.observed_max, config.histogram_bins);
  }

  for (double eps : config.epsilons) {
    TailEntry t;
    t.epsilon = eps;
    std::size_t beyond = 0;
    for (double v : values) beyond += std::abs(v - r.tail_center) > eps ? 1 : 0;
    t.empirical_tail_frequency = static_cast<double>(beyond) / static_cast<double>(values.size());
    if (const auto bound = detail::concentration_bound(config.measure_kind, d, eps)) {
      t.bound_available = true;
      t.levy_raw = bound->raw;
      t.levy_effective = bound->effective;
      t.levy_log_raw = bound->log_raw;
    } else {
      t.levy_log_raw = std::log(2.0);
    }
    t.exceeds_bound = t.levy_effective < 1.0 && t.empirical_tail_frequency > t.levy_effective;
    r.bound_flagged = r.bound_flagged || t.exceeds_bound;
    r.tails.push_back(t);
  }
  return r;
}

/// One C_r report per dimension with histograms over [0, ln d].
inline std::vector<ConcentrationReport> reproduce_fig1(const std::vector<std::size_t>& dims, std::size_t trials,
                                                       std::uint64_t seed, std::size_t bins = 50,
                                                       unsigned threads = 1) {
  detail::require(!dims.empty(), ErrorKind::invalid_argument, "need at least one dimension");
  std::vector<ConcentrationReport> out;
  out.reserve(dims.size());
  for (std::size_t d : dims) {
    ExperimentConfig config;
    config.dim = d;
    config.trials = trials;
    config.master_seed = seed;
    config.histogram_bins = bins;
    config.measure_kind = MeasureKind::cr;
    out.push_back(run_concentration(config, threads));
  }
  return out;
}

/// Sampled check of the coherent-subspace guarantee. The theorem certifies all
/// states of S via an eps-net of size exp(net_log_size); this only samples S.
struct SubspaceFloorReport {
  std::size_t d = 0;
  double eps = 0.0;
  std::uint64_t s = 0;
  double threshold = 0.0;
  std::size_t n_states = 0;
  double min_observed_cr = 0.0;
  double mean_observed_cr = 0.0;
  std::uint64_t violations = 0;
  std::uint64_t master_seed = 0;
  double net_log_size = 0.0;
  bool below_nontrivial_scale = false;
};

namespace detail {

inline SubspaceDimension require_subspace(std::size_t d, double eps, std::uint64_t min_s) {
  const SubspaceDimension sd = subspace_dimension(d, eps);
  if (sd.s < min_s) {
    fail(ErrorKind::vacuous_guarantee,
         "coherent-subspace dimension is " + std::to_string(sd.s) + " (need >= " + std::to_string(min_s) +
             ") at d=" + std::to_string(d) + "; a nontrivial subspace (s >= 2) requires d >= " +
             std::to_string(kSubspaceNontrivialDim));
  }
  return sd;
}

}  // namespace detail

inline SubspaceFloorReport run_subspace_floor(std::size_t d, double eps, std::size_t n_states, std::uint64_t seed,
                                              unsigned threads = 1) {
  detail::require(n_states >= 1, ErrorKind::invalid_argument, "need at least one state");
  const SubspaceDimension sd = detail::require_subspace(d, eps, 1);

  SubspaceFloorReport r;
  r.d = d;
  r.eps = eps;
  r.s = sd.s;
  r.below_nontrivial_scale = sd.below_nontrivial_scale;
  r.threshold = subspace_threshold(d, eps);
  r.n_states = n_states;
  r.master_seed = seed;
  r.net_log_size = net_log_size(d, subspace_net_resolution(d, eps));

  RandomStream basis_stream(derive_seed(seed, stream_tag::subspace), 0);
  const SubspaceBasis basis = sample_random_subspace(d, static_cast<std::size_t>(sd.s), basis_stream);
  const std::vector<double> crs = parallel_map<double>(n_states, threads, [&](std::size_t i) {
    RandomStream stream(derive_seed(seed, stream_tag::subspace_states), i);
    return relative_entropy_coherence(sample_pure_in_subspace(basis, stream));
  });
  r.min_observed_cr = *std::min_element(crs.begin(), crs.end());
  r.mean_observed_cr = compensated_sum(crs) / static_cast<double>(crs.size());
  r.violations = static_cast<std::uint64_t>(
      std::count_if(crs.begin(), crs.end(), [&](double c) { return c < r.threshold; }));
  return r;
}

/// Minimum decomposition average over the seed ensemble and `redecompositions`
/// random re-decompositions of the same density matrix.
struct DecompositionScan {
  double min_average = 0.0;
  std::uint64_t evaluated = 0;
  std::uint64_t below_threshold = 0;
};

inline DecompositionScan scan_decompositions(const Decomposition& seed_ensemble, std::size_t m_out,
                                             std::size_t redecompositions, double threshold,
                                             RandomStream& stream) {
  DecompositionScan scan;
  auto record = [&](double average) {
    scan.min_average = scan.evaluated == 0 ? average : std::min(scan.min_average, average);
    ++scan.evaluated;
    if (average < threshold) ++scan.below_threshold;
  };
  record(decomposition_average_coherence(seed_ensemble));
  for (std::size_t k = 0; k < redecompositions; ++k) {
    record(decomposition_average_coherence(sample_random_decomposition(seed_ensemble, m_out, stream)));
  }
  return scan;
}

struct DecompositionCheckReport {
  std::size_t d = 0;
  double eps = 0.0;
  std::uint64_t s = 0;
  double threshold = 0.0;
  std::size_t n_ensembles = 0;
  std::size_t ensemble_size = 0;
  std::size_t m_out = 0;
  std::size_t redecompositions = 0;
  std::uint64_t decompositions_evaluated = 0;
  double min_average = 0.0;
  std::uint64_t violations = 0;
  std::vector<double> ensemble_minima;
  std::uint64_t master_seed = 0;
};

/// Mixed states supported on one random coherent subspace. Each ensemble has
/// min(s, m_out) members drawn in the subspace with weights uniform on the
/// simplex; every decomposition average of such a state should clear the
/// subspace threshold.
inline DecompositionCheckReport run_decomposition_check(std::size_t d, double eps, std::size_t n_ensembles,
                                                        std::size_t m_out, std::uint64_t seed,
                                                        std::size_t redecompositions = 4, unsigned threads = 1) {
  detail::require(n_ensembles >= 1, ErrorKind::invalid_argument, "need at least one ensemble");
  const SubspaceDimension sd = detail::require_subspace(d, eps, 2);
  const std::size_t members = std::min<std::size_t>(static_cast<std::size_t>(sd.s), m_out);
  detail::require(members >= 1, ErrorKind::invalid_argument, "m_out must be >= 1");

  DecompositionCheckReport r;
  r.d = d;
  r.eps = eps;
  r.s = sd.s;
  r.threshold = subspace_threshold(d, eps);
  r.n_ensembles = n_ensembles;
  r.ensemble_size = members;
  r.m_out = m_out;
  r.redecompositions = redecompositions;
  r.master_seed = seed;

  RandomStream basis_stream(derive_seed(seed, stream_tag::subspace), 0);
  const SubspaceBasis basis = sample_random_subspace(d, static_cast<std::size_t>(sd.s), basis_stream);
  const std::vector<DecompositionScan> scans =
      parallel_map<DecompositionScan>(n_ensembles, threads, [&](std::size_t e) {
        RandomStream stream(derive_seed(seed, stream_tag::ensembles), e);
        const DiagonalDistribution w = diagonal_part(sample_haar_pure(members, stream));
        std::vector<PureState> states;
        for (std::size_t a = 0; a < members; ++a) states.push_back(sample_pure_in_subspace(basis, stream));
        const Decomposition ensemble(std::vector<double>(w.probs().begin(), w.probs().end()), std::move(states));
        return scan_decompositions(ensemble, m_out, redecompositions, r.threshold, stream);
      });

  for (const DecompositionScan& scan : scans) {
    r.ensemble_minima.push_back(scan.min_average);
    r.decompositions_evaluated += scan.evaluated;
    r.violations += scan.below_threshold;
  }
  r.min_average = *std::min_element(r.ensemble_minima.begin(), r.ensemble_minima.end());
  return r;
}

enum class TwirlInput { basis_projector, maximally_mixed };

struct MatrixIntegralReport {
  std::size_t d = 0;
  std::size_t n_unitaries = 0;
  TwirlInput input = TwirlInput::basis_projector;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// Real parts of the diagonals; off-diagonals of both matrices vanish.
  std::vector<double> closed_form_diagonal;
  std::vector<double> monte_carlo_diagonal;
  std::uint64_t master_seed = 0;
};

/// Closed form of the Haar twirl of the dephasing channel:
/// int dU U^dagger Pi(U X U^dagger) U = (Tr X * I + X) / (d + 1).
inline Eigen::MatrixXcd dephasing_twirl_closed_form(const Eigen::MatrixXcd& x) {
  const auto d = static_cast<double>(x.rows());
  return (x.trace() * Eigen::MatrixXcd::Identity(x.rows(), x.cols()) + x) / (d + 1.0);
}

/// Monte Carlo estimate of the twirl, compared entrywise with the closed form
/// at tolerance 5 / sqrt(n).
inline MatrixIntegralReport run_matrix_integral_check(std::size_t d, std::size_t n_unitaries, std::uint64_t seed,
                                                      TwirlInput input = TwirlInput::basis_projector,
                                                      unsigned threads = 1) {
  detail::require(d >= 2 && d <= 16, ErrorKind::unsupported, "matrix integral check supports 2 <= d <= 16");
  detail::require(n_unitaries >= 1, ErrorKind::invalid_argument, "need at least one unitary");
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
  if (input == TwirlInput::basis_projector) {
    x(0, 0) = 1.0;
  } else {
    x = Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(d);
  }

  // Fixed-size blocks keep the summation order independent of the thread count.
  constexpr std::size_t block = 1024;
  const std::size_t blocks = (n_unitaries + block - 1) / block;
  const std::vector<Eigen::MatrixXcd> partial = parallel_map<Eigen::MatrixXcd>(blocks, threads, [&](std::size_t b) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    const std::size_t end = std::min(n_unitaries, (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i) {
      RandomStream stream(derive_seed(seed, stream_tag::unitaries), i);
      const Eigen::MatrixXcd u = sample_haar_unitary(d, stream).entries();
      const Eigen::VectorXcd dephased = (u * x * u.adjoint()).diagonal();
      acc += u.adjoint() * dephased.asDiagonal() * u;
    }
    return acc;
  });
  Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(n, n);
  for (const Eigen::MatrixXcd& p : partial) mean += p;
  mean /= static_cast<double>(n_unitaries);

  const Eigen::MatrixXcd closed = dephasing_twirl_closed_form(x);
  MatrixIntegralReport r;
  r.d = d;
  r.n_unitaries = n_unitaries;
  r.input = input;
  r.max_deviation = (mean - closed).cwiseAbs().maxCoeff();
  r.tolerance = 5.0 / std::sqrt(static_cast<double>(n_unitaries));
  r.passed = r.max_deviation < r.tolerance;
  for (Eigen::Index i = 0; i < n; ++i) {
    r.closed_form_diagonal.push_back(closed(i, i).real());
    r.monte_carlo_diagonal.push_back(mean(i, i).real());
  }
  r.master_seed = seed;
  return r;
}

/// Per-state inequalities that hold for every state, so every count should be 0.
struct InequalitySweepReport {
  std::size_t d = 0;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t l1_purity_violations = 0;
  std::uint64_t fannes_violations = 0;
  std::uint64_t sharp_fannes_violations = 0;
  std::uint64_t range_violations = 0;
  /// Smallest observed bound - C_l1 and C_r - floor.
  double min_l1_slack = 0.0;
  double min_fannes_slack = 0.0;
};

/// Rounding allowance for the equality cases of the inequalities.
inline constexpr double kInequalityTolerance = 1e-10;

struct InequalityOutcome {
  bool l1_ok = true;
  bool fannes_ok = true;
  bool sharp_fannes_ok = true;
  bool range_ok = true;
  double l1_slack = 0.0;
  double fannes_slack = 0.0;
};

inline InequalityOutcome check_inequalities(const PureState& psi) {
  const CoherenceProfile p = coherence_profile(psi);
  const std::size_t d = psi.dim();
  const double log_d = std::log(static_cast<double>(d));
  InequalityOutcome out;
  out.l1_slack = l1_upper_bound_from_purity(d, std::clamp(p.purity, 1.0 / static_cast<double>(d), 1.0)) - p.c_l1;
  out.fannes_slack = p.c_r - p.fannes_floor;
  out.l1_ok = out.l1_slack >= -kInequalityTolerance;
  out.fannes_ok = out.fannes_slack >= -kInequalityTolerance;
  out.sharp_fannes_ok = p.c_r - p.fannes_floor_sharp >= -kInequalityTolerance;
  out.range_ok = p.c_r >= -kInequalityTolerance && p.c_r <= log_d + kInequalityTolerance;
  return out;
}

inline InequalitySweepReport run_inequality_sweep(std::size_t d, std::size_t trials, std::uint64_t seed,
                                                  unsigned threads = 1) {
  detail::require(d >= 2, ErrorKind::invalid_dimension, "inequality sweep needs d >= 2");
  detail::require(trials >= 1, ErrorKind::invalid_argument, "need at least one trial");
  const std::vector<InequalityOutcome> outcomes =
      parallel_map<InequalityOutcome>(trials, threads, [&](std::size_t i) {
        RandomStream stream(seed, i);
        return check_inequalities(sample_haar_pure(d, stream));
      });
  InequalitySweepReport r;
  r.d = d;
  r.trials = trials;
  r.master_seed = seed;
  r.min_l1_slack = outcomes.front().l1_slack;
  r.min_fannes_slack = outcomes.front().fannes_slack;
  for (const InequalityOutcome& o : outcomes) {
    r.l1_purity_violations += o.l1_ok ? 0 : 1;
    r.fannes_violations += o.fannes_ok ? 0 : 1;
    r.sharp_fannes_violations += o.sharp_fannes_ok ? 0 : 1;
    r.range_violations += o.range_ok ? 0 : 1;
    r.min_l1_slack = std::min(r.min_l1_slack, o.l1_slack);
    r.min_fannes_slack = std::min(r.min_fannes_slack, o.fannes_slack);
  }
  return r;
}

/// First two moments of p_1 = |psi_1|^2 against Beta(1, d-1):
/// E p_1 = 1/d, E p_1^2 = 2 / (d (d+1)).
struct MomentsReport {
  std::size_t d = 0;
  std::size_t trials = 0;
  double mean_p1 = 0.0;
  double stderr_p1 = 0.0;
  double expected_p1 = 0.0;
  double mean_p1_squared = 0.0;
  double stderr_p1_squared = 0.0;
  double expected_p1_squared = 0.0;
  std::uint64_t master_seed = 0;

  double z_p1() const { return stderr_p1 > 0 ? std::abs(mean_p1 - expected_p1) / stderr_p1 : 0.0; }
  double z_p1_squared() const {
    return stderr_p1_squared > 0 ? std::abs(mean_p1_squared - expected_p1_squared) / stderr_p1_squared : 0.0;
  }
};

inline MomentsReport run_moments_check(std::size_t d, std::size_t trials, std::uint64_t seed,
                                       unsigned threads = 1) {
  detail::require(d >= 1, ErrorKind::invalid_dimension, "dimension must be >= 1");
  detail::require(trials >= 2, ErrorKind::invalid_argument, "need at least two trials");
  const std::vector<double> p1 = parallel_map<double>(trials, threads, [&](std::size_t i) {
    RandomStream stream(seed, i);
    return std::norm(sample_haar_pure(d, stream)[0]);
  });
  std::vector<double> p1_sq(p1.size());
  std::transform(p1.begin(), p1.end(), p1_sq.begin(), [](double p) { return p * p; });
  const auto m1 = detail::sample_moments(p1);
  const auto m2 = detail::sample_moments(p1_sq);
  const auto x = static_cast<double>(d);
  MomentsReport r;
  r.d = d;
  r.trials = trials;
  r.mean_p1 = m1.mean;
  r.stderr_p1 = m1.stderr_of_mean;
  r.expected_p1 = 1.0 / x;
  r.mean_p1_squared = m2.mean;
  r.stderr_p1_squared = m2.stderr_of_mean;
  r.expected_p1_squared = 2.0 / (x * (x + 1.0));
  r.master_seed = seed;
  return r;
}

/// CDF of r = |U_11| for a Haar unitary: 1 - (1 - r^2)^{d-1}, the integral of
/// the density (d-1)(1 - r^2)^{d-2} 2r.
inline double unitary_entry_modulus_cdf(std::size_t d, double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  return 1.0 - std::pow(1.0 - r * r, static_cast<double>(d) - 1.0);
}

struct KolmogorovReport {
  std::size_t d = 0;
  std::size_t samples = 0;
  double ks_distance = 0.0;
  std::uint64_t master_seed = 0;
};

/// Kolmogorov-Smirnov distance between sampled |U_11| and its exact law.
inline KolmogorovReport run_unitary_entry_ks(std::size_t d, std::size_t samples, std::uint64_t seed,
                                             unsigned threads = 1) {
  detail::require(d >= 2, ErrorKind::invalid_dimension, "KS check needs d >= 2");
  detail::require(samples >= 1, ErrorKind::invalid_argument, "need at least one sample");
  std::vector<double> r = parallel_map<double>(samples, threads, [&](std::size_t i) {
    RandomStream stream(derive_seed(seed, stream_tag::unitaries), i);
    return std::abs(sample_haar_unitary(d, stream).entries()(0, 0));
  });
  std::sort(r.begin(), r.end());
  const auto n = static_cast<double>(r.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double f = unitary_entry_modulus_cdf(d, r[i]);
    ks = std::max({ks, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  KolmogorovReport out;
  out.d = d;
  out.samples = samples;
  out.ks_distance = ks;
  out.master_seed = seed;
  return out;
}

}  // namespace cohlab
