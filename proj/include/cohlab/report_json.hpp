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

// JSON and CSV encodings of experiment reports. Doubles are written in the
// shortest form that parses back to the same bits, so payloads round-trip.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"

#include "cohlab/analytics.hpp"
#include "cohlab/experiments.hpp"

namespace cohlab {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

namespace detail {

template <typename T>
Json optional_to_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace detail

inline void to_json(Json& j, MeasureKind k) { j = std::string(to_string(k)); }
inline void from_json(const Json& j, MeasureKind& k) { k = parse_measure_kind(j.get<std::string>()); }

inline void to_json(Json& j, const BoundValue& b) {
  j = Json{{"raw", b.raw}, {"effective", b.effective}, {"log_raw", b.log_raw}};
}
inline void from_json(const Json& j, BoundValue& b) {
  j.at("raw").get_to(b.raw);
  j.at("effective").get_to(b.effective);
  j.at("log_raw").get_to(b.log_raw);
}

inline void to_json(Json& j, const ExperimentConfig& c) {
  j = Json{{"dim", c.dim},
           {"trials", c.trials},
           {"master_seed", c.master_seed},
           {"epsilons", c.epsilons},
           {"histogram_bins", c.histogram_bins},
           {"measure_kind", c.measure_kind}};
}
inline void from_json(const Json& j, ExperimentConfig& c) {
  j.at("dim").get_to(c.dim);
  j.at("trials").get_to(c.trials);
  j.at("master_seed").get_to(c.master_seed);
  j.at("epsilons").get_to(c.epsilons);
  j.at("histogram_bins").get_to(c.histogram_bins);
  j.at("measure_kind").get_to(c.measure_kind);
}

inline void to_json(Json& j, const HistogramBin& b) {
  j = Json{{"bin_low", b.low}, {"bin_high", b.high}, {"count", b.count}};
}
inline void from_json(const Json& j, HistogramBin& b) {
  j.at("bin_low").get_to(b.low);
  j.at("bin_high").get_to(b.high);
  j.at("count").get_to(b.count);
}

inline void to_json(Json& j, const TailEntry& t) {
  j = Json{{"epsilon", t.epsilon},
           {"empirical_tail_frequency", t.empirical_tail_frequency},
           {"levy_raw", t.levy_raw},
           {"levy_effective", t.levy_effective},
           {"levy_log_raw", t.levy_log_raw},
           {"bound_available", t.bound_available},
           {"exceeds_bound", t.exceeds_bound}};
}
inline void from_json(const Json& j, TailEntry& t) {
  j.at("epsilon").get_to(t.epsilon);
  j.at("empirical_tail_frequency").get_to(t.empirical_tail_frequency);
  j.at("levy_raw").get_to(t.levy_raw);
  j.at("levy_effective").get_to(t.levy_effective);
  j.at("levy_log_raw").get_to(t.levy_log_raw);
  j.at("bound_available").get_to(t.bound_available);
  j.at("exceeds_bound").get_to(t.exceeds_bound);
}

inline void to_json(Json& j, const ConcentrationReport& r) {
  j = Json{{"config", r.config},
           {"empirical_mean", r.empirical_mean},
           {"empirical_stderr", r.empirical_stderr},
           {"empirical_variance", r.empirical_variance},
           {"observed_min", r.observed_min},
           {"observed_max", r.observed_max},
           {"analytic_mean", detail::optional_to_json(r.analytic_mean)},
           {"mean_is_empirical_only", !r.analytic_mean.has_value()},
           {"typical_upper", detail::optional_to_json(r.typical_upper)},
           {"tail_center", r.tail_center},
           {"tails_centered_empirically", r.tails_centered_empirically},
           {"histogram", r.histogram},
           {"tails", r.tails},
           {"scaled_mean", detail::optional_to_json(r.scaled_mean)},
           {"scaled_variance", detail::optional_to_json(r.scaled_variance)},
           {"bound_flagged", r.bound_flagged}};
}
inline void from_json(const Json& j, ConcentrationReport& r) {
  j.at("config").get_to(r.config);
  j.at("empirical_mean").get_to(r.empirical_mean);
  j.at("empirical_stderr").get_to(r.empirical_stderr);
  j.at("empirical_variance").get_to(r.empirical_variance);
  j.at("observed_min").get_to(r.observed_min);
  j.at("observed_max").get_to(r.observed_max);
  r.analytic_mean = detail::optional_from_json<double>(j.at("analytic_mean"));
  r.typical_upper = detail::optional_from_json<double>(j.at("typical_upper"));
  j.at("tail_center").get_to(r.tail_center);
  j.at("tails_centered_empirically").get_to(r.tails_centered_empirically);
  j.at("histogram").get_to(r.histogram);
  j.at("tails").get_to(r.tails);
  r.scaled_mean = detail::optional_from_json<double>(j.at("scaled_mean"));
  r.scaled_variance = detail::optional_from_json<double>(j.at("scaled_variance"));
  j.at("bound_flagged").get_to(r.bound_flagged);
}

inline void to_json(Json& j, const SubspaceFloorReport& r) {
  j = Json{{"d", r.d},
           {"eps", r.eps},
           {"s", r.s},
           {"threshold", r.threshold},
           {"n_states", r.n_states},
           {"min_observed_cr", r.min_observed_cr},
           {"mean_observed_cr", r.mean_observed_cr},
           {"violations", r.violations},
           {"master_seed", r.master_seed},
           {"net_log_size", r.net_log_size},
           {"below_nontrivial_scale", r.below_nontrivial_scale},
           {"check", "sampled"}};
}
inline void from_json(const Json& j, SubspaceFloorReport& r) {
  j.at("d").get_to(r.d);
  j.at("eps").get_to(r.eps);
  j.at("s").get_to(r.s);
  j.at("threshold").get_to(r.threshold);
  j.at("n_states").get_to(r.n_states);
  j.at("min_observed_cr").get_to(r.min_observed_cr);
  j.at("mean_observed_cr").get_to(r.mean_observed_cr);
  j.at("violations").get_to(r.violations);
  j.at("master_seed").get_to(r.master_seed);
  j.at("net_log_size").get_to(r.net_log_size);
  j.at("below_nontrivial_scale").get_to(r.below_nontrivial_scale);
}

inline void to_json(Json& j, const DecompositionCheckReport& r) {
  j = Json{{"d", r.d},
           {"eps", r.eps},
           {"s", r.s},
           {"threshold", r.threshold},
           {"n_ensembles", r.n_ensembles},
           {"ensemble_size", r.ensemble_size},
           {"m_out", r.m_out},
           {"redecompositions", r.redecompositions},
           {"decompositions_evaluated", r.decompositions_evaluated},
           {"min_average", r.min_average},
           {"violations", r.violations},
           {"ensemble_minima", r.ensemble_minima},
           {"master_seed", r.master_seed}};
}

inline void to_json(Json& j, const MatrixIntegralReport& r) {
  j = Json{{"d", r.d},
           {"n_unitaries", r.n_unitaries},
           {"input", r.input == TwirlInput::basis_projector ? "basis_projector" : "maximally_mixed"},
           {"max_deviation", r.max_deviation},
           {"tolerance", r.tolerance},
           {"passed", r.passed},
           {"closed_form_diagonal", r.closed_form_diagonal},
           {"monte_carlo_diagonal", r.monte_carlo_diagonal},
           {"master_seed", r.master_seed}};
}

inline void to_json(Json& j, const InequalitySweepReport& r) {
  j = Json{{"d", r.d},
           {"trials", r.trials},
           {"master_seed", r.master_seed},
           {"l1_purity_violations", r.l1_purity_violations},
           {"fannes_violations", r.fannes_violations},
           {"sharp_fannes_violations", r.sharp_fannes_violations},
           {"range_violations", r.range_violations},
           {"min_l1_slack", r.min_l1_slack},
           {"min_fannes_slack", r.min_fannes_slack}};
}

inline void to_json(Json& j, const MomentsReport& r) {
  j = Json{{"d", r.d},
           {"trials", r.trials},
           {"mean_p1", r.mean_p1},
           {"stderr_p1", r.stderr_p1},
           {"expected_p1", r.expected_p1},
           {"mean_p1_squared", r.mean_p1_squared},
           {"stderr_p1_squared", r.stderr_p1_squared},
           {"expected_p1_squared", r.expected_p1_squared},
           {"master_seed", r.master_seed}};
}

inline void to_json(Json& j, const KolmogorovReport& r) {
  j = Json{{"d", r.d}, {"samples", r.samples}, {"ks_distance", r.ks_distance}, {"master_seed", r.master_seed}};
}

/// Versioned wrapper around one report payload.
struct ReportEnvelope {
  std::string schema_version = kSchemaVersion;
  std::string command;
  std::string timestamp_utc;
  Json payload;
};

inline void to_json(Json& j, const ReportEnvelope& e) {
  j = Json{{"schema_version", e.schema_version},
           {"command", e.command},
           {"timestamp_utc", e.timestamp_utc},
           {"payload", e.payload}};
}
inline void from_json(const Json& j, ReportEnvelope& e) {
  j.at("schema_version").get_to(e.schema_version);
  j.at("command").get_to(e.command);
  j.at("timestamp_utc").get_to(e.timestamp_utc);
  e.payload = j.at("payload");
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline ReportEnvelope make_envelope(std::string command, Json payload) {
  return ReportEnvelope{kSchemaVersion, std::move(command), utc_timestamp(), std::move(payload)};
}

/// `bin_low,bin_high,count` rows behind a header; 17 significant digits.
inline void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins) {
  out << "bin_low,bin_high,count\n";
  char buf[96];
  for (const HistogramBin& b : bins) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%llu\n", b.low, b.high, static_cast<unsigned long long>(b.count));
    out << buf;
  }
}

}  // namespace cohlab
