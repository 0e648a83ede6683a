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

#include "cohlab/report_json.hpp"

#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace cohlab {
namespace {

ConcentrationReport sample_report(MeasureKind kind) {
  ExperimentConfig c;
  c.dim = 25;
  c.trials = 777;
  c.master_seed = 0xFFFFFFFFFFFFFFF1ull;
  c.epsilons = {0.01, 0.25};
  c.histogram_bins = 13;
  c.measure_kind = kind;
  return run_concentration(c);
}

TEST(ReportJson, ConcentrationReportRoundTripsLosslessly) {
  for (MeasureKind kind : {MeasureKind::cr, MeasureKind::l1, MeasureKind::purity, MeasureKind::trdist}) {
    const ConcentrationReport original = sample_report(kind);
    const Json encoded = original;
    const ConcentrationReport decoded = Json::parse(encoded.dump()).get<ConcentrationReport>();
    // Equality of the re-encoded text implies every double survived bit-for-bit.
    EXPECT_EQ(Json(decoded).dump(), encoded.dump());
    EXPECT_EQ(decoded.empirical_mean, original.empirical_mean);
    EXPECT_EQ(decoded.config.master_seed, original.config.master_seed);
    EXPECT_EQ(decoded.analytic_mean.has_value(), original.analytic_mean.has_value());
  }
}

TEST(ReportJson, EnvelopeRoundTrips) {
  const SubspaceFloorReport r = run_subspace_floor(34000, 0.999 * std::log(34000.0), 20, 3);
  const ReportEnvelope env = make_envelope("subspace", r);
  const ReportEnvelope back = Json::parse(Json(env).dump()).get<ReportEnvelope>();
  EXPECT_EQ(back.schema_version, "1");
  EXPECT_EQ(back.command, "subspace");
  EXPECT_EQ(back.timestamp_utc, env.timestamp_utc);
  const SubspaceFloorReport decoded = back.payload.get<SubspaceFloorReport>();
  EXPECT_EQ(decoded.threshold, r.threshold);
  EXPECT_EQ(decoded.min_observed_cr, r.min_observed_cr);
  EXPECT_EQ(decoded.violations, r.violations);
}

TEST(ReportJson, TimestampIsIso8601Utc) {
  const std::string ts = utc_timestamp();
  ASSERT_EQ(ts.size(), 20u);
  EXPECT_EQ(ts[4], '-');
  EXPECT_EQ(ts[10], 'T');
  EXPECT_EQ(ts.back(), 'Z');
}

TEST(HistogramCsv, MatchesJsonHistogram) {
  const ConcentrationReport r = sample_report(MeasureKind::cr);
  std::ostringstream csv;
  write_histogram_csv(csv, r.histogram);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "bin_low,bin_high,count");
  const Json j = r;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    double lo = 0, hi = 0;
    unsigned long long count = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%llu", &lo, &hi, &count), 3);
    EXPECT_EQ(lo, j["histogram"][row]["bin_low"].get<double>());
    EXPECT_EQ(hi, j["histogram"][row]["bin_high"].get<double>());
    EXPECT_EQ(count, j["histogram"][row]["count"].get<std::uint64_t>());
    ++row;
  }
  EXPECT_EQ(row, r.histogram.size());
}

TEST(ReportJson, OptionalFieldsSerializeAsNull) {
  const Json j = sample_report(MeasureKind::l1);
  EXPECT_TRUE(j["analytic_mean"].is_null());
  EXPECT_TRUE(j["mean_is_empirical_only"].get<bool>());
  EXPECT_TRUE(j["scaled_mean"].is_null());
  EXPECT_FALSE(j["typical_upper"].is_null());
}

}  // namespace
}  // namespace cohlab
