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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cohlab/analytics.hpp"
#include "cohlab/cli.hpp"
#include "cohlab/experiments.hpp"
#include "cohlab/report_json.hpp"

namespace {

using namespace cohlab;

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool passed = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    passed = passed && ok;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string num(double v, int precision = 6) { return cli::fmt(v, precision); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Every concentration report produced here is also checked against its Levy bounds.
std::vector<ConcentrationReport> g_reports;

ConcentrationReport concentrate(MeasureKind kind, std::size_t d, std::size_t trials, std::vector<double> eps,
                                unsigned threads) {
  ExperimentConfig c;
  c.measure_kind = kind;
  c.dim = d;
  c.trials = trials;
  c.master_seed = kSeed;
  c.epsilons = std::move(eps);
  c.histogram_bins = 50;
  ConcentrationReport r = run_concentration(c, threads);
  g_reports.push_back(r);
  return r;
}

Json cli_payload(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  if (code != cli::kSuccess) throw std::runtime_error("cli exited " + std::to_string(code) + ": " + err.str());
  return Json::parse(out.str()).at("payload");
}

Outcome scaled_means(unsigned threads) {
  Outcome o;
  struct Row {
    std::size_t d;
    std::size_t trials;
    double target;
  };
  const Row rows[] = {{20, 100000, 0.87}, {30, 100000, 0.88}, {40, 100000, 0.89}, {500, 10000, 0.93}};
  const auto start = std::chrono::steady_clock::now();
  std::vector<Json> serial;
  for (const Row& row : rows) {
    serial.push_back(cli_payload({"--threads", "1", "concentrate", "--measure", "cr", "--dim", std::to_string(row.d),
                                  "--trials", std::to_string(row.trials), "--seed", std::to_string(kSeed)}));
  }
  const double serial_seconds = seconds_since(start);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    const double scaled = serial[i]["scaled_mean"].get<double>();
    o.check(std::abs(scaled - rows[i].target) <= 0.01,
            "d=" + std::to_string(rows[i].d) + " scaled " + num(scaled, 5) + " vs " + num(rows[i].target, 3));
    g_reports.push_back(serial[i].get<ConcentrationReport>());
  }
  o.check(serial_seconds < 60.0, "serial runtime " + num(serial_seconds, 3) + " s < 60 s");
  bool identical = true;
  for (std::size_t i = 0; i < serial.size(); ++i) {
    const Json parallel =
        cli_payload({"--threads", std::to_string(std::max(4u, threads)), "concentrate", "--measure", "cr", "--dim",
                     std::to_string(rows[i].d), "--trials", std::to_string(rows[i].trials), "--seed",
                     std::to_string(kSeed)});
    identical = identical && parallel.dump() == serial[i].dump();
  }
  o.check(identical, "parallel payloads byte-identical to serial");
  return o;
}

Outcome harmonic_law(unsigned threads) {
  Outcome o;
  for (std::size_t d : {2u, 5u, 50u, 1000u}) {
    const auto r = concentrate(MeasureKind::cr, d, 100000, {0.1 * std::log(static_cast<double>(d))}, threads);
    const double z = std::abs(r.empirical_mean - expected_cr(d)) / r.empirical_stderr;
    o.check(z <= 4.0, "d=" + std::to_string(d) + " mean " + num(r.empirical_mean) + " vs H_d-1 " +
                          num(expected_cr(d)) + " (z=" + num(z, 3) + ")");
  }
  o.check(expected_cr(2) == 0.5, "H_2 - 1 = 0.5");
  return o;
}

Outcome mean_check(MeasureKind kind, std::initializer_list<std::size_t> dims, double (*analytic)(std::size_t),
                   unsigned threads) {
  Outcome o;
  for (std::size_t d : dims) {
    const auto r = concentrate(kind, d, 100000, {0.01, 0.1, 1.0}, threads);
    const double z = std::abs(r.empirical_mean - analytic(d)) / r.empirical_stderr;
    o.check(z <= 4.0, "d=" + std::to_string(d) + " mean " + num(r.empirical_mean) + " vs " + num(analytic(d)) +
                          " (z=" + num(z, 3) + ")");
  }
  return o;
}

Outcome trace_distance(unsigned threads) {
  Outcome o = mean_check(MeasureKind::trdist, {2, 100, 1000}, expected_trace_distance, threads);
  const double at1000 = expected_trace_distance(1000);
  const double limit = 2.0 / std::numbers::e;
  o.check(std::abs(at1000 - 0.735391) < 5e-7, "2(1-1/1000)^1000 = " + num(at1000, 7));
  o.check(std::abs(at1000 - limit) < 4e-4, "|value - 2/e| = " + num(std::abs(at1000 - limit), 3) + " < 4e-4");
  return o;
}

Outcome concentration_trend(unsigned threads) {
  Outcome o;
  std::vector<double> freq;
  std::vector<double> scaled_var;
  std::string series;
  for (std::size_t d : {20u, 100u, 500u, 2000u}) {
    const double eps = 0.1 * std::log(static_cast<double>(d));
    const auto r = concentrate(MeasureKind::cr, d, 100000, {eps}, threads);
    freq.push_back(r.tails[0].empirical_tail_frequency);
    scaled_var.push_back(*r.scaled_variance);
    series += (series.empty() ? "" : ",") + num(freq.back(), 4);
  }
  bool non_increasing = true;
  for (std::size_t i = 1; i < freq.size(); ++i) non_increasing = non_increasing && freq[i] <= freq[i - 1];
  o.check(non_increasing && freq.front() > freq.back(), "tail freq at eps=0.1 ln d over d=20,100,500,2000: " + series);
  o.check(scaled_var[2] < scaled_var[0],
          "var(C_r/ln d): d=500 " + num(scaled_var[2], 4) + " < d=20 " + num(scaled_var[0], 4));
  return o;
}

Outcome tail_soundness() {
  Outcome o;
  std::size_t checked = 0;
  std::size_t exact = 0;
  bool ok = true;
  for (const ConcentrationReport& r : g_reports) {
    const double slack = 5.0 / std::sqrt(static_cast<double>(r.config.trials));
    for (const TailEntry& t : r.tails) {
      ++checked;
      if (t.levy_effective < 1.0) {
        ++exact;
        ok = ok && t.empirical_tail_frequency <= t.levy_effective;
      }
      ok = ok && t.empirical_tail_frequency <= t.levy_effective + slack;
    }
  }
  o.check(ok && checked > 0, std::to_string(checked) + " tail entries over " + std::to_string(g_reports.size()) +
                                 " reports, " + std::to_string(exact) + " with non-vacuous bounds checked exactly");
  return o;
}

Outcome subspace_floor(unsigned threads) {
  Outcome o;
  const double eps = 0.9 * std::log(100000.0);
  const auto start = std::chrono::steady_clock::now();
  const SubspaceFloorReport big = run_subspace_floor(100000, eps, 2000, kSeed, threads);
  const double secs = seconds_since(start);
  o.check(big.s == 4, "d=1e5 s=" + std::to_string(big.s));
  o.check(std::abs(big.threshold - 0.7285) < 1e-4, "threshold " + num(big.threshold, 6));
  o.check(big.violations == 0, "violations " + std::to_string(big.violations) + " (min C_r " +
                                   num(big.min_observed_cr, 6) + ")");
  o.check(secs < 120.0, "runtime " + num(secs, 3) + " s < 120 s");

  const SubspaceFloorReport mid = run_subspace_floor(34000, 0.999 * std::log(34000.0), 2000, kSeed, threads);
  o.check(mid.s == 2, "d=34000 s=" + std::to_string(mid.s));
  o.check(mid.violations == 0, "violations vs computed threshold " + num(mid.threshold, 5) + ": " +
                                   std::to_string(mid.violations));
  o.check(mid.min_observed_cr >= 0.0202, "no state below 0.0202 either (min C_r " + num(mid.min_observed_cr, 6) + ")");
  return o;
}

Outcome formation_floor(unsigned threads) {
  Outcome o;
  const DecompositionCheckReport r =
      run_decomposition_check(100000, 0.9 * std::log(100000.0), 20, 8, kSeed, 4, threads);
  o.check(r.violations == 0, std::to_string(r.decompositions_evaluated) + " decomposition averages, " +
                                 std::to_string(r.violations) + " below " + num(r.threshold, 5) + " (min " +
                                 num(r.min_average, 6) + ")");
  return o;
}

Outcome analytic_identities() {
  Outcome o;
  double worst_beta = 0.0;
  for (std::size_t d = 2; d <= 10000; ++d) worst_beta = std::max(worst_beta, std::abs(expected_cr_via_beta(d) - expected_cr(d)));
  double worst_quad = 0.0;
  for (std::size_t d = 2; d <= 50; ++d) worst_quad = std::max(worst_quad, std::abs(expected_cr_via_quadrature(d) - expected_cr(d)));
  o.check(worst_beta <= 1e-10, "beta route max err " + num(worst_beta, 3) + " <= 1e-10 on [2,1e4]");
  o.check(worst_quad <= 1e-6, "quadrature max err " + num(worst_quad, 3) + " <= 1e-6 on [2,50]");
  return o;
}

Outcome matrix_integral(unsigned threads) {
  Outcome o;
  for (std::size_t d : {2u, 4u, 8u}) {
    const MatrixIntegralReport r = run_matrix_integral_check(d, 100000, kSeed, TwirlInput::basis_projector, threads);
    o.check(r.max_deviation < 5.0 / std::sqrt(100000.0),
            "d=" + std::to_string(d) + " max dev " + num(r.max_deviation, 3) + " < " + num(r.tolerance, 3));
  }
  return o;
}

Outcome inequalities(unsigned threads) {
  Outcome o;
  for (std::size_t d : {2u, 3u, 10u, 100u}) {
    const InequalitySweepReport r = run_inequality_sweep(d, 10000, kSeed, threads);
    o.check(r.l1_purity_violations == 0 && r.fannes_violations == 0 && r.range_violations == 0,
            "d=" + std::to_string(d) + " violations l1=" + std::to_string(r.l1_purity_violations) +
                " fannes=" + std::to_string(r.fannes_violations) + " range=" + std::to_string(r.range_violations));
  }
  return o;
}

Outcome sampler_statistics(unsigned threads) {
  Outcome o;
  for (std::size_t d : {2u, 10u, 100u}) {
    const MomentsReport r = run_moments_check(d, 100000, kSeed, threads);
    o.check(r.z_p1() <= 4.0 && r.z_p1_squared() <= 4.0,
            "d=" + std::to_string(d) + " z(E p1)=" + num(r.z_p1(), 3) + " z(E p1^2)=" + num(r.z_p1_squared(), 3));
  }
  const KolmogorovReport ks = run_unitary_entry_ks(2, 100000, kSeed, threads);
  o.check(ks.ks_distance < 0.01, "|U_11| KS distance " + num(ks.ks_distance, 3) + " < 0.01");
  return o;
}

}  // namespace

int main() {
  const unsigned threads = cli::resolve_threads(std::nullopt);
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC01 scaled C_r means (d=20,30,40,500)", [&] { return scaled_means(threads); }},
      {"AC02 mean C_r = H_d - 1", [&] { return harmonic_law(threads); }},
      {"AC03 mean classical purity = 2/(d+1)",
       [&] { return mean_check(MeasureKind::purity, {3, 100, 1000}, expected_classical_purity, threads); }},
      {"AC04 mean trace distance = 2(1-1/d)^d", [&] { return trace_distance(threads); }},
      {"AC05 concentration trend", [&] { return concentration_trend(threads); }},
      {"AC06 tail frequency <= Levy bound + 5/sqrt(N)", [&] { return tail_soundness(); }},
      {"AC07 coherent subspace floor at true scale", [&] { return subspace_floor(threads); }},
      {"AC08 coherence of formation floor", [&] { return formation_floor(threads); }},
      {"AC09 analytic identities", [&] { return analytic_identities(); }},
      {"AC10 dephasing twirl integral", [&] { return matrix_integral(threads); }},
      {"AC11 per-state inequalities", [&] { return inequalities(threads); }},
      {"AC12 sampler statistics", [&] { return sampler_statistics(threads); }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s (%.1f s): %s\n", o.passed ? "PASS" : "FAIL", c.name, seconds_since(start), o.detail.c_str());
    std::fflush(stdout);
    failures += o.passed ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
