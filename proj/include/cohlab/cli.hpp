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

// Command-line front end. run_cli() is the whole program; main() only
// forwards argv, which lets tests drive every subcommand in-process.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 numeric failure, 4 vacuous guarantee.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "cohlab/analytics.hpp"
#include "cohlab/error.hpp"
#include "cohlab/experiments.hpp"
#include "cohlab/report_json.hpp"

namespace cohlab::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kNumericFailure = 3,
  kVacuousGuarantee = 4,
};

inline int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_dimension:
    case ErrorKind::invalid_argument:
    case ErrorKind::invalid_epsilon:
    case ErrorKind::unsupported: return kUsageError;
    case ErrorKind::vacuous_guarantee: return kVacuousGuarantee;
    case ErrorKind::numeric_failure: return kNumericFailure;
  }
  return kNumericFailure;
}

/// --threads if given, else COHLAB_THREADS, else the hardware concurrency.
inline unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("COHLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline std::string fmt(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

/// Two-column aligned table.
class TextTable {
 public:
  void row(std::string name, std::string value) { rows_.emplace_back(std::move(name), std::move(value)); }
  void row(std::string name, double value) { row(std::move(name), fmt(value, 10)); }

  void print(std::ostream& out) const {
    std::size_t width = 0;
    for (const auto& [name, value] : rows_) width = std::max(width, name.size());
    for (const auto& [name, value] : rows_) {
      out << name << std::string(width - name.size() + 2, ' ') << value << '\n';
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

struct CheckLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline Json checks_to_json(const std::vector<CheckLine>& checks) {
  Json arr = Json::array();
  for (const CheckLine& c : checks) arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return arr;
}

/// Cross-formula identities for the average relative entropy of coherence.
inline std::vector<CheckLine> verify_integral() {
  double worst_beta = 0.0;
  std::size_t worst_beta_d = 2;
  for (std::size_t d = 2; d <= 10'000; ++d) {
    const double diff = std::abs(expected_cr_via_beta(d) - expected_cr(d));
    if (diff > worst_beta) {
      worst_beta = diff;
      worst_beta_d = d;
    }
  }
  double worst_quad = 0.0;
  std::size_t worst_quad_d = 2;
  for (std::size_t d = 2; d <= 50; ++d) {
    const double diff = std::abs(expected_cr_via_quadrature(d) - expected_cr(d));
    if (diff > worst_quad) {
      worst_quad = diff;
      worst_quad_d = d;
    }
  }
  return {
      {"beta_identity_d2_to_1e4", worst_beta <= 1e-10,
       "max |via_beta - (H_d - 1)| = " + fmt(worst_beta, 3) + " at d=" + std::to_string(worst_beta_d) +
           " (tol 1e-10)"},
      {"quadrature_d2_to_50", worst_quad <= 1e-6,
       "max |quadrature - (H_d - 1)| = " + fmt(worst_quad, 3) + " at d=" + std::to_string(worst_quad_d) +
           " (tol 1e-6)"},
  };
}

inline std::vector<CheckLine> verify_matrix(std::uint64_t seed, std::size_t n, unsigned threads) {
  std::vector<CheckLine> out;
  for (std::size_t d = 2; d <= 8; ++d) {
    const MatrixIntegralReport r = run_matrix_integral_check(d, n, seed, TwirlInput::basis_projector, threads);
    out.push_back({"twirl_d" + std::to_string(d), r.passed,
                   "max deviation " + fmt(r.max_deviation, 3) + " < " + fmt(r.tolerance, 3)});
  }
  return out;
}

inline std::vector<CheckLine> verify_inequalities(std::uint64_t seed, std::size_t n, unsigned threads) {
  std::vector<CheckLine> out;
  for (std::size_t d : {2u, 3u, 10u, 100u}) {
    const InequalitySweepReport r = run_inequality_sweep(d, n, seed, threads);
    const bool ok = r.l1_purity_violations == 0 && r.fannes_violations == 0 && r.range_violations == 0;
    out.push_back({"inequalities_d" + std::to_string(d), ok,
                   "violations l1/purity=" + std::to_string(r.l1_purity_violations) +
                       " fannes=" + std::to_string(r.fannes_violations) +
                       " range=" + std::to_string(r.range_violations) + " over " + std::to_string(n) + " states"});
  }
  return out;
}

inline std::vector<CheckLine> verify_moments(std::uint64_t seed, std::size_t n, unsigned threads) {
  std::vector<CheckLine> out;
  for (std::size_t d : {2u, 10u, 100u}) {
    const MomentsReport r = run_moments_check(d, n, seed, threads);
    out.push_back({"p1_moments_d" + std::to_string(d), r.z_p1() <= 4.0 && r.z_p1_squared() <= 4.0,
                   "z(E p1)=" + fmt(r.z_p1(), 3) + " z(E p1^2)=" + fmt(r.z_p1_squared(), 3) + " (tol 4)"});
  }
  const KolmogorovReport ks = run_unitary_entry_ks(2, n, seed, threads);
  out.push_back({"unitary_entry_ks_d2", ks.ks_distance < 0.01, "KS distance " + fmt(ks.ks_distance, 3) + " < 0.01"});
  return out;
}

inline Json expect_payload(std::size_t d, bool bits) {
  const double unit = bits ? std::numbers::ln2 : 1.0;
  const double log_d = std::log(static_cast<double>(d));
  Json j{{"d", d},
         {"entropy_unit", bits ? "bits" : "nats"},
         {"ln_d", log_d / unit},
         {"expected_cr", expected_cr(d) / unit},
         {"expected_cr_scaled", expected_cr(d) / log_d},
         {"expected_cr_via_beta", expected_cr_via_beta(d) / unit},
         {"expected_classical_purity", expected_classical_purity(d)},
         {"expected_trace_distance", expected_trace_distance(d)},
         {"trace_distance_limit", 2.0 / std::numbers::e},
         {"typical_l1_upper", typical_l1_upper(d)},
         {"trivial_l1_upper", static_cast<double>(d) - 1.0},
         {"typical_fannes_floor", typical_fannes_floor(d) / unit},
         {"fannes_asymptote", fannes_asymptote()}};
  j["lipschitz_cr"] = d >= 3 ? Json(lipschitz_cr(d)) : Json(nullptr);
  return j;
}

inline void print_json_or_table(std::ostream& out, const std::string& format, const std::string& command,
                                const Json& payload) {
  if (format == "json") {
    out << Json(make_envelope(command, payload)).dump(2) << '\n';
    return;
  }
  TextTable table;
  for (const auto& [key, value] : payload.items()) {
    if (value.is_number_float()) {
      table.row(key, value.get<double>());
    } else if (value.is_string()) {
      table.row(key, value.get<std::string>());
    } else {
      table.row(key, value.dump());
    }
  }
  table.print(out);
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cohlab: typicality of quantum coherence for Haar-random pure states"};
  app.require_subcommand(1);
  std::optional<unsigned> threads_flag;
  app.add_option("--threads", threads_flag, "worker threads (results never depend on it); env COHLAB_THREADS");
  std::string output_path;
  app.add_option("--output", output_path, "write the report to this file instead of stdout");

  // expect
  std::size_t expect_dim = 0;
  std::string expect_format = "json";
  bool expect_bits = false;
  auto* expect = app.add_subcommand("expect", "closed-form expectations for one dimension");
  expect->add_option("--dim", expect_dim, "Hilbert-space dimension d (>= 2)")->required();
  expect->add_option("--format", expect_format)->check(CLI::IsMember({"json", "text"}));
  expect->add_flag("--bits", expect_bits, "display entropies in bits");

  // concentrate
  ExperimentConfig conc;
  conc.histogram_bins = 50;
  std::string conc_measure = "cr";
  std::string conc_format = "json";
  auto* concentrate = app.add_subcommand("concentrate", "Monte Carlo concentration report");
  concentrate->add_option("--measure", conc_measure)->check(CLI::IsMember({"cr", "l1", "purity", "trdist"}));
  concentrate->add_option("--dim", conc.dim)->required();
  concentrate->add_option("--trials", conc.trials)->default_val(100000);
  concentrate->add_option("--seed", conc.master_seed)->default_val(42);
  concentrate->add_option("--eps", conc.epsilons, "comma-separated deviations")->delimiter(',');
  concentrate->add_option("--bins", conc.histogram_bins)->default_val(50);
  concentrate->add_option("--format", conc_format)->check(CLI::IsMember({"json", "csv"}));

  // subspace
  std::size_t sub_dim = 0;
  double sub_frac = 0.0;
  std::size_t sub_states = 2000;
  std::uint64_t sub_seed = 42;
  std::string sub_format = "json";
  bool sub_bits = false;
  auto* subspace = app.add_subcommand("subspace", "sampled check of the coherent-subspace floor");
  subspace->add_option("--dim", sub_dim)->required();
  subspace->add_option("--eps-frac", sub_frac, "epsilon as a fraction of ln d, in (0, 1)")->required();
  subspace->add_option("--states", sub_states);
  subspace->add_option("--seed", sub_seed);
  subspace->add_option("--format", sub_format)->check(CLI::IsMember({"json", "text"}));
  subspace->add_flag("--bits", sub_bits, "display entropies in bits");

  // bounds
  std::size_t bounds_dim = 0;
  double bounds_eps = 0.0;
  std::optional<double> bounds_eta;
  std::string bounds_theorem = "all";
  std::string bounds_format = "json";
  auto* bounds = app.add_subcommand("bounds", "Levy concentration bounds");
  bounds->add_option("--dim", bounds_dim)->required();
  bounds->add_option("--eps", bounds_eps)->required();
  bounds->add_option("--eta", bounds_eta, "Lipschitz constant for the generic bound (default 2)");
  bounds->add_option("--theorem", bounds_theorem)->check(CLI::IsMember({"1", "3", "4", "generic", "all"}));
  bounds->add_option("--format", bounds_format)->check(CLI::IsMember({"json", "text"}));

  // verify
  std::string verify_suite;
  std::uint64_t verify_seed = 42;
  std::optional<std::size_t> verify_trials;
  std::string verify_format = "text";
  auto* verify = app.add_subcommand("verify", "run a verification suite; exit 1 on any failure");
  verify->add_option("--suite", verify_suite)
      ->required()
      ->check(CLI::IsMember({"integral", "matrix", "inequalities", "moments"}));
  verify->add_option("--seed", verify_seed);
  verify->add_option("--trials", verify_trials, "samples per check (suite default if omitted)");
  verify->add_option("--format", verify_format)->check(CLI::IsMember({"json", "text"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kUsageError;
  }

  std::ofstream file;
  if (!output_path.empty()) {
    file.open(output_path);
    if (!file) {
      err << "error: cannot open " << output_path << '\n';
      return kUsageError;
    }
  }
  std::ostream& sink = output_path.empty() ? out : file;
  const unsigned threads = resolve_threads(threads_flag);

  try {
    if (*expect) {
      detail::require(expect_dim >= 2, ErrorKind::invalid_dimension, "--dim must be >= 2");
      print_json_or_table(sink, expect_format, "expect", expect_payload(expect_dim, expect_bits));
      return kSuccess;
    }

    if (*concentrate) {
      conc.measure_kind = parse_measure_kind(conc_measure);
      const ConcentrationReport report = run_concentration(conc, threads);
      if (report.bound_flagged) {
        err << "warning: an empirical tail frequency exceeds its non-vacuous Levy bound\n";
      }
      if (report.tails_centered_empirically && !conc.epsilons.empty()) {
        err << "note: l1 has no closed-form mean; tails are measured around the empirical mean\n";
      }
      if (conc_format == "csv") {
        write_histogram_csv(sink, report.histogram);
      } else {
        sink << Json(make_envelope("concentrate", report)).dump(2) << '\n';
      }
      return kSuccess;
    }

    if (*subspace) {
      detail::require(sub_frac > 0.0 && sub_frac < 1.0, ErrorKind::invalid_epsilon, "--eps-frac must lie in (0, 1)");
      detail::require(sub_dim >= 3, ErrorKind::invalid_dimension, "--dim must be >= 3");
      const double eps = sub_frac * std::log(static_cast<double>(sub_dim));
      SubspaceFloorReport report = run_subspace_floor(sub_dim, eps, sub_states, sub_seed, threads);
      Json payload = report;
      payload["eps_frac"] = sub_frac;
      if (sub_bits) {
        payload["entropy_unit"] = "bits";
        for (const char* key : {"eps", "threshold", "min_observed_cr", "mean_observed_cr"}) {
          payload[key] = payload[key].get<double>() / std::numbers::ln2;
        }
      } else {
        payload["entropy_unit"] = "nats";
      }
      print_json_or_table(sink, sub_format, "subspace", payload);
      return kSuccess;
    }

    if (*bounds) {
      detail::require(bounds_dim >= 1, ErrorKind::invalid_dimension, "--dim must be >= 1");
      detail::require(bounds_eps > 0.0, ErrorKind::invalid_epsilon, "--eps must be positive");
      if (bounds_theorem == "1") {
        detail::require(bounds_dim >= 3, ErrorKind::unsupported, "--theorem 1 needs --dim >= 3");
      }
      Json rows = Json::array();
      auto add = [&](const std::string& name, const BoundValue& b, const Json& extra) {
        Json row = b;
        row["theorem"] = name;
        row.update(extra);
        rows.push_back(row);
      };
      const bool all = bounds_theorem == "all";
      if ((all && bounds_dim >= 3) || bounds_theorem == "1") {
        const LevyParams p = levy_params_cr(bounds_dim, bounds_eps);
        add("1", levy_bound_cr(bounds_dim, bounds_eps),
            {{"quantity", "relative_entropy_coherence"}, {"k", p.sphere_dim_k}, {"eta", p.lipschitz_eta}});
      }
      if (all || bounds_theorem == "3") {
        add("3", levy_bound_purity(bounds_dim, bounds_eps), {{"quantity", "classical_purity"}, {"eta", 2.0}});
      }
      if (all || bounds_theorem == "4") {
        add("4", levy_bound_trdist(bounds_dim, bounds_eps), {{"quantity", "trace_distance_mm"}, {"eta", 2.0}});
      }
      if (all || bounds_theorem == "generic") {
        LevyParams p = levy_params_eta2(bounds_dim, bounds_eps);
        if (bounds_eta) p.lipschitz_eta = *bounds_eta;
        add("generic", levy_generic(p), {{"quantity", "lipschitz_function"}, {"k", p.sphere_dim_k}, {"eta", p.lipschitz_eta}});
      }
      const Json payload{{"d", bounds_dim}, {"eps", bounds_eps}, {"bounds", rows}};
      if (bounds_format == "json") {
        sink << Json(make_envelope("bounds", payload)).dump(2) << '\n';
      } else {
        for (const Json& row : rows) {
          sink << "theorem " << row["theorem"].get<std::string>() << ": raw=" << fmt(row["raw"].get<double>())
               << " effective=" << fmt(row["effective"].get<double>())
               << " log_raw=" << fmt(row["log_raw"].get<double>()) << '\n';
        }
      }
      return kSuccess;
    }

    if (*verify) {
      std::vector<CheckLine> checks;
      if (verify_suite == "integral") {
        checks = verify_integral();
      } else if (verify_suite == "matrix") {
        checks = verify_matrix(verify_seed, verify_trials.value_or(100000), threads);
      } else if (verify_suite == "inequalities") {
        checks = verify_inequalities(verify_seed, verify_trials.value_or(10000), threads);
      } else {
        checks = verify_moments(verify_seed, verify_trials.value_or(100000), threads);
      }
      bool all_passed = true;
      for (const CheckLine& c : checks) all_passed = all_passed && c.passed;
      if (verify_format == "json") {
        sink << Json(make_envelope("verify", {{"suite", verify_suite},
                                              {"seed", verify_seed},
                                              {"passed", all_passed},
                                              {"checks", checks_to_json(checks)}}))
                    .dump(2)
             << '\n';
      } else {
        for (const CheckLine& c : checks) {
          sink << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
        }
        sink << (all_passed ? "suite " + verify_suite + ": PASS" : "suite " + verify_suite + ": FAIL") << '\n';
      }
      return all_passed ? kSuccess : kVerificationFailure;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kUsageError;
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, out, err);
}

}  // namespace cohlab::cli
