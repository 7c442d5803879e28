// Copyright 2026 The cvbroadcast developers
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

// Command-line front end. Exit codes: 0 success, 1 internal or tolerance
// failure, 2 usage/validation error (including oracle resource guards).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvb/bounds.hpp"
#include "cvb/circuits.hpp"
#include "cvb/io.hpp"
#include "cvb/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Relative output paths are resolved against $CVB_OUTPUT_DIR when set.
std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("CVB_OUTPUT_DIR")) return std::filesystem::path(dir) / p;
  return p;
}

void emit(const std::string& content, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << content;
    return;
  }
  const std::filesystem::path path = resolve_output(output_path);
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path.string());
  out << content;
}

struct ReportOptions {
  int n = 1;
  int m = 1;
  double nbar = 0.0;
  std::string alpha = "0";
  std::string format = "text";
  std::string output;
};

void add_report_options(CLI::App* cmd, ReportOptions& opts, bool with_m = true) {
  cmd->add_option("--n", opts.n, "number of input copies N")->required();
  if (with_m) cmd->add_option("--m", opts.m, "number of output copies M")->required();
  cmd->add_option("--nbar", opts.nbar, "input thermal photon number");
  cmd->add_option("--alpha", opts.alpha, "input amplitude, e.g. 0.3+0.1i");
  cmd->add_option("--format", opts.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--output", opts.output, "output file (default stdout)");
}

int emit_report(const cvb::BroadcastReport& report, const ReportOptions& opts) {
  emit(opts.format == "json" ? cvb::broadcast_report_json(report)
                             : cvb::broadcast_report_text(report),
       opts.output);
  return kExitOk;
}

struct SweepOptions {
  double nbar_min = 0.0;
  double nbar_max = 1.0;
  int steps = 11;
  std::vector<int> n_list{2};
  std::vector<int> m_list{3};
  std::string output;
};

struct VerifyCliOptions {
  std::optional<int> cutoff;
  long samples = 100000;
  std::uint64_t seed = 12345;
  std::string kind = "broadcast";
  std::optional<int> n;
  int m = 1;
  double nbar = 0.0;
  std::string alpha = "0";
  std::string format = "text";
  std::string output;
};

int run_verify(const VerifyCliOptions& opts) {
  cvb::VerifyOptions options;
  options.cutoff = opts.cutoff;
  options.samples = opts.samples;
  options.seed = opts.seed;

  std::vector<cvb::VerifyCase> cases;
  if (opts.n) {
    cvb::VerifyCase custom;
    custom.name = "custom " + opts.kind;
    if (opts.kind == "broadcast") {
      custom.kind = cvb::CircuitKind::Broadcast;
    } else if (opts.kind == "purify") {
      custom.kind = cvb::CircuitKind::Purify;
    } else {
      custom.kind = cvb::CircuitKind::PhaseConjugate;
      custom.tol_noise = 1e-2;
      custom.min_fidelity = 0.99;
    }
    custom.n = *opts.n;
    custom.m = opts.m;
    custom.nbar = opts.nbar;
    custom.alpha = cvb::parse_complex(opts.alpha);
    custom.cutoff = opts.cutoff.value_or(12);
    cases.push_back(custom);
  } else {
    cases = cvb::default_verify_cases();
  }

  const std::vector<cvb::VerifyResult> results = cvb::run_verify_suite(cases, options);
  emit(opts.format == "json" ? cvb::verify_report_json(results, options.seed)
                             : cvb::verify_report_text(results),
       opts.output);
  for (const cvb::VerifyResult& r : results)
    if (!r.pass) return kExitFailure;
  return kExitOk;
}

struct BoundsOptions {
  double gamma = 0.5;
  int n = 2;
  int m = 3;
  std::optional<double> gain;
  std::string amp_kind = "preserving";
  std::string format = "text";
  std::string output;
};

int run_bounds(const BoundsOptions& opts) {
  nlohmann::ordered_json j;
  j["gamma"] = opts.gamma;
  j["n"] = opts.n;
  j["m"] = opts.m;
  j["broadcast_bound"] =
      opts.m >= opts.n ? nlohmann::ordered_json(cvb::broadcast_bound(opts.gamma, opts.n, opts.m))
                       : nlohmann::ordered_json(nullptr);
  j["purification_bound"] = cvb::purification_bound(opts.gamma, opts.n);
  j["phase_conj_bound"] = cvb::phase_conj_bound(opts.gamma, opts.n);
  j["superbroadcast_threshold"] =
      (opts.n >= 2 && opts.m > opts.n)
          ? nlohmann::ordered_json(cvb::superbroadcast_threshold(opts.n, opts.m))
          : nlohmann::ordered_json(nullptr);
  if (opts.gain) {
    const cvb::AmplifierKind kind = opts.amp_kind == "conjugating"
                                        ? cvb::AmplifierKind::PhaseConjugating
                                        : cvb::AmplifierKind::PhasePreserving;
    j["amplifier_bound"] = cvb::amplifier_bound(opts.gamma, *opts.gain, kind);
  }
  if (opts.format == "json") {
    emit(j.dump(2) + "\n", opts.output);
  } else {
    std::ostringstream out;
    for (const auto& [key, value] : j.items())
      out << key << ": " << (value.is_null() ? "n/a" : value.dump()) << "\n";
    emit(out.str(), opts.output);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cvbroadcast: optimal N->M broadcasting, purification and phase conjugation\n"
      "of harmonic-oscillator modes (Gaussian simulator + brute-force Fock oracle)."};
  app.require_subcommand(1);

  ReportOptions broadcast_opts;
  CLI::App* broadcast = app.add_subcommand(
      "broadcast", "optimal N -> M broadcast of displaced thermal states");
  add_report_options(broadcast, broadcast_opts);

  ReportOptions purify_opts;
  CLI::App* purify =
      app.add_subcommand("purify", "optimal purification into M <= N copies");
  add_report_options(purify, purify_opts);

  ReportOptions conjugate_opts;
  CLI::App* conjugate = app.add_subcommand(
      "conjugate", "optimal phase-conjugating broadcast (heterodyne and prepare)");
  add_report_options(conjugate, conjugate_opts);

  SweepOptions sweep_opts;
  CLI::App* sweep = app.add_subcommand("sweep", "CSV sweep over an nbar grid");
  sweep->add_option("--nbar-min", sweep_opts.nbar_min, "grid start");
  sweep->add_option("--nbar-max", sweep_opts.nbar_max, "grid end");
  sweep->add_option("--steps", sweep_opts.steps, "number of grid points");
  sweep->add_option("--n", sweep_opts.n_list, "input copy counts");
  sweep->add_option("--m", sweep_opts.m_list, "output copy counts");
  sweep->add_option("--output", sweep_opts.output, "output CSV file (default stdout)");

  VerifyCliOptions verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "cross-check the Gaussian simulator against the Fock oracle");
  verify->add_option("--cutoff", verify_opts.cutoff, "Fock cutoff override");
  verify->add_option("--samples", verify_opts.samples, "Monte-Carlo samples");
  verify->add_option("--seed", verify_opts.seed, "Monte-Carlo seed");
  verify->add_option("--kind", verify_opts.kind, "broadcast | purify | conjugate")
      ->check(CLI::IsMember({"broadcast", "purify", "conjugate"}));
  verify->add_option("--n", verify_opts.n, "custom case: input copies");
  verify->add_option("--m", verify_opts.m, "custom case: output copies");
  verify->add_option("--nbar", verify_opts.nbar, "custom case: thermal photon number");
  verify->add_option("--alpha", verify_opts.alpha, "custom case: amplitude");
  verify->add_option("--format", verify_opts.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--output", verify_opts.output, "output file (default stdout)");

  BoundsOptions bounds_opts;
  CLI::App* bounds = app.add_subcommand("bounds", "evaluate the closed-form noise bounds");
  bounds->add_option("--gamma", bounds_opts.gamma, "input noise sum (>= 1/2)");
  bounds->add_option("--n", bounds_opts.n, "input copies");
  bounds->add_option("--m", bounds_opts.m, "output copies");
  bounds->add_option("--gain", bounds_opts.gain, "also evaluate the amplifier bound");
  bounds->add_option("--amplifier", bounds_opts.amp_kind, "preserving | conjugating")
      ->check(CLI::IsMember({"preserving", "conjugating"}));
  bounds->add_option("--format", bounds_opts.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  bounds->add_option("--output", bounds_opts.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);

    if (*broadcast) {
      const auto report = cvb::run_broadcast(broadcast_opts.n, broadcast_opts.m,
                                             broadcast_opts.nbar,
                                             cvb::parse_complex(broadcast_opts.alpha));
      return emit_report(report, broadcast_opts);
    }
    if (*purify) {
      const auto report = cvb::run_purify(purify_opts.n, purify_opts.m, purify_opts.nbar,
                                          cvb::parse_complex(purify_opts.alpha));
      return emit_report(report, purify_opts);
    }
    if (*conjugate) {
      const auto report =
          cvb::run_phase_conjugate(conjugate_opts.n, conjugate_opts.m, conjugate_opts.nbar,
                                   cvb::parse_complex(conjugate_opts.alpha));
      return emit_report(report, conjugate_opts);
    }
    if (*sweep) {
      std::vector<cvb::SweepRow> rows;
      if (sweep_opts.steps < 1) throw std::invalid_argument("sweep: steps must be >= 1");
      for (int i = 0; i < sweep_opts.steps; ++i) {
        const double nbar = sweep_opts.steps == 1
                                ? sweep_opts.nbar_min
                                : sweep_opts.nbar_min + i * (sweep_opts.nbar_max -
                                                             sweep_opts.nbar_min) /
                                                            (sweep_opts.steps - 1);
        for (int n : sweep_opts.n_list)
          for (int m : sweep_opts.m_list) {
            const cvb::BroadcastReport report = cvb::run_broadcast(n, m, nbar, {0.0, 0.0});
            rows.push_back({.nbar_in = nbar,
                            .n = n,
                            .m = m,
                            .gamma_in = report.gamma_in,
                            .gamma_out = report.gamma_out,
                            .bound = report.bound,
                            .nbar_out = report.output_nbar,
                            .superbroadcast = report.superbroadcast});
          }
      }
      emit(cvb::sweep_csv(rows), sweep_opts.output);
      return kExitOk;
    }
    if (*verify) return run_verify(verify_opts);
    if (*bounds) return run_bounds(bounds_opts);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const cvb::ResourceGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
}
