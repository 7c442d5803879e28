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

#include "cvb/io.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cvb {

namespace {

using ordered_json = nlohmann::ordered_json;

double parse_double_strict(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);  // from_chars rejects '+'
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw std::invalid_argument("parse_complex: malformed number '" + std::string(text) + "'");
  return value;
}

std::string kind_name(CircuitKind kind) {
  switch (kind) {
    case CircuitKind::Broadcast:
      return "broadcast";
    case CircuitKind::Purify:
      return "purify";
    case CircuitKind::PhaseConjugate:
      return "conjugate";
  }
  return "unknown";
}

}  // namespace

complexd parse_complex(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("parse_complex: empty input");

  // An imaginary part, when present, starts at a '+' or '-' that is not the
  // leading sign and not part of an exponent.
  size_t split = std::string_view::npos;
  for (size_t i = 1; i < text.size(); ++i) {
    const char c = text[i];
    if ((c == '+' || c == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') split = i;
  }

  if (text.back() != 'i' && text.back() != 'I') {
    if (split != std::string_view::npos)
      throw std::invalid_argument("parse_complex: imaginary part must end in 'i'");
    return {parse_double_strict(text), 0.0};
  }

  std::string_view re_part = split == std::string_view::npos ? std::string_view{}
                                                             : text.substr(0, split);
  std::string_view im_part = split == std::string_view::npos
                                 ? text.substr(0, text.size() - 1)
                                 : text.substr(split, text.size() - split - 1);
  double im;
  if (im_part.empty() || im_part == "+")
    im = 1.0;
  else if (im_part == "-")
    im = -1.0;
  else
    im = parse_double_strict(im_part);
  const double re = re_part.empty() ? 0.0 : parse_double_strict(re_part);
  return {re, im};
}

std::string format_double(double x) {
  // nlohmann's serializer emits the shortest round-trip decimal form.
  return ordered_json(x).dump();
}

std::string broadcast_report_json(const BroadcastReport& report) {
  ordered_json j;
  j["n"] = report.n;
  j["m"] = report.m;
  j["nbar_in"] = report.gamma_in - 0.5;
  j["alpha_re"] = report.alpha_in.real();
  j["alpha_im"] = report.alpha_in.imag();
  j["gamma_in"] = report.gamma_in;
  j["gamma_out"] = report.gamma_out;
  j["nbar_out"] = report.output_nbar;
  j["bound"] = report.bound;
  j["saturated"] = report.saturated;
  j["superbroadcast"] = report.superbroadcast;
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < report.correlations.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index k = 0; k < report.correlations.cols(); ++k)
      row.push_back(report.correlations(i, k).real());
    rows.push_back(std::move(row));
  }
  j["correlations"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string broadcast_report_text(const BroadcastReport& report) {
  std::ostringstream out;
  out << "N -> M            : " << report.n << " -> " << report.m << "\n";
  out << "input amplitude   : " << format_double(report.alpha_in.real()) << " + "
      << format_double(report.alpha_in.imag()) << "i\n";
  out << "input noise gamma : " << format_double(report.gamma_in)
      << "  (nbar " << format_double(report.gamma_in - 0.5) << ")\n";
  out << "output amplitude  : " << format_double(report.per_copy_amplitude.front().real())
      << " + " << format_double(report.per_copy_amplitude.front().imag())
      << "i  (each of " << report.m << " copies)\n";
  out << "output noise Gamma: " << format_double(report.gamma_out)
      << "  (nbar " << format_double(report.output_nbar) << ")\n";
  out << "noise bound       : " << format_double(report.bound)
      << (report.saturated ? "  [saturated]" : "  [NOT saturated]") << "\n";
  out << "superbroadcast    : " << (report.superbroadcast ? "yes" : "no") << "\n";
  out << "correlations C_ij (Re):\n";
  for (Eigen::Index i = 0; i < report.correlations.rows(); ++i) {
    out << " ";
    for (Eigen::Index k = 0; k < report.correlations.cols(); ++k)
      out << " " << format_double(report.correlations(i, k).real());
    out << "\n";
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepCsvHeader << "\n";
  for (const SweepRow& row : rows) {
    out << format_double(row.nbar_in) << "," << row.n << "," << row.m << ","
        << format_double(row.gamma_in) << "," << format_double(row.gamma_out) << ","
        << format_double(row.bound) << "," << format_double(row.nbar_out) << ","
        << (row.superbroadcast ? "true" : "false") << "\n";
  }
  return out.str();
}

namespace {

ordered_json verify_result_json(const VerifyResult& result) {
  ordered_json j;
  j["name"] = result.spec.name;
  j["kind"] = kind_name(result.spec.kind);
  j["n"] = result.spec.n;
  j["m"] = result.spec.m;
  j["nbar_in"] = result.spec.nbar;
  j["alpha_re"] = result.spec.alpha.real();
  j["alpha_im"] = result.spec.alpha.imag();
  j["cutoff"] = result.spec.cutoff;
  j["samples"] = result.samples;
  j["expected_gamma_out"] = result.expected_noise_sum;
  j["max_noise_delta"] = result.max_noise_delta;
  j["max_amp_delta"] = result.max_amp_delta;
  j["min_fidelity"] = result.min_fidelity;
  j["trace_deficit"] = result.trace_deficit;
  j["predicted_tail_budget"] = result.predicted_tail_budget;
  j["tol_noise"] = result.spec.tol_noise;
  j["tol_amp"] = result.tol_amp;
  j["min_fidelity_required"] = result.spec.min_fidelity;
  j["pass"] = result.pass;
  return j;
}

}  // namespace

std::string verify_report_json(const std::vector<VerifyResult>& results,
                               std::uint64_t seed) {
  ordered_json j;
  j["seed"] = seed;
  bool all = true;
  ordered_json cases = ordered_json::array();
  for (const VerifyResult& r : results) {
    all = all && r.pass;
    cases.push_back(verify_result_json(r));
  }
  j["all_pass"] = all;
  j["cases"] = std::move(cases);
  return j.dump(2) + "\n";
}

std::string verify_report_text(const std::vector<VerifyResult>& results) {
  std::ostringstream out;
  for (const VerifyResult& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.spec.name << ": noise delta "
        << format_double(r.max_noise_delta) << " (tol " << format_double(r.spec.tol_noise)
        << "), amp delta " << format_double(r.max_amp_delta) << " (tol "
        << format_double(r.tol_amp) << "), fidelity " << format_double(r.min_fidelity)
        << " (min " << format_double(r.spec.min_fidelity) << "), deficit "
        << format_double(r.trace_deficit) << "\n";
  }
  return out.str();
}

}  // namespace cvb
