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

#pragma once

/**
 * Stable machine-readable output formats and CLI value parsing.
 *
 * The JSON report schema and the sweep CSV header are contract surfaces:
 * field names, field order, and the CSV column order never change. All
 * numeric output round-trips doubles (>= 9 significant digits).
 */

#include <string>
#include <string_view>
#include <vector>

#include "cvb/circuits.hpp"
#include "cvb/verify.hpp"

namespace cvb {

/// Parses "a", "a+bi", "a-bi" (locale-independent, decimal point only).
/// Throws std::invalid_argument on malformed input.
complexd parse_complex(std::string_view text);

/// Shortest representation of x that parses back to exactly x.
std::string format_double(double x);

/// Exact report schema:
/// {"n","m","nbar_in","alpha_re","alpha_im","gamma_in","gamma_out",
///  "nbar_out","bound","saturated","superbroadcast","correlations":[[...]]}
/// "correlations" holds Re C_ij; the canonical circuits produce real
/// correlation matrices.
std::string broadcast_report_json(const BroadcastReport& report);

std::string broadcast_report_text(const BroadcastReport& report);

struct SweepRow {
  double nbar_in = 0.0;
  int n = 0;
  int m = 0;
  double gamma_in = 0.0;
  double gamma_out = 0.0;
  double bound = 0.0;
  double nbar_out = 0.0;
  bool superbroadcast = false;
};

/// Header is exactly "nbar_in,N,M,gamma_in,gamma_out,bound,nbar_out,superbroadcast".
inline constexpr std::string_view kSweepCsvHeader =
    "nbar_in,N,M,gamma_in,gamma_out,bound,nbar_out,superbroadcast";

std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string verify_report_json(const std::vector<VerifyResult>& results,
                               std::uint64_t seed);

std::string verify_report_text(const std::vector<VerifyResult>& results);

}  // namespace cvb
