// Copyright 2026 The zipfvocab Authors
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

#ifndef ZIPFVOCAB_REPORT_HPP_
#define ZIPFVOCAB_REPORT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "zipfvocab/zipf.hpp"

namespace zipfvocab {

// RFC 4180 quoting: fields containing a comma, quote, CR or LF are wrapped in
// quotes with embedded quotes doubled.
std::string CsvEscape(std::string_view field);

// Inverse of CsvEscape over one record (no embedded line breaks).
std::vector<std::string> ParseCsvRecord(std::string_view line);

// "rank,token,frequency" header plus one row per point.
std::string RankFrequencyCsv(const RankFrequencyCurve& curve);

// slope=, intercept=, r_squared=, n_points=, degenerate= lines.
std::string FitReport(const ZipfFit& fit);

// Log-log scatter of the curve with the fitted line overlaid.
std::string RenderLogLogSvg(const RankFrequencyCurve& curve, const ZipfFit& fit,
                            std::string_view title);

}  // namespace zipfvocab

#endif  // ZIPFVOCAB_REPORT_HPP_
