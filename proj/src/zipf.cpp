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

#include "zipfvocab/zipf.hpp"

#include <algorithm>
#include <functional>

#include "zipfvocab/error.hpp"
#include "zipfvocab/frequency_histogram.hpp"

namespace zipfvocab {

RankFrequencyCurve RankFrequency(const TokenFrequencyTable& table) {
  if (table.empty()) {
    throw Error(ErrorCode::kEmptyTable, "rank-frequency curve of an empty table");
  }
  std::vector<const TokenFrequencyTable::Map::value_type*> entries;
  entries.reserve(table.size());
  for (const auto& entry : table.counts()) entries.push_back(&entry);
  // The map is already in token order, so a stable sort on frequency alone
  // leaves ties ordered by token.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto* a, const auto* b) { return a->second > b->second; });
  RankFrequencyCurve curve;
  curve.points.reserve(entries.size());
  std::int64_t rank = 1;
  for (const auto* entry : entries) {
    curve.points.push_back({rank++, entry->first, entry->second});
  }
  return curve;
}

namespace {

// OLS of log f on log rank. `rank_at(i)` and `freq_at(i)` supply point i.
template <typename RankAt, typename FreqAt>
ZipfFit FitLogLog(std::size_t n, RankAt rank_at, FreqAt freq_at, double log_base) {
  if (n < kMinFitPoints) {
    throw Error(ErrorCode::kInsufficientPoints,
                "power-law fit needs at least 3 points, got " + std::to_string(n));
  }
  ZipfFit fit;
  fit.n_points = n;
  bool all_equal = true;
  for (std::size_t i = 1; i < n && all_equal; ++i) {
    all_equal = freq_at(i) == freq_at(0);
  }
  if (all_equal) {
    fit.degenerate = true;
    return fit;
  }

  const double log_scale = 1.0 / std::log(log_base);
  std::vector<double> xs(n);
  std::vector<double> ys(n);
  double sum_x = 0.0;
  double sum_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(static_cast<double>(rank_at(i))) * log_scale;
    ys[i] = std::log(static_cast<double>(freq_at(i))) * log_scale;
    sum_x += xs[i];
    sum_y += ys[i];
  }
  const double mean_x = sum_x / static_cast<double>(n);
  const double mean_y = sum_y / static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double residual = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += residual * residual;
  }
  fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return fit;
}

}  // namespace

ZipfFit FitSortedFrequencies(std::span<const std::int64_t> frequencies,
                             double log_base) {
  return FitLogLog(
      frequencies.size(), [](std::size_t i) { return static_cast<std::int64_t>(i + 1); },
      [&](std::size_t i) { return frequencies[i]; }, log_base);
}

ZipfFit FitPowerLaw(const RankFrequencyCurve& curve, double log_base) {
  const auto& points = curve.points;
  return FitLogLog(
      points.size(), [&](std::size_t i) { return points[i].rank; },
      [&](std::size_t i) { return points[i].frequency; }, log_base);
}

double ZipfScore(const TokenFrequencyTable& table) {
  if (table.empty()) {
    throw Error(ErrorCode::kEmptyTable, "cannot score an empty table");
  }
  FrequencyHistogram histogram;
  for (const auto& [token, count] : table.counts()) histogram.Add(count);
  return histogram.RSquared();
}

double ZipfScoreOfFrequencies(std::span<const std::int64_t> frequencies) {
  return FrequencyHistogram(frequencies).RSquared();
}

}  // namespace zipfvocab
