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
//
// Rank-frequency analysis of token histograms.
//
// A histogram is sorted into a rank-frequency curve and a straight line is
// fitted through (log rank, log frequency) by ordinary least squares. The
// coefficient of determination of that line is the Zipf alignment score: 1.0
// for an exact power law f(r) = C * r^-k, lower as the curve bends.

#ifndef ZIPFVOCAB_ZIPF_HPP_
#define ZIPFVOCAB_ZIPF_HPP_

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zipfvocab/bpe.hpp"
#include "zipfvocab/corpus.hpp"
#include "zipfvocab/token_frequency.hpp"

namespace zipfvocab {

struct RankFrequencyPoint {
  std::int64_t rank;
  std::string token;
  std::int64_t frequency;

  friend bool operator==(const RankFrequencyPoint&,
                         const RankFrequencyPoint&) = default;
};

// Points ordered by (frequency desc, token asc) with ranks 1..n.
struct RankFrequencyCurve {
  std::vector<RankFrequencyPoint> points;

  std::size_t size() const { return points.size(); }
  friend bool operator==(const RankFrequencyCurve&,
                         const RankFrequencyCurve&) = default;
};

struct ZipfFit {
  double slope = 0.0;      // fitted -k
  double intercept = 0.0;  // fitted log C
  double r_squared = 0.0;
  std::size_t n_points = 0;
  // All frequencies equal: the line is flat and R^2 is undefined; scored 0.
  bool degenerate = false;
};

inline constexpr std::size_t kMinFitPoints = 3;

// Throws kEmptyTable for an empty table.
RankFrequencyCurve RankFrequency(const TokenFrequencyTable& table);

// Least-squares fit of log(frequency) on log(rank). Logs are natural unless
// another base is given; R^2 does not depend on the base. Throws
// kInsufficientPoints below kMinFitPoints.
ZipfFit FitPowerLaw(const RankFrequencyCurve& curve,
                    double log_base = std::exp(1.0));

// Same fit over frequencies already sorted in non-increasing order (rank i+1
// for element i). Used by the selector to skip building token strings.
ZipfFit FitSortedFrequencies(std::span<const std::int64_t> frequencies,
                             double log_base = std::exp(1.0));

// R^2 of FitPowerLaw(RankFrequency(table)), computed over distinct
// frequencies (see FrequencyHistogram). Throws kEmptyTable or
// kInsufficientPoints.
double ZipfScore(const TokenFrequencyTable& table);

// Scores frequencies in any order; bit-identical to ZipfScore of the table
// they came from.
double ZipfScoreOfFrequencies(std::span<const std::int64_t> frequencies);

// Histogram of the corpus encoded with `vocab`, excluding reserved tokens.
TokenFrequencyTable EncodedTokenCounts(const Vocabulary& vocab,
                                       const PretokenCounts& counts);

// Total tokens emitted when encoding every pre-token occurrence.
std::int64_t EncodedTokenTotal(const Vocabulary& vocab,
                               const PretokenCounts& counts);

// Corpus characters per emitted token.
double CompressionRatio(const Vocabulary& vocab, const PretokenCounts& counts);

// Emitted tokens per word; text mode only (kUnsupportedMode otherwise).
double Fertility(const Vocabulary& vocab, const PretokenCounts& counts);

}  // namespace zipfvocab

#endif  // ZIPFVOCAB_ZIPF_HPP_
