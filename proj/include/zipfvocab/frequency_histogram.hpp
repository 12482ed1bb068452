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

// Multiset of token frequencies, grouped by value.
//
// Scoring a checkpoint needs only the sorted frequencies, and equal
// frequencies share one log value, so the log-log least-squares sums can be
// formed per distinct frequency from prefix sums of log(rank). A BPE merge
// touches three token counts, which keeps the histogram cheap to maintain
// while training and makes a fit cost O(distinct frequencies).

#ifndef ZIPFVOCAB_FREQUENCY_HISTOGRAM_HPP_
#define ZIPFVOCAB_FREQUENCY_HISTOGRAM_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace zipfvocab {

class FrequencyHistogram {
 public:
  FrequencyHistogram() = default;
  explicit FrequencyHistogram(std::span<const std::int64_t> frequencies);

  // One more (or one fewer) token observed `frequency` times. Frequencies
  // must be positive; removing an absent value throws kInconsistentState.
  void Add(std::int64_t frequency);
  void Remove(std::int64_t frequency);

  std::size_t token_count() const { return tokens_; }
  std::size_t distinct_count() const { return distinct_; }
  bool empty() const { return tokens_ == 0; }

  // R^2 of log(frequency) on log(rank), ranks 1..n by descending frequency.
  // 0 when every frequency is equal. Throws kInsufficientPoints below three
  // tokens.
  double RSquared() const;

 private:
  // Frequencies below this live in flat arrays, so an update touches one
  // counter and one bitset word; the rare larger ones go in an ordered map.
  static constexpr std::int64_t kDenseLimit = 1 << 12;

  struct Bucket {
    std::int64_t tokens = 0;
    double log_frequency = 0.0;
  };

  void GrowDense(std::int64_t frequency);

  std::vector<Bucket> dense_;  // indexed by frequency
  std::vector<std::uint64_t> dense_present_;
  std::map<std::int64_t, Bucket, std::greater<>> sparse_;
  std::size_t tokens_ = 0;
  std::size_t distinct_ = 0;
  // log_rank_sum_[k] = sum of log(r) for r <= k; likewise for squares.
  std::vector<long double> log_rank_sum_{0.0L};
  std::vector<long double> log_rank_square_sum_{0.0L};
};

}  // namespace zipfvocab

#endif  // ZIPFVOCAB_FREQUENCY_HISTOGRAM_HPP_
