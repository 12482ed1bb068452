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
// Vocabulary-size selection by Zipf stagnation.
//
// The vocabulary grows one BPE merge at a time. Every `checkpoint_interval`
// merges the token distribution is scored (R^2 of the log-log rank-frequency
// fit). A checkpoint counts as progress only when its score beats the best
// score so far by more than `epsilon`; after `patience` checkpoints in a row
// without progress, growth stops.

#ifndef ZIPFVOCAB_SELECTOR_HPP_
#define ZIPFVOCAB_SELECTOR_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zipfvocab/bpe.hpp"
#include "zipfvocab/corpus.hpp"

namespace zipfvocab {

enum class PickRule {
  kCurrentAtStop,   // vocabulary in hand when growth stops
  kBestCheckpoint,  // vocabulary at the highest-scoring checkpoint
};

enum class StopReason { kStagnation, kMaxSize, kPairsExhausted };

std::string_view ToString(PickRule rule);
std::string_view ToString(StopReason reason);
std::optional<PickRule> ParsePickRule(std::string_view name);

struct SelectorConfig {
  std::size_t checkpoint_interval = 100;
  double epsilon = 1e-4;
  std::size_t patience = 10;
  // First checkpoint size. When unset, growth starts at the corpus minimum
  // and the trace begins at the bottom of the initial score descent: the
  // character-level distribution often fits a line well on only a handful of
  // points, and that transient would otherwise trip the stopping rule.
  std::optional<std::size_t> v_min;
  std::size_t v_max = 50000;
  PickRule pick_rule = PickRule::kCurrentAtStop;

  // Throws kInvalidConfig. `minimum` is MinVocabSize of the corpus.
  void Validate(std::size_t minimum) const;
};

struct CheckpointRecord {
  std::size_t index = 0;
  std::size_t vocab_size = 0;
  double zipf_t = 0.0;
  double zipf_max = 0.0;
  std::size_t stagnation = 0;

  friend bool operator==(const CheckpointRecord&, const CheckpointRecord&) = default;
};

struct SelectionResult {
  std::vector<CheckpointRecord> trace;
  StopReason stop_reason = StopReason::kMaxSize;
  std::size_t selected_size = 0;
  Vocabulary selected_vocab;
  std::size_t best_checkpoint = 0;
};

struct ReplayOutcome {
  std::size_t stop_index = 0;
  std::size_t best_index = 0;

  friend bool operator==(const ReplayOutcome&, const ReplayOutcome&) = default;
};

// Stopping rule over a bare score sequence: the first index at which the
// stagnation counter reaches `patience` (or the last index), and the earliest
// argmax. `scores` must be non-empty.
ReplayOutcome ReplayTrace(std::span<const double> scores, double epsilon,
                          std::size_t patience);

// Score used at a checkpoint: R^2 of the rank-frequency curve, or 0 when
// fewer than three distinct tokens are observed.
double CheckpointScore(const FrequencyHistogram& histogram);
double CheckpointScore(std::span<const std::int64_t> frequencies);

using CheckpointCallback = std::function<void(const CheckpointRecord&)>;

// Runs the selection loop. `on_checkpoint` fires once per record, in order.
SelectionResult SelectVocabulary(const PretokenCounts& counts,
                                 const SelectorConfig& config,
                                 const CheckpointCallback& on_checkpoint = {});

// Trace CSV: header, one row per checkpoint, then a '#' summary line.
std::string TraceCsvHeader();
std::string TraceCsvRow(const CheckpointRecord& record);
std::string TraceCsvSummary(const SelectionResult& result);
std::string TraceCsv(const SelectionResult& result);

}  // namespace zipfvocab

#endif  // ZIPFVOCAB_SELECTOR_HPP_
