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

#include "zipfvocab/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "zipfvocab/error.hpp"
#include "zipfvocab/io.hpp"
#include "zipfvocab/zipf.hpp"

namespace zipfvocab {

std::string_view ToString(PickRule rule) {
  return rule == PickRule::kCurrentAtStop ? "current_at_stop" : "best_checkpoint";
}

std::string_view ToString(StopReason reason) {
  switch (reason) {
    case StopReason::kStagnation: return "stagnation";
    case StopReason::kMaxSize: return "max_size";
    case StopReason::kPairsExhausted: return "pairs_exhausted";
  }
  return "unknown";
}

std::optional<PickRule> ParsePickRule(std::string_view name) {
  if (name == "current_at_stop") return PickRule::kCurrentAtStop;
  if (name == "best_checkpoint") return PickRule::kBestCheckpoint;
  return std::nullopt;
}

void SelectorConfig::Validate(std::size_t minimum) const {
  auto fail = [](const std::string& message) {
    throw Error(ErrorCode::kInvalidConfig, message);
  };
  if (checkpoint_interval < 1) fail("checkpoint interval must be >= 1");
  if (patience < 1) fail("patience must be >= 1");
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    fail("epsilon must be finite and >= 0");
  }
  const std::size_t floor = v_min.value_or(minimum);
  if (floor < minimum) {
    fail("v_min " + std::to_string(floor) + " is below the corpus minimum " +
         std::to_string(minimum));
  }
  if (floor > v_max) {
    fail("v_min " + std::to_string(floor) + " exceeds v_max " +
         std::to_string(v_max));
  }
}

ReplayOutcome ReplayTrace(std::span<const double> scores, double epsilon,
                          std::size_t patience) {
  ReplayOutcome outcome;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t stagnation = 0;
  for (std::size_t t = 0; t < scores.size(); ++t) {
    if (scores[t] > best + epsilon) {
      stagnation = 0;
    } else {
      ++stagnation;
    }
    if (scores[t] > best) {
      best = scores[t];
      outcome.best_index = t;
    }
    outcome.stop_index = t;
    if (stagnation >= patience) break;
  }
  return outcome;
}

double CheckpointScore(const FrequencyHistogram& histogram) {
  if (histogram.token_count() < kMinFitPoints) return 0.0;
  return histogram.RSquared();
}

double CheckpointScore(std::span<const std::int64_t> frequencies) {
  return CheckpointScore(FrequencyHistogram(frequencies));
}

SelectionResult SelectVocabulary(const PretokenCounts& counts,
                                 const SelectorConfig& config,
                                 const CheckpointCallback& on_checkpoint) {
  if (counts.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot select a vocabulary for an empty corpus");
  }
  Trainer trainer(counts);
  config.Validate(trainer.min_vocab_size());

  std::vector<CheckpointRecord> trace;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  std::size_t stagnation = 0;
  auto record = [&](std::size_t vocab_size, double score) {
    CheckpointRecord rec;
    rec.index = trace.size();
    rec.vocab_size = vocab_size;
    rec.zipf_t = score;
    if (rec.zipf_t > best + config.epsilon) {
      stagnation = 0;
    } else {
      ++stagnation;
    }
    if (rec.zipf_t > best) {
      best = rec.zipf_t;
      best_index = rec.index;
    }
    rec.zipf_max = best;
    rec.stagnation = stagnation;
    trace.push_back(rec);
    if (on_checkpoint) on_checkpoint(rec);
  };
  // Applies up to `budget` merges; returns how many were applied.
  bool exhausted = false;
  auto grow = [&](std::size_t budget) {
    std::size_t applied = 0;
    while (applied < budget) {
      if (!trainer.Step()) {
        exhausted = true;
        break;
      }
      ++applied;
    }
    return applied;
  };

  if (config.v_min) {
    grow(*config.v_min - trainer.vocab_size());
    record(trainer.vocab_size(), CheckpointScore(trainer.frequency_histogram()));
  } else {
    // Walk down the initial descent: the first checkpoint that scores higher
    // than its predecessor ends it, and the trace starts at the trough.
    std::size_t trough_size = trainer.vocab_size();
    double trough_score = CheckpointScore(trainer.frequency_histogram());
    while (true) {
      const std::size_t budget = std::min(config.checkpoint_interval,
                                          config.v_max - trainer.vocab_size());
      if (budget == 0 || grow(budget) == 0) {
        record(trough_size, trough_score);
        break;
      }
      const double score = CheckpointScore(trainer.frequency_histogram());
      if (score > trough_score) {
        record(trough_size, trough_score);
        record(trainer.vocab_size(), score);
        break;
      }
      trough_size = trainer.vocab_size();
      trough_score = score;
      if (exhausted) {
        record(trough_size, trough_score);
        break;
      }
    }
  }

  StopReason reason;
  while (true) {
    if (stagnation >= config.patience) {
      reason = StopReason::kStagnation;
      break;
    }
    if (trainer.vocab_size() >= config.v_max) {
      reason = StopReason::kMaxSize;
      break;
    }
    if (exhausted) {
      reason = StopReason::kPairsExhausted;
      break;
    }
    const std::size_t budget =
        std::min(config.checkpoint_interval, config.v_max - trainer.vocab_size());
    if (grow(budget) == 0) {
      reason = StopReason::kPairsExhausted;
      break;
    }
    record(trainer.vocab_size(), CheckpointScore(trainer.frequency_histogram()));
  }

  const std::size_t selected_size = config.pick_rule == PickRule::kCurrentAtStop
                                        ? trace.back().vocab_size
                                        : trace[best_index].vocab_size;
  // Training is deterministic, so the vocabulary at an earlier size is a
  // prefix of the final merge list.
  Vocabulary vocab =
      trainer.Freeze().Truncated(selected_size - trainer.min_vocab_size());
  return SelectionResult{std::move(trace), reason, selected_size, std::move(vocab),
                         best_index};
}

std::string TraceCsvHeader() {
  return "checkpoint,vocab_size,zipf_t,zipf_max,stagnation\n";
}

std::string TraceCsvRow(const CheckpointRecord& rec) {
  return std::to_string(rec.index) + "," + std::to_string(rec.vocab_size) + "," +
         io::FormatDouble(rec.zipf_t) + "," + io::FormatDouble(rec.zipf_max) + "," +
         std::to_string(rec.stagnation) + "\n";
}

std::string TraceCsvSummary(const SelectionResult& result) {
  return "# stop_reason=" + std::string(ToString(result.stop_reason)) +
         ",selected_size=" + std::to_string(result.selected_size) +
         ",best_checkpoint=" + std::to_string(result.best_checkpoint) + "\n";
}

std::string TraceCsv(const SelectionResult& result) {
  std::string out = TraceCsvHeader();
  for (const auto& rec : result.trace) out += TraceCsvRow(rec);
  out += TraceCsvSummary(result);
  return out;
}

}  // namespace zipfvocab
