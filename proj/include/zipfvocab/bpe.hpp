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
// Byte-pair-encoding at character granularity.
//
// Trainer is the incremental learner: it starts from single characters and
// repeatedly merges the most frequent adjacent pair, keeping pair and token
// histograms current after every merge so that callers can read the token
// distribution at any vocabulary size without re-tokenizing the corpus.
//
// Vocabulary is the frozen result (alphabet + ranked merges) and owns the
// encoder/decoder and the JSON file format.
//
// Text mode word boundaries: the final character of every word is fused with
// kEndOfWordMarker ("ab" starts as [a, b▁]), so no merge spans two words and
// decoding can restore the spaces.

#ifndef ZIPFVOCAB_BPE_HPP_
#define ZIPFVOCAB_BPE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zipfvocab/corpus.hpp"
#include "zipfvocab/frequency_histogram.hpp"
#include "zipfvocab/token_frequency.hpp"

namespace zipfvocab {

using TokenId = std::int32_t;

struct MergeRule {
  std::string left;
  std::string right;
  std::string merged;
  std::int32_t rank = 0;

  friend bool operator==(const MergeRule&, const MergeRule&) = default;
};

inline constexpr int kVocabularyFormatVersion = 1;

class Vocabulary {
 public:
  // Validates the alphabet (sorted, unique, well-formed for the mode) and the
  // merge list (consecutive ranks, merged == left + right, operands already
  // known). Throws kInvalidVocabulary otherwise.
  Vocabulary(CorpusMode mode, std::vector<std::string> alphabet,
             std::vector<MergeRule> merges);

  CorpusMode mode() const { return mode_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<MergeRule>& merges() const { return merges_; }
  const std::vector<std::string>& reserved() const { return reserved_; }
  std::string_view marker() const { return kEndOfWordMarker; }

  // Reserved tokens, then alphabet, then one entry per merge rule.
  std::size_t size() const { return tokens_.size(); }
  TokenId unknown_id() const { return 0; }

  // Smallest id whose token string is `token`.
  std::optional<TokenId> IdOf(std::string_view token) const;
  const std::string& TokenOf(TokenId id) const;
  bool IsReserved(TokenId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < reserved_.size();
  }

  // Same alphabet with only the first `merge_count` rules.
  Vocabulary Truncated(std::size_t merge_count) const;

  std::vector<TokenId> EncodePretoken(std::string_view pretoken) const;
  std::vector<TokenId> Encode(std::string_view input) const;
  std::string Decode(std::span<const TokenId> ids) const;

  std::string ToJson() const;
  static Vocabulary FromJson(std::string_view json);
  void Save(const std::filesystem::path& path) const;
  static Vocabulary Load(const std::filesystem::path& path);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.mode_ == b.mode_ && a.alphabet_ == b.alphabet_ &&
           a.merges_ == b.merges_;
  }

 private:
  struct RankedMerge {
    std::int32_t rank;
    TokenId merged;
  };

  static std::uint64_t PairKey(TokenId left, TokenId right) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(left)) << 32) |
           static_cast<std::uint32_t>(right);
  }

  CorpusMode mode_;
  std::vector<std::string> alphabet_;
  std::vector<MergeRule> merges_;
  std::vector<std::string> reserved_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> ids_;
  std::unordered_map<std::uint64_t, RankedMerge> pair_ranks_;
};

// Text mode: [UNK, marker]. Sequence mode: [UNK].
std::vector<std::string> ReservedTokens(CorpusMode mode);

// Initial symbol inventory of a corpus. Sequence mode: the distinct
// characters. Text mode: every character plus its marker-fused form, so any
// word over the alphabet can be represented.
std::vector<std::string> InitialSymbols(const PretokenCounts& counts);

// |InitialSymbols| + number of reserved tokens.
std::size_t MinVocabSize(const PretokenCounts& counts);

// Splits a pre-token into its initial symbols (marker fused in text mode).
std::vector<std::string> InitialSegmentation(std::string_view pretoken,
                                             CorpusMode mode);

// Whether a Trainer keeps a FrequencyHistogram of its token counts. Tracking
// is what makes checkpoint scoring cheap; plain training can skip it.
enum class FrequencyTracking { kOn, kOff };

class Trainer {
 public:
  explicit Trainer(const PretokenCounts& counts,
                   FrequencyTracking tracking = FrequencyTracking::kOn);

  // Most frequent adjacent pair with count > 0, ties broken by the
  // lexicographically smallest (left, right). The returned rule carries the
  // rank it would receive if applied next.
  std::optional<MergeRule> BestPair();

  // Replaces every non-overlapping left-to-right occurrence of the rule's
  // pair. Throws kInconsistentState when the pair does not occur.
  void ApplyMerge(const MergeRule& rule);

  // BestPair + ApplyMerge. Returns false when no pair is left.
  bool Step();

  CorpusMode mode() const { return mode_; }
  std::size_t vocab_size() const { return min_vocab_size_ + merges_.size(); }
  std::size_t min_vocab_size() const { return min_vocab_size_; }
  const std::vector<MergeRule>& merges() const { return merges_; }

  // Token histogram of the corpus under the current merges.
  TokenFrequencyTable TokenCounts() const;
  // The non-zero values of TokenCounts(), in no particular order.
  std::vector<std::int64_t> Frequencies() const;
  // The same values grouped by frequency. Merges only note which tokens
  // changed; the histogram catches up on access. Throws kInconsistentState
  // when tracking is off.
  const FrequencyHistogram& frequency_histogram() const;
  // Weighted adjacent-pair histogram (non-zero entries only).
  std::map<std::pair<std::string, std::string>, std::int64_t> PairCounts() const;

  std::size_t pretoken_count() const { return words_.size(); }
  const std::string& pretoken(std::size_t index) const { return pretokens_[index]; }
  std::vector<std::string> Segmentation(std::size_t index) const;

  Vocabulary Freeze() const;

 private:
  using Symbol = std::int32_t;

  struct Word {
    std::vector<Symbol> symbols;
    std::int64_t count;
  };

  struct HeapEntry {
    std::int64_t count;
    Symbol left;
    Symbol right;
  };

  static std::uint64_t Key(Symbol left, Symbol right) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(left)) << 32) |
           static_cast<std::uint32_t>(right);
  }
  static Symbol LeftOf(std::uint64_t key) { return static_cast<Symbol>(key >> 32); }
  static Symbol RightOf(std::uint64_t key) {
    return static_cast<Symbol>(key & 0xFFFFFFFFu);
  }

  Symbol Intern(const std::string& token);
  bool HeapLess(const HeapEntry& a, const HeapEntry& b) const;
  void PushHeap(HeapEntry entry);
  void PopHeap();
  void AddPair(Symbol left, Symbol right, std::int64_t count, std::uint32_t word);
  void SubtractPair(Symbol left, Symbol right, std::int64_t count);

  CorpusMode mode_;
  std::size_t min_vocab_size_ = 0;
  std::vector<std::string> alphabet_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Symbol> symbol_ids_;
  std::vector<std::string> pretokens_;
  std::vector<Word> words_;
  std::vector<std::int64_t> token_counts_;
  bool tracking_ = true;
  // Lazily synchronised view of token_counts_: recorded_counts_ is what the
  // histogram currently holds, dirty_ the symbols changed since.
  mutable FrequencyHistogram histogram_;
  mutable std::vector<std::int64_t> recorded_counts_;
  mutable std::vector<Symbol> dirty_;
  std::unordered_map<std::uint64_t, std::int64_t> pair_counts_;
  // Words that contained the pair at some point; may hold stale entries.
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> pair_words_;
  std::vector<std::uint32_t> visit_stamp_;
  std::vector<HeapEntry> heap_;
  std::vector<std::uint64_t> grown_pairs_;
  std::vector<MergeRule> merges_;
};

struct TrainResult {
  Vocabulary vocabulary;
  // True when the corpus ran out of pairs before reaching the target.
  bool exhausted = false;
};

// Throws kInvalidTarget when target < MinVocabSize(counts).
TrainResult TrainToSize(const PretokenCounts& counts, std::size_t target);

}  // namespace zipfvocab

#endif  // ZIPFVOCAB_BPE_HPP_
