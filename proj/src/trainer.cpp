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

#include <algorithm>
#include <set>

#include "zipfvocab/bpe.hpp"
#include "zipfvocab/error.hpp"
#include "zipfvocab/utf8.hpp"

namespace zipfvocab {

std::vector<std::string> ReservedTokens(CorpusMode mode) {
  if (mode == CorpusMode::kText) {
    return {std::string(kUnknownToken), std::string(kEndOfWordMarker)};
  }
  return {std::string(kUnknownToken)};
}

std::vector<std::string> InitialSymbols(const PretokenCounts& counts) {
  const Alphabet chars = AlphabetOf(counts);
  if (counts.mode() == CorpusMode::kSequence) return chars.symbols;
  std::set<std::string> symbols(chars.symbols.begin(), chars.symbols.end());
  for (const auto& c : chars.symbols) {
    symbols.insert(c + std::string(kEndOfWordMarker));
  }
  return {symbols.begin(), symbols.end()};
}

std::size_t MinVocabSize(const PretokenCounts& counts) {
  return InitialSymbols(counts).size() + ReservedTokens(counts.mode()).size();
}

std::vector<std::string> InitialSegmentation(std::string_view pretoken,
                                             CorpusMode mode) {
  std::vector<std::string> pieces = utf8::SplitCodePoints(pretoken);
  if (mode == CorpusMode::kText && !pieces.empty()) {
    pieces.back() += kEndOfWordMarker;
  }
  return pieces;
}

Trainer::Trainer(const PretokenCounts& counts, FrequencyTracking tracking)
    : mode_(counts.mode()), tracking_(tracking == FrequencyTracking::kOn) {
  alphabet_ = InitialSymbols(counts);
  min_vocab_size_ = alphabet_.size() + ReservedTokens(mode_).size();
  for (const auto& symbol : alphabet_) Intern(symbol);

  words_.reserve(counts.entries().size());
  pretokens_.reserve(counts.entries().size());
  for (const auto& [pretoken, count] : counts.entries()) {
    Word word{{}, count};
    for (const auto& piece : InitialSegmentation(pretoken, mode_)) {
      word.symbols.push_back(symbol_ids_.at(piece));
    }
    pretokens_.push_back(pretoken);
    words_.push_back(std::move(word));
  }
  visit_stamp_.assign(words_.size(), 0);

  for (std::uint32_t w = 0; w < words_.size(); ++w) {
    const Word& word = words_[w];
    for (std::size_t i = 0; i < word.symbols.size(); ++i) {
      token_counts_[word.symbols[i]] += word.count;
      if (i + 1 < word.symbols.size()) {
        AddPair(word.symbols[i], word.symbols[i + 1], word.count, w);
      }
    }
  }
  if (tracking_) {
    for (const std::int64_t count : token_counts_) {
      if (count > 0) histogram_.Add(count);
    }
    recorded_counts_ = token_counts_;
  }
  grown_pairs_.clear();
  heap_.reserve(pair_counts_.size());
  for (const auto& [key, count] : pair_counts_) {
    heap_.push_back({count, LeftOf(key), RightOf(key)});
  }
  std::make_heap(heap_.begin(), heap_.end(),
                 [this](const HeapEntry& a, const HeapEntry& b) {
                   return HeapLess(a, b);
                 });
}

Trainer::Symbol Trainer::Intern(const std::string& token) {
  auto [it, inserted] =
      symbol_ids_.emplace(token, static_cast<Symbol>(symbols_.size()));
  if (inserted) {
    symbols_.push_back(token);
    token_counts_.push_back(0);
  }
  return it->second;
}

// Max-heap order: higher count first, then lexicographically smaller pair.
bool Trainer::HeapLess(const HeapEntry& a, const HeapEntry& b) const {
  if (a.count != b.count) return a.count < b.count;
  if (a.left != b.left) return symbols_[a.left] > symbols_[b.left];
  return symbols_[a.right] > symbols_[b.right];
}

void Trainer::PushHeap(HeapEntry entry) {
  heap_.push_back(entry);
  std::push_heap(heap_.begin(), heap_.end(),
                 [this](const HeapEntry& a, const HeapEntry& b) {
                   return HeapLess(a, b);
                 });
}

void Trainer::PopHeap() {
  std::pop_heap(heap_.begin(), heap_.end(),
                [this](const HeapEntry& a, const HeapEntry& b) {
                  return HeapLess(a, b);
                });
  heap_.pop_back();
}

void Trainer::AddPair(Symbol left, Symbol right, std::int64_t count,
                      std::uint32_t word) {
  const std::uint64_t key = Key(left, right);
  auto [it, inserted] = pair_counts_.try_emplace(key, 0);
  it->second += count;
  auto& holders = pair_words_[key];
  if (holders.empty() || holders.back() != word) holders.push_back(word);
  grown_pairs_.push_back(key);
}

void Trainer::SubtractPair(Symbol left, Symbol right, std::int64_t count) {
  auto it = pair_counts_.find(Key(left, right));
  if (it == pair_counts_.end() || it->second < count) {
    throw Error(ErrorCode::kInconsistentState,
                "pair index underflow for (" + symbols_[left] + ", " +
                    symbols_[right] + ")");
  }
  it->second -= count;
  if (it->second == 0) pair_counts_.erase(it);
}

std::optional<MergeRule> Trainer::BestPair() {
  // Heap entries are lazy: an entry may overstate a pair's count (the pair
  // shrank since it was pushed) but never understates the largest live one.
  while (!heap_.empty()) {
    const HeapEntry top = heap_.front();
    const auto it = pair_counts_.find(Key(top.left, top.right));
    const std::int64_t current = it == pair_counts_.end() ? 0 : it->second;
    if (current == top.count) {
      MergeRule rule;
      rule.left = symbols_[top.left];
      rule.right = symbols_[top.right];
      rule.merged = rule.left + rule.right;
      rule.rank = static_cast<std::int32_t>(merges_.size());
      return rule;
    }
    PopHeap();
    if (current > 0) PushHeap({current, top.left, top.right});
  }
  return std::nullopt;
}

void Trainer::ApplyMerge(const MergeRule& rule) {
  const auto left_it = symbol_ids_.find(rule.left);
  const auto right_it = symbol_ids_.find(rule.right);
  if (left_it == symbol_ids_.end() || right_it == symbol_ids_.end()) {
    throw Error(ErrorCode::kInconsistentState,
                "merge operand is not a known token: (" + rule.left + ", " +
                    rule.right + ")");
  }
  const Symbol left = left_it->second;
  const Symbol right = right_it->second;
  const std::uint64_t key = Key(left, right);
  if (!pair_counts_.contains(key)) {
    throw Error(ErrorCode::kInconsistentState,
                "pair (" + rule.left + ", " + rule.right +
                    ") does not occur in the corpus");
  }
  if (rule.merged != rule.left + rule.right) {
    throw Error(ErrorCode::kInconsistentState,
                "merged token is not the concatenation of its operands");
  }
  const Symbol merged = Intern(rule.merged);

  std::vector<std::uint32_t> holders = std::move(pair_words_[key]);
  pair_words_.erase(key);
  const auto stamp = static_cast<std::uint32_t>(merges_.size() + 1);
  grown_pairs_.clear();

  std::vector<Symbol> rebuilt;
  for (const std::uint32_t w : holders) {
    if (visit_stamp_[w] == stamp) continue;
    visit_stamp_[w] = stamp;
    Word& word = words_[w];
    const auto& old = word.symbols;
    const std::size_t n = old.size();
    rebuilt.clear();
    rebuilt.reserve(n);
    std::int64_t occurrences = 0;
    for (std::size_t i = 0; i < n;) {
      if (i + 1 < n && old[i] == left && old[i + 1] == right) {
        if (!rebuilt.empty()) {
          // The predecessor is already in merged form, so back-to-back
          // occurrences cancel the pair added by the previous iteration.
          SubtractPair(rebuilt.back(), left, word.count);
          AddPair(rebuilt.back(), merged, word.count, w);
        }
        SubtractPair(left, right, word.count);
        if (i + 2 < n) {
          SubtractPair(right, old[i + 2], word.count);
          AddPair(merged, old[i + 2], word.count, w);
        }
        rebuilt.push_back(merged);
        ++occurrences;
        i += 2;
      } else {
        rebuilt.push_back(old[i]);
        ++i;
      }
    }
    if (occurrences == 0) continue;
    const std::int64_t weight = occurrences * word.count;
    token_counts_[left] -= weight;
    token_counts_[right] -= weight;
    token_counts_[merged] += weight;
    word.symbols.assign(rebuilt.begin(), rebuilt.end());
  }

  std::sort(grown_pairs_.begin(), grown_pairs_.end());
  grown_pairs_.erase(std::unique(grown_pairs_.begin(), grown_pairs_.end()),
                     grown_pairs_.end());
  for (const std::uint64_t grown : grown_pairs_) {
    const auto it = pair_counts_.find(grown);
    if (it != pair_counts_.end()) {
      PushHeap({it->second, LeftOf(grown), RightOf(grown)});
    }
  }

  if (tracking_) dirty_.insert(dirty_.end(), {left, right, merged});
  grown_pairs_.clear();

  MergeRule applied = rule;
  applied.rank = static_cast<std::int32_t>(merges_.size());
  merges_.push_back(std::move(applied));
}

bool Trainer::Step() {
  auto best = BestPair();
  if (!best) return false;
  ApplyMerge(*best);
  return true;
}

TokenFrequencyTable Trainer::TokenCounts() const {
  TokenFrequencyTable table;
  for (std::size_t s = 0; s < symbols_.size(); ++s) {
    if (token_counts_[s] > 0) table.Add(symbols_[s], token_counts_[s]);
  }
  return table;
}

const FrequencyHistogram& Trainer::frequency_histogram() const {
  if (!tracking_) {
    throw Error(ErrorCode::kInconsistentState, "frequency tracking is off");
  }
  recorded_counts_.resize(token_counts_.size(), 0);
  for (const Symbol s : dirty_) {
    const std::int64_t before = recorded_counts_[s];
    const std::int64_t after = token_counts_[s];
    if (before == after) continue;
    if (before > 0) histogram_.Remove(before);
    if (after > 0) histogram_.Add(after);
    recorded_counts_[s] = after;
  }
  dirty_.clear();
  return histogram_;
}

std::vector<std::int64_t> Trainer::Frequencies() const {
  std::vector<std::int64_t> out;
  out.reserve(symbols_.size());
  for (const std::int64_t count : token_counts_) {
    if (count > 0) out.push_back(count);
  }
  return out;
}

std::map<std::pair<std::string, std::string>, std::int64_t> Trainer::PairCounts()
    const {
  std::map<std::pair<std::string, std::string>, std::int64_t> out;
  for (const auto& [key, count] : pair_counts_) {
    out.emplace(std::make_pair(symbols_[LeftOf(key)], symbols_[RightOf(key)]),
                count);
  }
  return out;
}

std::vector<std::string> Trainer::Segmentation(std::size_t index) const {
  std::vector<std::string> out;
  for (const Symbol s : words_.at(index).symbols) out.push_back(symbols_[s]);
  return out;
}

Vocabulary Trainer::Freeze() const {
  return Vocabulary(mode_, alphabet_, merges_);
}

TrainResult TrainToSize(const PretokenCounts& counts, std::size_t target) {
  const std::size_t minimum = MinVocabSize(counts);
  if (target < minimum) {
    throw Error(ErrorCode::kInvalidTarget,
                "target vocabulary size " + std::to_string(target) +
                    " is below the minimum " + std::to_string(minimum));
  }
  Trainer trainer(counts, FrequencyTracking::kOff);
  while (trainer.vocab_size() < target) {
    if (!trainer.Step()) break;
  }
  return {trainer.Freeze(), trainer.vocab_size() < target};
}

}  // namespace zipfvocab
