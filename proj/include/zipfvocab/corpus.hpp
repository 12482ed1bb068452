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
// Corpus ingestion: raw UTF-8 text in, pre-token count table out.
//
// Two modes are supported. In text mode a pre-token is a maximal run of
// non-whitespace code points (Unicode White_Space). In sequence mode every
// non-empty line is one pre-token and is never split further, which is what
// DNA reads or SMILES strings want.

#ifndef ZIPFVOCAB_CORPUS_HPP_
#define ZIPFVOCAB_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zipfvocab {

enum class CorpusMode { kText, kSequence };
enum class Normalization { kNone, kNfc };

std::string_view ToString(CorpusMode mode);
std::string_view ToString(Normalization norm);
std::optional<CorpusMode> ParseCorpusMode(std::string_view name);
std::optional<Normalization> ParseNormalization(std::string_view name);

// Glyph fused onto the last symbol of every text-mode word.
inline constexpr std::string_view kEndOfWordMarker = "▁";
// Placeholder emitted for characters outside a vocabulary's alphabet.
inline constexpr std::string_view kUnknownToken = "�";

// Longest sequence-mode record accepted, in bytes.
inline constexpr std::size_t kMaxRecordBytes = std::size_t{1} << 20;

class PretokenCounts {
 public:
  using Map = std::map<std::string, std::int64_t, std::less<>>;

  explicit PretokenCounts(CorpusMode mode) : mode_(mode) {}

  // Builds a table from explicit entries; every pre-token is validated the
  // same way loaded text is.
  static PretokenCounts FromEntries(
      CorpusMode mode,
      std::initializer_list<std::pair<std::string_view, std::int64_t>> entries);

  // Counts the pre-tokens of one in-memory shard. An empty shard yields an
  // empty table; only LoadCorpus treats emptiness as an error.
  static PretokenCounts FromText(std::string_view text, CorpusMode mode,
                                 Normalization norm = Normalization::kNone);

  void Add(std::string_view pretoken, std::int64_t count = 1);
  void Merge(const PretokenCounts& other);

  CorpusMode mode() const { return mode_; }
  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::int64_t total_pretokens() const { return total_pretokens_; }
  std::int64_t total_chars() const { return total_chars_; }

  friend bool operator==(const PretokenCounts&, const PretokenCounts&) = default;

 private:
  CorpusMode mode_;
  Map entries_;
  std::int64_t total_pretokens_ = 0;
  std::int64_t total_chars_ = 0;
};

// Distinct code points of a corpus, ordered by code point.
struct Alphabet {
  std::vector<std::string> symbols;

  std::size_t size() const { return symbols.size(); }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// Calls `emit` for every pre-token of valid UTF-8 `text`, in input order.
void ForEachPretoken(std::string_view text, CorpusMode mode,
                     const std::function<void(std::string_view)>& emit);

PretokenCounts LoadCorpus(const std::filesystem::path& path, CorpusMode mode,
                          Normalization norm = Normalization::kNone);

// Loads shards concurrently and sums them. Equal to LoadCorpus on the
// concatenation of the shards when each shard ends on a record boundary.
PretokenCounts LoadCorpusShards(const std::vector<std::filesystem::path>& paths,
                                CorpusMode mode,
                                Normalization norm = Normalization::kNone);

Alphabet AlphabetOf(const PretokenCounts& counts);

}  // namespace zipfvocab

#endif  // ZIPFVOCAB_CORPUS_HPP_
