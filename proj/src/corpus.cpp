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

#include "zipfvocab/corpus.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <string>
#include <unordered_map>

#include "zipfvocab/error.hpp"
#include "zipfvocab/io.hpp"
#include "zipfvocab/utf8.hpp"

namespace zipfvocab {

std::string_view ToString(CorpusMode mode) {
  return mode == CorpusMode::kText ? "text" : "sequence";
}

std::string_view ToString(Normalization norm) {
  return norm == Normalization::kNone ? "none" : "nfc";
}

std::optional<CorpusMode> ParseCorpusMode(std::string_view name) {
  if (name == "text") return CorpusMode::kText;
  if (name == "sequence") return CorpusMode::kSequence;
  return std::nullopt;
}

std::optional<Normalization> ParseNormalization(std::string_view name) {
  if (name == "none") return Normalization::kNone;
  if (name == "nfc") return Normalization::kNfc;
  return std::nullopt;
}

namespace {

void CheckPretoken(std::string_view pretoken, CorpusMode mode) {
  if (pretoken.find(kEndOfWordMarker) != std::string_view::npos ||
      pretoken.find(kUnknownToken) != std::string_view::npos) {
    throw Error(ErrorCode::kReservedCharacter,
                "pre-token contains a reserved glyph (U+2581 or U+FFFD): '" +
                    std::string(pretoken.substr(0, 64)) + "'");
  }
  if (mode == CorpusMode::kSequence && pretoken.size() > kMaxRecordBytes) {
    throw Error(ErrorCode::kRecordTooLong,
                "sequence record of " + std::to_string(pretoken.size()) +
                    " bytes exceeds the 1 MiB limit");
  }
}

}  // namespace

void ForEachPretoken(std::string_view text, CorpusMode mode,
                     const std::function<void(std::string_view)>& emit) {
  if (mode == CorpusMode::kSequence) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view record = text.substr(start, end - start);
      if (!record.empty() && record.back() == '\r') record.remove_suffix(1);
      if (!record.empty()) emit(record);
      start = end + 1;
    }
    return;
  }
  std::size_t pos = 0;
  std::size_t word_start = std::string_view::npos;
  while (pos < text.size()) {
    const std::size_t here = pos;
    const char32_t cp = utf8::Next(text, pos);
    if (utf8::IsWhitespace(cp)) {
      if (word_start != std::string_view::npos) {
        emit(text.substr(word_start, here - word_start));
        word_start = std::string_view::npos;
      }
    } else if (word_start == std::string_view::npos) {
      word_start = here;
    }
  }
  if (word_start != std::string_view::npos) emit(text.substr(word_start));
}

PretokenCounts PretokenCounts::FromEntries(
    CorpusMode mode,
    std::initializer_list<std::pair<std::string_view, std::int64_t>> entries) {
  PretokenCounts counts(mode);
  for (const auto& [pretoken, count] : entries) counts.Add(pretoken, count);
  return counts;
}

PretokenCounts PretokenCounts::FromText(std::string_view text, CorpusMode mode,
                                        Normalization norm) {
  if (!utf8::IsValid(text)) {
    throw Error(ErrorCode::kInvalidEncoding, "input is not valid UTF-8");
  }
  std::string normalized;
  if (norm == Normalization::kNfc) {
    normalized = utf8::NormalizeNfc(text);
    text = normalized;
  }
  std::unordered_map<std::string_view, std::int64_t> tally;
  ForEachPretoken(text, mode, [&](std::string_view pretoken) {
    ++tally[pretoken];
  });
  PretokenCounts counts(mode);
  for (const auto& [pretoken, count] : tally) counts.Add(pretoken, count);
  return counts;
}

void PretokenCounts::Add(std::string_view pretoken, std::int64_t count) {
  if (count < 1) {
    throw Error(ErrorCode::kInvalidConfig, "pre-token count must be >= 1");
  }
  if (pretoken.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "pre-token must be non-empty");
  }
  if (!utf8::IsValid(pretoken)) {
    throw Error(ErrorCode::kInvalidEncoding, "pre-token is not valid UTF-8");
  }
  if (mode_ == CorpusMode::kText) {
    std::size_t pos = 0;
    while (pos < pretoken.size()) {
      if (utf8::IsWhitespace(utf8::Next(pretoken, pos))) {
        throw Error(ErrorCode::kInvalidConfig,
                    "text-mode pre-token contains whitespace");
      }
    }
  }
  CheckPretoken(pretoken, mode_);
  auto it = entries_.find(pretoken);
  if (it == entries_.end()) {
    entries_.emplace(std::string(pretoken), count);
  } else {
    it->second += count;
  }
  total_pretokens_ += count;
  total_chars_ += count * static_cast<std::int64_t>(utf8::CodePointCount(pretoken));
}

void PretokenCounts::Merge(const PretokenCounts& other) {
  if (other.mode_ != mode_) {
    throw Error(ErrorCode::kModeMismatch, "cannot merge corpora of different modes");
  }
  for (const auto& [pretoken, count] : other.entries_) {
    entries_[pretoken] += count;
  }
  total_pretokens_ += other.total_pretokens_;
  total_chars_ += other.total_chars_;
}

PretokenCounts LoadCorpus(const std::filesystem::path& path, CorpusMode mode,
                          Normalization norm) {
  const std::string data = io::ReadFile(path);
  PretokenCounts counts = PretokenCounts::FromText(data, mode, norm);
  if (counts.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                "corpus '" + path.string() + "' contains no pre-tokens");
  }
  return counts;
}

PretokenCounts LoadCorpusShards(const std::vector<std::filesystem::path>& paths,
                                CorpusMode mode, Normalization norm) {
  std::vector<std::future<PretokenCounts>> pending;
  pending.reserve(paths.size());
  for (const auto& path : paths) {
    pending.push_back(std::async(std::launch::async, [&path, mode, norm] {
      return PretokenCounts::FromText(io::ReadFile(path), mode, norm);
    }));
  }
  PretokenCounts total(mode);
  for (auto& shard : pending) total.Merge(shard.get());
  if (total.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus shards contain no pre-tokens");
  }
  return total;
}

Alphabet AlphabetOf(const PretokenCounts& counts) {
  if (counts.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "alphabet of an empty corpus");
  }
  std::set<std::string> distinct;
  for (const auto& [pretoken, count] : counts.entries()) {
    for (auto& cp : utf8::SplitCodePoints(pretoken)) distinct.insert(std::move(cp));
  }
  // Byte order of UTF-8 strings coincides with code point order.
  return Alphabet{{distinct.begin(), distinct.end()}};
}

}  // namespace zipfvocab
