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
#include <limits>
#include <unordered_set>

#include "json.hpp"
#include "zipfvocab/bpe.hpp"
#include "zipfvocab/error.hpp"
#include "zipfvocab/io.hpp"
#include "zipfvocab/utf8.hpp"

namespace zipfvocab {
namespace {

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidVocabulary, message);
}

bool IsInitialSymbol(std::string_view symbol, CorpusMode mode) {
  if (symbol.empty() || !utf8::IsValid(symbol)) return false;
  if (mode == CorpusMode::kText && symbol.ends_with(kEndOfWordMarker)) {
    symbol.remove_suffix(kEndOfWordMarker.size());
  }
  if (utf8::CodePointCount(symbol) != 1) return false;
  if (symbol == kEndOfWordMarker || symbol == kUnknownToken) return false;
  if (mode == CorpusMode::kText) {
    std::size_t pos = 0;
    if (utf8::IsWhitespace(utf8::Next(symbol, pos))) return false;
  }
  return true;
}

std::string JsonString(std::string_view s) {
  return nlohmann::json(std::string(s)).dump();
}

}  // namespace

Vocabulary::Vocabulary(CorpusMode mode, std::vector<std::string> alphabet,
                       std::vector<MergeRule> merges)
    : mode_(mode),
      alphabet_(std::move(alphabet)),
      merges_(std::move(merges)),
      reserved_(ReservedTokens(mode)) {
  if (alphabet_.empty()) Invalid("vocabulary alphabet is empty");
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (!IsInitialSymbol(alphabet_[i], mode_)) {
      Invalid("'" + alphabet_[i] + "' is not a valid alphabet symbol");
    }
    if (i > 0 && !(alphabet_[i - 1] < alphabet_[i])) {
      Invalid("alphabet must be sorted by code point without duplicates");
    }
  }

  tokens_.reserve(reserved_.size() + alphabet_.size() + merges_.size());
  auto add_token = [this](const std::string& token) {
    const auto id = static_cast<TokenId>(tokens_.size());
    tokens_.push_back(token);
    ids_.try_emplace(token, id);
    return id;
  };
  for (const auto& token : reserved_) add_token(token);
  for (const auto& symbol : alphabet_) add_token(symbol);

  for (std::size_t r = 0; r < merges_.size(); ++r) {
    const MergeRule& rule = merges_[r];
    if (rule.rank != static_cast<std::int32_t>(r)) {
      Invalid("merge ranks must be consecutive from 0");
    }
    if (rule.merged != rule.left + rule.right) {
      Invalid("merge " + std::to_string(r) + " is not a concatenation");
    }
    const auto left = IdOf(rule.left);
    const auto right = IdOf(rule.right);
    if (!left || !right || IsReserved(*left) || IsReserved(*right)) {
      Invalid("merge " + std::to_string(r) +
              " uses a token that is neither an alphabet symbol nor an "
              "earlier merge result");
    }
    add_token(rule.merged);
    const auto merged = *IdOf(rule.merged);
    if (!pair_ranks_.try_emplace(PairKey(*left, *right),
                                 RankedMerge{rule.rank, merged})
             .second) {
      Invalid("merge " + std::to_string(r) + " repeats an earlier pair");
    }
  }
}

std::optional<TokenId> Vocabulary::IdOf(std::string_view token) const {
  const auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::TokenOf(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw Error(ErrorCode::kInvalidId,
                "token id " + std::to_string(id) + " is out of range [0, " +
                    std::to_string(tokens_.size()) + ")");
  }
  return tokens_[static_cast<std::size_t>(id)];
}

Vocabulary Vocabulary::Truncated(std::size_t merge_count) const {
  merge_count = std::min(merge_count, merges_.size());
  return Vocabulary(mode_, alphabet_,
                    {merges_.begin(),
                     merges_.begin() + static_cast<std::ptrdiff_t>(merge_count)});
}

std::vector<TokenId> Vocabulary::EncodePretoken(std::string_view pretoken) const {
  std::vector<TokenId> ids;
  for (const auto& piece : InitialSegmentation(pretoken, mode_)) {
    ids.push_back(IdOf(piece).value_or(unknown_id()));
  }
  // Applying the lowest-ranked present pair each round is equivalent to
  // sweeping the rules in rank order: a merge can only create pairs that
  // involve its own (later-ranked) result.
  std::vector<TokenId> next;
  while (ids.size() > 1) {
    std::int32_t best_rank = std::numeric_limits<std::int32_t>::max();
    RankedMerge best{};
    std::size_t best_pos = 0;
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
      const auto it = pair_ranks_.find(PairKey(ids[i], ids[i + 1]));
      if (it != pair_ranks_.end() && it->second.rank < best_rank) {
        best_rank = it->second.rank;
        best = it->second;
        best_pos = i;
      }
    }
    if (best_rank == std::numeric_limits<std::int32_t>::max()) break;
    const TokenId left = ids[best_pos];
    const TokenId right = ids[best_pos + 1];
    next.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(best_pos));
    for (std::size_t i = best_pos; i < ids.size();) {
      if (i + 1 < ids.size() && ids[i] == left && ids[i + 1] == right) {
        next.push_back(best.merged);
        i += 2;
      } else {
        next.push_back(ids[i]);
        ++i;
      }
    }
    ids.swap(next);
  }
  return ids;
}

std::vector<TokenId> Vocabulary::Encode(std::string_view input) const {
  if (!utf8::IsValid(input)) {
    throw Error(ErrorCode::kInvalidEncoding, "encoder input is not valid UTF-8");
  }
  std::vector<TokenId> out;
  ForEachPretoken(input, mode_, [&](std::string_view pretoken) {
    const auto ids = EncodePretoken(pretoken);
    out.insert(out.end(), ids.begin(), ids.end());
  });
  return out;
}

std::string Vocabulary::Decode(std::span<const TokenId> ids) const {
  std::string text;
  for (const TokenId id : ids) text += TokenOf(id);
  if (mode_ == CorpusMode::kSequence) return text;
  std::string out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) {
    if (text.compare(pos, kEndOfWordMarker.size(), kEndOfWordMarker) == 0) {
      out.push_back(' ');
      pos += kEndOfWordMarker.size();
    } else {
      out.push_back(text[pos]);
      ++pos;
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string Vocabulary::ToJson() const {
  std::string out = "{\n";
  out += "  \"format_version\": " + std::to_string(kVocabularyFormatVersion) + ",\n";
  out += "  \"mode\": " + JsonString(ToString(mode_)) + ",\n";
  out += "  \"alphabet\": [";
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    out += (i == 0 ? "" : ", ") + JsonString(alphabet_[i]);
  }
  out += "],\n";
  out += "  \"merges\": [";
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    out += (i == 0 ? "\n    [" : ",\n    [") + JsonString(merges_[i].left) +
           ", " + JsonString(merges_[i].right) + "]";
  }
  out += merges_.empty() ? "],\n" : "\n  ],\n";
  out += "  \"reserved\": [";
  for (std::size_t i = 0; i < reserved_.size(); ++i) {
    out += (i == 0 ? "" : ", ") + JsonString(reserved_[i]);
  }
  out += "],\n";
  out += "  \"marker\": " + JsonString(kEndOfWordMarker) + "\n";
  out += "}\n";
  return out;
}

Vocabulary Vocabulary::FromJson(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    Invalid(std::string("vocabulary is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) Invalid("vocabulary document must be an object");
    if (doc.at("format_version").get<int>() != kVocabularyFormatVersion) {
      Invalid("unsupported vocabulary format_version");
    }
    const auto mode = ParseCorpusMode(doc.at("mode").get<std::string>());
    if (!mode) Invalid("unknown vocabulary mode");
    if (doc.at("marker").get<std::string>() != kEndOfWordMarker) {
      Invalid("vocabulary marker does not match this build");
    }
    if (doc.at("reserved").get<std::vector<std::string>>() != ReservedTokens(*mode)) {
      Invalid("vocabulary reserved tokens do not match this build");
    }
    auto alphabet = doc.at("alphabet").get<std::vector<std::string>>();
    std::vector<MergeRule> merges;
    for (const auto& pair : doc.at("merges")) {
      if (!pair.is_array() || pair.size() != 2) {
        Invalid("each merge must be a [left, right] pair");
      }
      MergeRule rule;
      rule.left = pair[0].get<std::string>();
      rule.right = pair[1].get<std::string>();
      rule.merged = rule.left + rule.right;
      rule.rank = static_cast<std::int32_t>(merges.size());
      merges.push_back(std::move(rule));
    }
    return Vocabulary(*mode, std::move(alphabet), std::move(merges));
  } catch (const nlohmann::json::exception& e) {
    Invalid(std::string("malformed vocabulary: ") + e.what());
  }
}

void Vocabulary::Save(const std::filesystem::path& path) const {
  io::WriteFileAtomic(path, ToJson());
}

Vocabulary Vocabulary::Load(const std::filesystem::path& path) {
  std::string data;
  try {
    data = io::ReadFile(path);
  } catch (const Error& e) {
    Invalid(e.what());
  }
  return FromJson(data);
}

}  // namespace zipfvocab
