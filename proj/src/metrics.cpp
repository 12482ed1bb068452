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

#include <unordered_map>

#include "zipfvocab/error.hpp"
#include "zipfvocab/zipf.hpp"

namespace zipfvocab {
namespace {

void CheckCompatible(const Vocabulary& vocab, const PretokenCounts& counts) {
  if (vocab.mode() != counts.mode()) {
    throw Error(ErrorCode::kModeMismatch,
                "vocabulary mode '" + std::string(ToString(vocab.mode())) +
                    "' does not match corpus mode '" +
                    std::string(ToString(counts.mode())) + "'");
  }
  if (counts.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus contains no pre-tokens");
  }
}

}  // namespace

TokenFrequencyTable EncodedTokenCounts(const Vocabulary& vocab,
                                       const PretokenCounts& counts) {
  CheckCompatible(vocab, counts);
  std::unordered_map<TokenId, std::int64_t> by_id;
  for (const auto& [pretoken, count] : counts.entries()) {
    for (const TokenId id : vocab.EncodePretoken(pretoken)) by_id[id] += count;
  }
  TokenFrequencyTable table;
  for (const auto& [id, count] : by_id) {
    if (!vocab.IsReserved(id)) table.Add(vocab.TokenOf(id), count);
  }
  return table;
}

std::int64_t EncodedTokenTotal(const Vocabulary& vocab,
                               const PretokenCounts& counts) {
  CheckCompatible(vocab, counts);
  std::int64_t total = 0;
  for (const auto& [pretoken, count] : counts.entries()) {
    total += count * static_cast<std::int64_t>(vocab.EncodePretoken(pretoken).size());
  }
  return total;
}

double CompressionRatio(const Vocabulary& vocab, const PretokenCounts& counts) {
  return static_cast<double>(counts.total_chars()) /
         static_cast<double>(EncodedTokenTotal(vocab, counts));
}

double Fertility(const Vocabulary& vocab, const PretokenCounts& counts) {
  if (counts.mode() != CorpusMode::kText) {
    throw Error(ErrorCode::kUnsupportedMode,
                "fertility needs word boundaries (text mode)");
  }
  return static_cast<double>(EncodedTokenTotal(vocab, counts)) /
         static_cast<double>(counts.total_pretokens());
}

}  // namespace zipfvocab
