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

#ifndef ZIPFVOCAB_TOKEN_FREQUENCY_HPP_
#define ZIPFVOCAB_TOKEN_FREQUENCY_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "zipfvocab/error.hpp"

namespace zipfvocab {

// Observed token histogram. Holds learned tokens only: reserved tokens and
// zero counts never enter the table.
class TokenFrequencyTable {
 public:
  using Map = std::map<std::string, std::int64_t, std::less<>>;

  TokenFrequencyTable() = default;

  void Add(std::string_view token, std::int64_t count) {
    if (count < 1) {
      throw Error(ErrorCode::kInvalidConfig, "token frequency must be >= 1");
    }
    auto it = counts_.find(token);
    if (it == counts_.end()) {
      counts_.emplace(std::string(token), count);
    } else {
      it->second += count;
    }
  }

  const Map& counts() const { return counts_; }
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  std::int64_t CountOf(std::string_view token) const {
    auto it = counts_.find(token);
    return it == counts_.end() ? 0 : it->second;
  }

  friend bool operator==(const TokenFrequencyTable&,
                         const TokenFrequencyTable&) = default;

 private:
  Map counts_;
};

}  // namespace zipfvocab

#endif  // ZIPFVOCAB_TOKEN_FREQUENCY_HPP_
