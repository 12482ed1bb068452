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

#ifndef ZIPFVOCAB_CLI_HPP_
#define ZIPFVOCAB_CLI_HPP_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "zipfvocab/error.hpp"

namespace zipfvocab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

// 2 for usage/configuration problems, 3 for problems with the data.
int ExitCodeFor(ErrorCode code);

std::string ToolVersion();

// Record written next to every output set so a run can be reproduced.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::string corpus_sha256;
  std::vector<std::string> outputs;

  std::string ToJson() const;
};

// Entry point shared by the executable and the tests. `in` backs commands
// that read standard input.
int Run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace zipfvocab::cli

#endif  // ZIPFVOCAB_CLI_HPP_
