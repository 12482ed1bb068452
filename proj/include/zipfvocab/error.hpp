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

#ifndef ZIPFVOCAB_ERROR_HPP_
#define ZIPFVOCAB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace zipfvocab {

enum class ErrorCode {
  kUnreadableFile,
  kInvalidEncoding,
  kEmptyCorpus,
  kReservedCharacter,
  kRecordTooLong,
  kInvalidTarget,
  kInconsistentState,
  kInvalidId,
  kEmptyTable,
  kInsufficientPoints,
  kUnsupportedMode,
  kModeMismatch,
  kInvalidConfig,
  kInvalidVocabulary,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure surfaced by the library is an Error carrying one of the codes
// above; callers that care about the category switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zipfvocab

#endif  // ZIPFVOCAB_ERROR_HPP_
