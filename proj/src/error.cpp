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


#include "zipfvocab/error.hpp"

namespace zipfvocab {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnreadableFile: return "unreadable-file";
    case ErrorCode::kInvalidEncoding: return "invalid-encoding";
    case ErrorCode::kEmptyCorpus: return "empty-corpus";
    case ErrorCode::kReservedCharacter: return "reserved-character";
    case ErrorCode::kRecordTooLong: return "record-too-long";
    case ErrorCode::kInvalidTarget: return "invalid-target";
    case ErrorCode::kInconsistentState: return "inconsistent-state";
    case ErrorCode::kInvalidId: return "invalid-id";
    case ErrorCode::kEmptyTable: return "empty-table";
    case ErrorCode::kInsufficientPoints: return "insufficient-points";
    case ErrorCode::kUnsupportedMode: return "unsupported-mode";
    case ErrorCode::kModeMismatch: return "mode-mismatch";
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kInvalidVocabulary: return "invalid-vocabulary";
    case ErrorCode::kIoError: return "io-error";
  }
  return "unknown";
}

}  // namespace zipfvocab
