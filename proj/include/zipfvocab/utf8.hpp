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

#ifndef ZIPFVOCAB_UTF8_HPP_
#define ZIPFVOCAB_UTF8_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace zipfvocab::utf8 {

// Returns true when `text` is well-formed UTF-8 (no overlongs, no surrogates).
bool IsValid(std::string_view text);

// Splits valid UTF-8 into one string per code point.
std::vector<std::string> SplitCodePoints(std::string_view text);

// Number of code points in valid UTF-8.
std::size_t CodePointCount(std::string_view text);

// Decodes the code point starting at `pos` and advances `pos` past it.
// Input must be valid UTF-8.
char32_t Next(std::string_view text, std::size_t& pos);

void Append(std::string& out, char32_t cp);

// Unicode White_Space property.
bool IsWhitespace(char32_t cp);

// Canonical composition (NFC). Input must be valid UTF-8.
std::string NormalizeNfc(std::string_view text);

}  // namespace zipfvocab::utf8

#endif  // ZIPFVOCAB_UTF8_HPP_
