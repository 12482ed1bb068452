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

#ifndef ZIPFVOCAB_IO_HPP_
#define ZIPFVOCAB_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace zipfvocab::io {

std::string ReadFile(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a truncated file. The temporary is removed on failure.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view data);

std::string Sha256Hex(std::string_view data);

// Shortest decimal that round-trips to the same double.
std::string FormatDouble(double value);

}  // namespace zipfvocab::io

#endif  // ZIPFVOCAB_IO_HPP_
