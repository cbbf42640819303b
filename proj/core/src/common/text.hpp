// Copyright 2026 The revcor Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace revcor::detail {

// RFC 4180 quoting, only when the field needs it.
std::string csv_escape(std::string_view field);

// Splits one CSV record; handles quoted fields and doubled quotes.
std::vector<std::string> parse_csv_line(std::string_view line);

// Reads a CSV file into records, skipping blank lines.
std::vector<std::vector<std::string>> read_csv_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

// Write to a sibling temp file, fsync, then rename over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

double parse_double(std::string_view text, std::string_view what);
std::size_t parse_index(std::string_view text, std::string_view what);

}  // namespace revcor::detail
