/*
 * Copyright 2026 The skillgrade Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

// Small string and file helpers shared by the pipeline stages.
namespace skillgrade::text {

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
/// Splits on `sep`, trims each piece and drops empty pieces.
std::vector<std::string> split_nonempty(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
/// Splits on '\n', stripping a trailing '\r' from each line.
std::vector<std::string> lines(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with_icase(std::string_view s, std::string_view suffix);

bool is_valid_utf8(std::string_view s);

/// 64-bit FNV-1a rendered as 16 lowercase hex digits.
std::string digest_hex(std::string_view s);

std::string zero_pad(std::size_t value, int width);

/// Shortest decimal rendering that round-trips, with a ".0" suffix for
/// integral values ("24.0", "7.5").
std::string format_number(double value);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`, so a
/// reader never observes a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Current UTC time as ISO-8601 ("2026-10-15T12:00:00Z").
std::string utc_timestamp();

}  // namespace skillgrade::text
