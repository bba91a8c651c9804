// Copyright 2026 The foil-pinn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace foil {

/// Write to a temporary sibling and rename over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

/// Shortest-safe decimal form with 17 significant digits.
std::string format_double(double value);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// "# foil-pinn <kind> v<version>, key=value, key=value"
std::string artifact_header(std::string_view kind, int version,
                            const std::vector<std::pair<std::string, std::string>>& fields);

struct ArtifactHeader {
    std::string kind;
    int version = 0;
    std::map<std::string, std::string> fields;
};

/// Parses a line produced by artifact_header; returns nullopt-like empty
/// kind when the line is not a foil-pinn header.
ArtifactHeader parse_artifact_header(std::string_view line);

/// Comma-separated table with a header row. Lines starting with '#' before
/// the header are collected as comments.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<long> line_numbers;  ///< 1-based source line of each row

    /// Index of a column, or -1.
    int column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text);

/// Strict number parse ("nan"/"inf" are accepted and returned as such so the
/// caller can report them).
bool parse_double(std::string_view text, double& out);

}  // namespace foil
