// Copyright 2026 The qbayes Authors
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

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qbayes {

inline constexpr int kSchemaVersion = 1;

/// 17 significant digits, so the text reads back to the identical double.
std::string format_double(double v);

/// Headered CSV writer. Every file starts with '#'-prefixed lines carrying the
/// schema name and version, the unit convention, the master seed and the full
/// resolved configuration, followed by a single column-name row.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::string_view schema, std::string_view config_text,
            std::uint64_t seed, std::span<const std::string> extra_header,
            std::span<const std::string> columns);

  /// Empty strings produce empty fields.
  void row(std::span<const std::string> fields);
  void close();

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t n_columns_;
};

}  // namespace qbayes
