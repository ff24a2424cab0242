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

#include "qbayes/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "qbayes/errors.hpp"
#include "qbayes/params.hpp"

namespace qbayes {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, std::string_view schema,
                     std::string_view config_text, std::uint64_t seed,
                     std::span<const std::string> extra_header,
                     std::span<const std::string> columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), n_columns_(columns.size()) {
  if (!out_) throw IoError("cannot open " + path + " for writing");
  out_ << "# schema: " << schema << " v" << kSchemaVersion << '\n';
  out_ << "# units: " << kUnitConvention << '\n';
  out_ << "# seed: " << seed << '\n';
  for (const auto& line : extra_header) out_ << "# " << line << '\n';
  out_ << "# config:\n";
  std::size_t start = 0;
  while (start < config_text.size()) {
    auto end = config_text.find('\n', start);
    if (end == std::string_view::npos) end = config_text.size();
    out_ << "#   " << config_text.substr(start, end - start) << '\n';
    start = end + 1;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out_ << (i ? "," : "") << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::row(std::span<const std::string> fields) {
  if (fields.size() != n_columns_) throw IoError("column count mismatch writing " + path_);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    out_ << (i ? "," : "") << fields[i];
  }
  out_ << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw IoError("error writing " + path_);
}

}  // namespace qbayes
