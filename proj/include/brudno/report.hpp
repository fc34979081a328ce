// Copyright 2026 The brudno Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Output helpers: RFC-4180 CSV tables, minimal SVG line charts and the
// git-style content hash used in run summaries.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace brudno::report {

// Shortest round-trip decimal; "inf", "-inf" and "nan" for non-finite values.
std::string number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header = {}) : header_(std::move(header)) {}

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
  // Throws InvalidInput when the row width differs from the header.
  void add_row(std::vector<std::string> row);
  // CRLF line endings, fields quoted when they contain , " CR or LF.
  std::string render() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  // Optional horizontal reference line.
  std::vector<std::pair<std::string, double>> references;
};

std::string render_svg(const Chart& chart);

// SHA-1 of "blob <size>\0" + content, lowercase hex.
std::string git_blob_hash(std::string_view content);

}  // namespace brudno::report
