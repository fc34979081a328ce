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

#include <cmath>
#include <limits>

#include "brudno/error.hpp"
#include "brudno/report.hpp"
#include "doctest.h"

using namespace brudno::report;

TEST_CASE("numbers") {
  CHECK(number(0.1) == "0.1");
  CHECK(number(2.5) == "2.5");
  CHECK(number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(number(std::nan("")) == "nan");
  CHECK(std::stod(number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("CSV rendering") {
  CsvTable t({"a", "b"});
  t.add_row({"1", "x,y"});
  t.add_row({"say \"hi\"", "line\nbreak"});
  CHECK(t.render() == "a,b\r\n1,\"x,y\"\r\n\"say \"\"hi\"\"\",\"line\nbreak\"\r\n");
  CHECK_THROWS_AS(t.add_row({"only one"}), brudno::Error);
}

TEST_CASE("SVG charts") {
  Chart c;
  c.title = "rate <n>";
  c.x_label = "n";
  c.y_label = "bits";
  c.series.push_back({"G_n / n", {{8, 0.95}, {64, 0.91}, {512, 0.89}}});
  c.references.push_back({"h", 0.8813});
  const std::string svg = render_svg(c);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("rate &lt;n&gt;") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);

  Chart empty;
  CHECK(render_svg(empty).find("</svg>") != std::string::npos);
}

TEST_CASE("git blob hash") {
  CHECK(git_blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}
