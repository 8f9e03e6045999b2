// Copyright 2026 The airt-cpp Authors
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

#ifndef AIRT_ARFF_HPP_
#define AIRT_ARFF_HPP_

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace airt::arff {

enum class AttributeType { kNumeric, kString, kNominal };

struct Attribute {
  std::string name;
  AttributeType type = AttributeType::kNumeric;
  std::vector<std::string> nominal_values;
};

// A cell is either missing ('?') or the raw unquoted token.
using Cell = std::optional<std::string>;

struct Row {
  std::vector<Cell> cells;
  long line = 0;
};

// The subset of ARFF used by ASlib: @relation, @attribute
// (numeric/real/integer, string, {nominal}), and comma-separated @data rows
// with '?' for missing values. Sparse rows are not supported.
struct Table {
  std::string relation;
  std::vector<Attribute> attributes;
  std::vector<Row> rows;

  // Column index for `name` (case-insensitive), if present.
  std::optional<int> find(const std::string& name) const;
};

Table read(std::istream& in, const std::string& source = "<stream>");
Table read_file(const std::filesystem::path& path);

// Splits one data line on commas, honouring single and double quotes and
// backslash escapes inside quotes.
std::vector<std::string> split_fields(const std::string& line, long line_no,
                                      const std::string& source);

}  // namespace airt::arff

#endif  // AIRT_ARFF_HPP_
