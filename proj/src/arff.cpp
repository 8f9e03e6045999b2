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

#include "airt/arff.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "airt/error.hpp"

namespace airt::arff {
namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Reads a possibly quoted token starting at `pos`, advancing past it.
std::string next_token(const std::string& s, size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
    ++pos;
  if (pos >= s.size()) return {};
  std::string out;
  char q = s[pos];
  if (q == '\'' || q == '"') {
    ++pos;
    while (pos < s.size() && s[pos] != q) {
      if (s[pos] == '\\' && pos + 1 < s.size()) ++pos;
      out.push_back(s[pos++]);
    }
    ++pos;
    return out;
  }
  while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
         s[pos] != '{')
    out.push_back(s[pos++]);
  return out;
}

Attribute parse_attribute(const std::string& rest, long line_no,
                          const std::string& source) {
  size_t pos = 0;
  Attribute attr;
  attr.name = next_token(rest, pos);
  if (attr.name.empty())
    throw ParseError("ingest", source + ": @attribute without a name", line_no);
  std::string spec = trim(rest.substr(std::min(pos, rest.size())));
  if (!spec.empty() && spec.front() == '{') {
    auto close = spec.rfind('}');
    if (close == std::string::npos)
      throw ParseError("ingest", source + ": unterminated nominal list",
                       line_no);
    attr.type = AttributeType::kNominal;
    for (auto& v : split_fields(spec.substr(1, close - 1), line_no, source))
      attr.nominal_values.push_back(v);
    return attr;
  }
  std::string t = lower(spec);
  if (t == "numeric" || t == "real" || t == "integer") {
    attr.type = AttributeType::kNumeric;
  } else if (t == "string") {
    attr.type = AttributeType::kString;
  } else {
    throw ParseError("ingest",
                     source + ": unsupported attribute type '" + spec + "'",
                     line_no);
  }
  return attr;
}

}  // namespace

std::optional<int> Table::find(const std::string& name) const {
  auto key = lower(name);
  for (size_t i = 0; i < attributes.size(); ++i)
    if (lower(attributes[i].name) == key) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<std::string> split_fields(const std::string& line, long line_no,
                                      const std::string& source) {
  std::vector<std::string> out;
  std::string cur;
  char quote = 0;
  bool quoted_field = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quote) {
      if (c == '\\' && i + 1 < line.size()) {
        cur.push_back(line[++i]);
      } else if (c == quote) {
        quote = 0;
      } else {
        cur.push_back(c);
      }
    } else if ((c == '\'' || c == '"') && trim(cur).empty()) {
      cur.clear();
      quote = c;
      quoted_field = true;
    } else if (c == ',') {
      out.push_back(quoted_field ? cur : trim(cur));
      cur.clear();
      quoted_field = false;
    } else if (!(quoted_field && (c == ' ' || c == '\t'))) {
      cur.push_back(c);
    }
  }
  if (quote)
    throw ParseError("ingest", source + ": unterminated quote", line_no);
  out.push_back(quoted_field ? cur : trim(cur));
  return out;
}

Table read(std::istream& in, const std::string& source) {
  Table table;
  std::string raw;
  long line_no = 0;
  bool in_data = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string line = trim(raw);
    if (line.empty() || line[0] == '%') continue;
    if (!in_data) {
      if (line[0] != '@')
        throw ParseError("ingest", source + ": expected a header directive",
                         line_no);
      auto space = line.find_first_of(" \t");
      std::string directive = lower(line.substr(0, space));
      std::string rest =
          space == std::string::npos ? std::string() : trim(line.substr(space));
      if (directive == "@relation") {
        size_t pos = 0;
        table.relation = next_token(rest, pos);
      } else if (directive == "@attribute") {
        table.attributes.push_back(parse_attribute(rest, line_no, source));
      } else if (directive == "@data") {
        in_data = true;
      } else {
        throw ParseError("ingest",
                         source + ": unknown directive '" + directive + "'",
                         line_no);
      }
      continue;
    }
    if (line[0] == '{')
      throw ParseError("ingest", source + ": sparse ARFF rows are unsupported",
                       line_no);
    auto fields = split_fields(line, line_no, source);
    if (fields.size() != table.attributes.size())
      throw ParseError("ingest",
                       source + ": expected " +
                           std::to_string(table.attributes.size()) +
                           " values, found " + std::to_string(fields.size()),
                       line_no);
    Row row;
    row.line = line_no;
    row.cells.reserve(fields.size());
    for (auto& f : fields) {
      if (f == "?")
        row.cells.emplace_back(std::nullopt);
      else
        row.cells.emplace_back(std::move(f));
    }
    table.rows.push_back(std::move(row));
  }
  if (!in_data)
    throw ParseError("ingest", source + ": missing @data section", line_no);
  return table;
}

Table read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("ingest", "cannot open " + path.string());
  return read(in, path.filename().string());
}

}  // namespace airt::arff
