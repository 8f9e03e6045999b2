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

#include "airt/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <yaml-cpp/yaml.h>

#include "airt/arff.hpp"
#include "airt/error.hpp"

namespace airt {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

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

std::optional<double> parse_double(const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  // std::from_chars for double needs GCC 11+, which we require anyway.
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    std::string l = lower(t);
    if (l == "inf" || l == "+inf" || l == "infinity")
      return std::numeric_limits<double>::infinity();
    return std::nullopt;
  }
  return v;
}

void check_unique(const std::vector<std::string>& names, const char* what) {
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second)
      throw ConsistencyError("ingest",
                             std::string("duplicate ") + what + " '" + n + "'");
}

bool is_better(double a, double b, bool maximize) {
  return maximize ? a > b : a < b;
}

// Fills NaN cells with the worst value observed on the same instance, or
// drops the instance. `worst_seen` holds per-instance worst values that may
// include penalized values of failed runs.
PerformanceMatrix finish_matrix(Eigen::MatrixXd values,
                                ScenarioDescriptor descriptor,
                                const std::vector<double>& worst_seen,
                                MissingPolicy policy) {
  const bool maximize = descriptor.maximize;
  std::vector<int> keep;
  std::vector<std::string> dropped;
  int imputed = 0;
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    bool any_missing = false;
    double worst = worst_seen.empty() ? kNaN : worst_seen[i];
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      double v = values(i, j);
      if (std::isnan(v)) {
        any_missing = true;
      } else if (std::isnan(worst) || is_better(worst, v, maximize)) {
        worst = v;
      }
    }
    if (!any_missing) {
      keep.push_back(static_cast<int>(i));
      continue;
    }
    if (policy == MissingPolicy::kError)
      throw FormatError("ingest", "missing value for instance '" +
                                      descriptor.instance_ids[i] + "'");
    if (policy == MissingPolicy::kDropInstance || std::isnan(worst) ||
        !std::isfinite(worst)) {
      dropped.push_back(descriptor.instance_ids[i]);
      continue;
    }
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (std::isnan(values(i, j))) {
        values(i, j) = worst;
        ++imputed;
      }
    }
    keep.push_back(static_cast<int>(i));
  }

  PerformanceMatrix m;
  m.values.resize(static_cast<Eigen::Index>(keep.size()), values.cols());
  std::vector<std::string> ids;
  for (size_t r = 0; r < keep.size(); ++r) {
    m.values.row(static_cast<Eigen::Index>(r)) = values.row(keep[r]);
    ids.push_back(descriptor.instance_ids[keep[r]]);
  }
  descriptor.instance_ids = std::move(ids);
  m.descriptor = std::move(descriptor);
  m.imputed_cells = imputed;
  m.dropped_instances = std::move(dropped);
  if (!m.values.allFinite())
    throw FormatError("ingest", "performance matrix contains non-finite values");
  if (m.instances() < 2 || m.algorithms() < 2)
    throw FormatError("ingest",
                      "need at least 2 instances and 2 algorithms, got " +
                          std::to_string(m.instances()) + "x" +
                          std::to_string(m.algorithms()));
  return m;
}

// Scalar or first element of a sequence.
std::string first_scalar(const YAML::Node& node) {
  if (!node) return {};
  if (node.IsSequence()) return node.size() ? node[0].as<std::string>() : "";
  if (node.IsScalar()) {
    auto s = node.as<std::string>();
    auto comma = s.find(',');
    return trim(comma == std::string::npos ? s : s.substr(0, comma));
  }
  return {};
}

std::vector<std::string> name_list(const YAML::Node& node) {
  std::vector<std::string> out;
  if (!node) return out;
  if (node.IsSequence()) {
    for (const auto& n : node) out.push_back(trim(n.as<std::string>()));
  } else if (node.IsMap()) {
    for (const auto& kv : node) out.push_back(trim(kv.first.as<std::string>()));
  } else if (node.IsScalar()) {
    std::stringstream ss(node.as<std::string>());
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trim(item).empty()) out.push_back(trim(item));
  }
  return out;
}

struct Description {
  std::string name;
  std::string measurement;
  bool maximize = false;
  std::vector<std::string> algorithms;  // empty if the file does not list them
};

Description read_description(const std::filesystem::path& path) {
  YAML::Node doc;
  try {
    doc = YAML::LoadFile(path.string());
  } catch (const YAML::BadFile&) {
    throw LoadError("ingest", "cannot open " + path.string());
  } catch (const YAML::Exception& e) {
    throw ParseError("ingest", path.filename().string() + ": " + e.what(),
                     e.mark.line + 1, e.mark.column + 1);
  }
  if (!doc.IsMap())
    throw ParseError("ingest",
                     path.filename().string() + ": expected key/value pairs",
                     1);
  Description d;
  d.name = first_scalar(doc["scenario_id"]);
  d.measurement = first_scalar(doc["performance_measures"]);
  std::string max = lower(first_scalar(doc["maximize"]));
  d.maximize = (max == "true" || max == "yes");
  if (doc["metainfo_algorithms"]) {
    d.algorithms = name_list(doc["metainfo_algorithms"]);
  } else {
    d.algorithms = name_list(doc["algorithms_deterministic"]);
    auto stochastic = name_list(doc["algorithms_stochastic"]);
    d.algorithms.insert(d.algorithms.end(), stochastic.begin(),
                        stochastic.end());
  }
  if (d.measurement.empty())
    throw ParseError("ingest",
                     path.filename().string() +
                         ": no performance_measures entry",
                     1);
  return d;
}

}  // namespace

int PerformanceMatrix::algorithm_index(const std::string& name) const {
  const auto& names = descriptor.algorithm_names;
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    throw LookupError("portfolio", "unknown algorithm '" + name + "'");
  return static_cast<int>(it - names.begin());
}

PerformanceMatrix PerformanceMatrix::select_rows(
    const std::vector<int>& rows) const {
  PerformanceMatrix out;
  out.descriptor = descriptor;
  out.descriptor.instance_ids.clear();
  out.values.resize(static_cast<Eigen::Index>(rows.size()), values.cols());
  for (size_t r = 0; r < rows.size(); ++r) {
    out.values.row(static_cast<Eigen::Index>(r)) = values.row(rows[r]);
    out.descriptor.instance_ids.push_back(descriptor.instance_ids[rows[r]]);
  }
  return out;
}

Eigen::VectorXd PerformanceMatrix::best_per_instance() const {
  return descriptor.maximize ? Eigen::VectorXd(values.rowwise().maxCoeff())
                             : Eigen::VectorXd(values.rowwise().minCoeff());
}

const char* to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::kIdentity:
      return "identity";
    case TransformKind::kReciprocal:
      return "reciprocal";
    case TransformKind::kNegateMinMax:
      return "negate_minmax";
  }
  return "?";
}

TransformKind transform_kind_from_string(const std::string& name) {
  if (name == "identity") return TransformKind::kIdentity;
  if (name == "reciprocal") return TransformKind::kReciprocal;
  if (name == "negate_minmax") return TransformKind::kNegateMinMax;
  throw ConfigError("ingest", "unknown transform '" + name + "'");
}

TransformConfig default_transform(const ScenarioDescriptor& descriptor) {
  TransformConfig cfg;
  cfg.kind = descriptor.maximize ? TransformKind::kIdentity
                                 : TransformKind::kNegateMinMax;
  return cfg;
}

TransformedResponses TransformedResponses::from_logits(
    const Eigen::MatrixXd& z) {
  TransformedResponses t;
  t.z = z;
  t.x = z.unaryExpr([](double v) { return inverse_logit(v); });
  return t;
}

PerformanceMatrix load_scenario(const std::filesystem::path& dir,
                                const LoadOptions& options) {
  const auto desc_path = dir / "description.txt";
  const auto runs_path = dir / "algorithm_runs.arff";
  if (!std::filesystem::exists(desc_path))
    throw LoadError("ingest", "missing scenario file " + desc_path.string());
  if (!std::filesystem::exists(runs_path))
    throw LoadError("ingest", "missing scenario file " + runs_path.string());

  Description desc = read_description(desc_path);
  std::string measure =
      options.measurement.empty() ? desc.measurement : options.measurement;

  arff::Table runs = arff::read_file(runs_path);
  auto col_instance = runs.find("instance_id");
  auto col_algorithm = runs.find("algorithm");
  auto col_value = runs.find(measure);
  auto col_status = runs.find("runstatus");
  if (!col_instance || !col_algorithm)
    throw ConsistencyError("ingest",
                           "algorithm_runs.arff lacks instance_id/algorithm");
  if (!col_value)
    throw ConsistencyError("ingest", "algorithm_runs.arff has no column '" +
                                         measure + "'");

  std::vector<std::string> instances, algorithms;
  std::unordered_map<std::string, int> inst_index, algo_index;
  // Per (instance, algorithm): sum and count of ok runs.
  std::map<std::pair<int, int>, std::pair<double, int>> acc;
  std::map<int, double> worst_failed;

  for (const auto& row : runs.rows) {
    const auto& inst_cell = row.cells[*col_instance];
    const auto& algo_cell = row.cells[*col_algorithm];
    if (!inst_cell || !algo_cell)
      throw ParseError("ingest", "algorithm_runs.arff: missing id", row.line);
    auto [iit, inew] = inst_index.try_emplace(
        *inst_cell, static_cast<int>(instances.size()));
    if (inew) instances.push_back(*inst_cell);
    auto [ait, anew] = algo_index.try_emplace(
        *algo_cell, static_cast<int>(algorithms.size()));
    if (anew) algorithms.push_back(*algo_cell);

    std::optional<double> value;
    if (const auto& cell = row.cells[*col_value]; cell) {
      value = parse_double(*cell);
      if (!value)
        throw ParseError("ingest",
                         "algorithm_runs.arff: non-numeric performance '" +
                             *cell + "'",
                         row.line, *col_value + 1);
    }
    bool ok = true;
    if (col_status) {
      const auto& st = row.cells[*col_status];
      ok = st && lower(*st) == "ok";
    }
    auto key = std::make_pair(iit->second, ait->second);
    auto& slot = acc[key];
    if (ok && value && std::isfinite(*value)) {
      slot.first += *value;
      slot.second += 1;
    } else if (value && std::isfinite(*value)) {
      auto [wit, wnew] = worst_failed.try_emplace(iit->second, *value);
      if (!wnew && is_better(wit->second, *value, desc.maximize))
        wit->second = *value;
    }
  }

  if (!desc.algorithms.empty()) {
    std::set<std::string> declared(desc.algorithms.begin(),
                                   desc.algorithms.end());
    std::set<std::string> seen(algorithms.begin(), algorithms.end());
    if (declared != seen) {
      std::string detail;
      for (const auto& a : declared)
        if (!seen.count(a)) detail += " declared-only:" + a;
      for (const auto& a : seen)
        if (!declared.count(a)) detail += " runs-only:" + a;
      throw ConsistencyError(
          "ingest", "algorithm sets differ between description.txt and "
                    "algorithm_runs.arff:" + detail);
    }
  }

  Eigen::MatrixXd values = Eigen::MatrixXd::Constant(
      static_cast<Eigen::Index>(instances.size()),
      static_cast<Eigen::Index>(algorithms.size()), kNaN);
  for (const auto& [key, sum_count] : acc)
    if (sum_count.second > 0)
      values(key.first, key.second) = sum_count.first / sum_count.second;

  std::vector<double> worst(instances.size(), kNaN);
  for (const auto& [i, w] : worst_failed) worst[i] = w;

  ScenarioDescriptor d;
  d.name = desc.name.empty() ? dir.filename().string() : desc.name;
  d.measurement = measure;
  d.maximize = desc.maximize;
  d.algorithm_names = std::move(algorithms);
  d.instance_ids = std::move(instances);
  check_unique(d.algorithm_names, "algorithm");
  return finish_matrix(std::move(values), std::move(d), worst,
                       options.missing);
}

PerformanceMatrix load_csv(const std::filesystem::path& path, bool maximize,
                           MissingPolicy missing) {
  std::ifstream in(path);
  if (!in) throw LoadError("ingest", "cannot open " + path.string());
  const std::string source = path.filename().string();
  std::string line;
  long line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    header = arff::split_fields(line, line_no, source);
    break;
  }
  if (header.size() < 2)
    throw FormatError("ingest", source + ": header needs an id column and "
                                         "at least one algorithm");

  ScenarioDescriptor d;
  d.name = path.stem().string();
  d.measurement = maximize ? "performance" : "cost";
  d.maximize = maximize;
  d.algorithm_names.assign(header.begin() + 1, header.end());
  check_unique(d.algorithm_names, "algorithm");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = arff::split_fields(line, line_no, source);
    if (fields.size() != header.size())
      throw FormatError("ingest", source + ": line " + std::to_string(line_no) +
                                      " has " + std::to_string(fields.size()) +
                                      " fields, expected " +
                                      std::to_string(header.size()));
    d.instance_ids.push_back(fields[0]);
    std::vector<double> row;
    for (size_t c = 1; c < fields.size(); ++c) {
      std::string cell = trim(fields[c]);
      if (cell.empty() || cell == "NA" || cell == "?") {
        if (missing == MissingPolicy::kError)
          throw ParseError("ingest",
                           source + ": empty cell in column '" + header[c] +
                               "'",
                           line_no, static_cast<long>(c + 1));
        row.push_back(kNaN);
        continue;
      }
      auto v = parse_double(cell);
      if (!v || !std::isfinite(*v))
        throw ParseError("ingest",
                         source + ": non-numeric value '" + cell +
                             "' in column '" + header[c] + "'",
                         line_no, static_cast<long>(c + 1));
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  check_unique(d.instance_ids, "instance");

  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(d.algorithm_names.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  return finish_matrix(std::move(values), std::move(d), {}, missing);
}

void write_csv(const PerformanceMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw LoadError("ingest", "cannot write " + path.string());
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"'") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q.push_back('\\');
      q.push_back(c);
    }
    return q + "\"";
  };
  out << "instance_id";
  for (const auto& a : m.descriptor.algorithm_names) out << ',' << quote(a);
  out << '\n';
  out.precision(17);
  for (int i = 0; i < m.instances(); ++i) {
    out << quote(m.descriptor.instance_ids[i]);
    for (int j = 0; j < m.algorithms(); ++j) out << ',' << m.values(i, j);
    out << '\n';
  }
}

TransformedResponses transform_performance(const PerformanceMatrix& m,
                                           const TransformConfig& cfg) {
  const double eps = cfg.clip_epsilon;
  if (!(eps > 0.0 && eps < 0.5))
    throw ConfigError("ingest", "clip_epsilon must lie in (0, 0.5)");
  TransformedResponses out;
  out.transform = cfg;
  const Eigen::MatrixXd& y = m.values;
  Eigen::MatrixXd x;

  switch (cfg.kind) {
    case TransformKind::kIdentity: {
      if (!m.descriptor.maximize)
        throw DomainError("ingest",
                          "identity transform needs a maximized measure; use "
                          "negate_minmax or reciprocal");
      if (y.minCoeff() < 0.0 || y.maxCoeff() > 1.0)
        throw DomainError("ingest",
                          "identity transform needs values in [0, 1]");
      x = y;
      break;
    }
    case TransformKind::kReciprocal: {
      if (m.descriptor.maximize)
        throw DomainError("ingest",
                          "reciprocal transform applies to minimized measures");
      if (y.minCoeff() <= 0.0)
        throw DomainError("ingest",
                          "reciprocal transform needs strictly positive values");
      Eigen::MatrixXd r = y.cwiseInverse();
      out.scale = r.maxCoeff();
      x = r / out.scale;
      break;
    }
    case TransformKind::kNegateMinMax: {
      double lo = y.minCoeff(), hi = y.maxCoeff();
      if (!(hi > lo))
        throw DegenerateError("ingest",
                              "constant performance matrix cannot be rescaled");
      if (m.descriptor.maximize) {
        out.offset = lo;
        out.scale = hi - lo;
        x = (y.array() - lo) / (hi - lo);
      } else {
        out.offset = -hi;
        out.scale = hi - lo;
        x = (hi - y.array()) / (hi - lo);
      }
      break;
    }
  }
  out.x = x.cwiseMax(eps).cwiseMin(1.0 - eps);
  out.z = out.x.unaryExpr([](double v) { return logit(v); });
  return out;
}

}  // namespace airt
