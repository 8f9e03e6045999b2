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

#ifndef AIRT_INGEST_HPP_
#define AIRT_INGEST_HPP_

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace airt {

struct ScenarioDescriptor {
  std::string name;
  std::string measurement;
  bool maximize = true;
  std::vector<std::string> algorithm_names;
  std::vector<std::string> instance_ids;
};

// N instances x n algorithms of raw performance in original units.
struct PerformanceMatrix {
  Eigen::MatrixXd values;
  ScenarioDescriptor descriptor;
  // Number of cells filled by imputation, and instances dropped because no
  // algorithm produced a usable value.
  int imputed_cells = 0;
  std::vector<std::string> dropped_instances;

  int instances() const { return static_cast<int>(values.rows()); }
  int algorithms() const { return static_cast<int>(values.cols()); }

  // Index of `name` in the algorithm list; throws LookupError.
  int algorithm_index(const std::string& name) const;

  // Rows `rows` of this matrix, descriptor updated accordingly.
  PerformanceMatrix select_rows(const std::vector<int>& rows) const;

  // Per-instance best value under the objective direction.
  Eigen::VectorXd best_per_instance() const;
};

enum class MissingPolicy {
  kImputeWorst,  // fill with the worst value observed for that instance
  kDropInstance,
  kError,
};

enum class TransformKind { kIdentity, kReciprocal, kNegateMinMax };

const char* to_string(TransformKind kind);
TransformKind transform_kind_from_string(const std::string& name);

struct TransformConfig {
  TransformKind kind = TransformKind::kIdentity;
  double clip_epsilon = 0.01;
};

// The default transform for a scenario: identity for maximized measures,
// negate-and-rescale for runtimes.
TransformConfig default_transform(const ScenarioDescriptor& descriptor);

// x in [eps, 1 - eps] (higher is better) and its logit z.
struct TransformedResponses {
  Eigen::MatrixXd x;
  Eigen::MatrixXd z;
  TransformConfig transform;
  // Scale applied before clipping: x = (y - offset) / scale for identity and
  // negate_minmax (with y negated), x = (1 / y) / scale for reciprocal.
  double offset = 0.0;
  double scale = 1.0;

  int instances() const { return static_cast<int>(z.rows()); }
  int algorithms() const { return static_cast<int>(z.cols()); }

  // Wraps an already-logit response matrix (used for synthetic data).
  static TransformedResponses from_logits(const Eigen::MatrixXd& z);
};

struct LoadOptions {
  MissingPolicy missing = MissingPolicy::kImputeWorst;
  // Performance column to read from algorithm_runs; empty means the first
  // measure named in the description file.
  std::string measurement;
};

// Reads an ASlib scenario directory (description.txt + algorithm_runs.arff).
PerformanceMatrix load_scenario(const std::filesystem::path& dir,
                                const LoadOptions& options = {});

// Reads a CSV with a header row of algorithm names and instance ids in the
// first column.
PerformanceMatrix load_csv(const std::filesystem::path& path, bool maximize,
                           MissingPolicy missing = MissingPolicy::kError);

void write_csv(const PerformanceMatrix& m, const std::filesystem::path& path);

TransformedResponses transform_performance(const PerformanceMatrix& m,
                                           const TransformConfig& cfg);

inline double logit(double x) { return std::log(x / (1.0 - x)); }
inline double inverse_logit(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace airt

#endif  // AIRT_INGEST_HPP_
