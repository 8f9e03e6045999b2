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

#ifndef AIRT_METRICS_HPP_
#define AIRT_METRICS_HPP_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "airt/crm.hpp"

namespace airt::metrics {

struct AlgorithmMetrics {
  std::string algorithm;
  double consistency = 0.0;  // 1/|alpha|; +inf for a degenerate item
  bool anomalous = false;    // alpha < 0
  double difficulty_limit = 0.0;  // -beta; NaN for a degenerate item
  bool degenerate = false;
  std::vector<std::string> warnings;
};

struct DatasetDifficulty {
  Eigen::VectorXd delta;
};

std::vector<AlgorithmMetrics> algorithm_metrics(
    const crm::ItemParameters& params,
    const std::vector<std::string>& names = {},
    const std::vector<bool>& degenerate = {});

// Metrics for a fitted model, carrying its fit warnings per algorithm.
std::vector<AlgorithmMetrics> algorithm_metrics(const crm::CrmModel& model);

DatasetDifficulty dataset_difficulty(const Eigen::VectorXd& theta);

}  // namespace airt::metrics

#endif  // AIRT_METRICS_HPP_
