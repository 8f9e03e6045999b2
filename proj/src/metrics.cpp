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

#include "airt/metrics.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "airt/error.hpp"

namespace airt::metrics {

std::vector<AlgorithmMetrics> algorithm_metrics(
    const crm::ItemParameters& params, const std::vector<std::string>& names,
    const std::vector<bool>& degenerate) {
  std::vector<AlgorithmMetrics> out;
  out.reserve(params.size());
  for (int j = 0; j < params.size(); ++j) {
    AlgorithmMetrics m;
    m.algorithm =
        j < static_cast<int>(names.size()) ? names[j] : std::to_string(j);
    m.degenerate = (j < static_cast<int>(degenerate.size()) && degenerate[j]) ||
                   params.alpha[j] == 0.0;
    if (m.degenerate) {
      m.consistency = std::numeric_limits<double>::infinity();
      m.difficulty_limit = std::numeric_limits<double>::quiet_NaN();
      m.warnings.push_back("degenerate: constant performance");
    } else {
      m.consistency = 1.0 / std::abs(params.alpha[j]);
      m.anomalous = params.alpha[j] < 0.0;
      m.difficulty_limit = -params.beta[j];
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<AlgorithmMetrics> algorithm_metrics(const crm::CrmModel& model) {
  auto out =
      algorithm_metrics(model.params, model.algorithm_names, model.degenerate);
  // One entry per distinct message; floors repeat every cycle.
  std::vector<std::set<std::string>> seen(out.size());
  for (const auto& w : model.warnings) {
    if (w.item < 0 || w.item >= static_cast<int>(out.size())) continue;
    if (model.degenerate[w.item]) continue;
    std::string msg = w.message;
    const std::string prefix = out[w.item].algorithm + ": ";
    if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
    if (auto pos = msg.find("radicand"); pos != std::string::npos)
      msg = "discrimination radicand floored";
    if (seen[w.item].insert(msg).second) out[w.item].warnings.push_back(msg);
  }
  return out;
}

DatasetDifficulty dataset_difficulty(const Eigen::VectorXd& theta) {
  if (!theta.allFinite())
    throw DomainError("metrics", "latent trait contains non-finite values");
  return {-theta};
}

}  // namespace airt::metrics
