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


#ifndef AIRT_REPORT_HPP_
#define AIRT_REPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "airt/crm.hpp"
#include "airt/goodness.hpp"
#include "airt/metrics.hpp"
#include "airt/portfolio.hpp"
#include "airt/trait_analysis.hpp"

namespace airt::report {

namespace fs = std::filesystem;

// Shortest round-trippable decimal; "NaN", "Inf", "-Inf" for non-finite.
std::string format_double(double v);

// Model document with stable keys. Doubles round-trip exactly.
std::string model_to_json(const crm::CrmModel& model);
crm::CrmModel model_from_json(const std::string& text);
void save_model(const crm::CrmModel& model, const fs::path& path);
crm::CrmModel load_model(const fs::path& path);

// Machine-readable error document: {"error": {module, kind, message, ...}}.
std::string error_json(const std::exception& e);

// Each writer returns the paths it created, in creation order.
using Written = std::vector<fs::path>;

Written write_loglik_trace(const crm::CrmModel& model, const fs::path& path);

Written write_metrics(const std::vector<metrics::AlgorithmMetrics>& rows,
                      const fs::path& dir);
Written write_difficulty(const metrics::DatasetDifficulty& delta,
                         const std::vector<std::string>& instance_ids,
                         const fs::path& path);

// Curves as CSV (grid x algorithm) plus an SVG line chart.
Written write_curves(const trait::TraitCurveSet& curves, const fs::path& dir);

// `tag` distinguishes reports for several epsilons, e.g. "eps0.01".
Written write_strengths(const trait::StrengthReport& report,
                        const trait::TraitCurveSet& curves,
                        const std::string& tag, const fs::path& dir);
Written write_lto_table(const std::vector<trait::StrengthReport>& reports,
                        const fs::path& path);

Written write_goodness(const goodness::GoodnessReport& report,
                       const fs::path& dir);

Written write_heatmap(const std::string& algorithm,
                      const std::vector<double>& z_grid,
                      const std::vector<double>& theta_grid,
                      const Eigen::MatrixXd& density, const fs::path& dir);

Written write_comparison(const portfolio::PortfolioComparison& cmp,
                         const fs::path& dir);

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const fs::path& path);

// manifest.json listing every artifact (relative to `dir`) with size and hash.
fs::path write_manifest(const Written& files, const fs::path& dir);

}  // namespace airt::report

#endif  // AIRT_REPORT_HPP_
