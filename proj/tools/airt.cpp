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


// airt: command-line driver for the AIRT pipeline.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "airt/crm.hpp"
#include "airt/error.hpp"
#include "airt/goodness.hpp"
#include "airt/ingest.hpp"
#include "airt/metrics.hpp"
#include "airt/portfolio.hpp"
#include "airt/report.hpp"
#include "airt/trait_analysis.hpp"

namespace fs = std::filesystem;
using namespace airt;

namespace {

struct RunConfig {
  std::string input;
  std::string input_kind = "auto";  // auto | scenario | csv
  std::string objective = "max";    // csv only
  std::string measurement;
  std::string missing = "impute_worst";
  std::string transform;  // empty: scenario default
  double clip_epsilon = 0.01;
  double prior_mu = 0.0;
  double prior_sigma = 1.0;
  int max_cycles = 200;
  double tolerance = 1e-4;
  std::vector<double> epsilons{0.0, 0.01, 0.05};
  int folds = 10;
  std::uint64_t seed = 0;
  std::string output;
  std::string model;  // reuse a fitted model instead of refitting
  std::string residual_scaling = "global";
  int grid_points = 101;
  std::string algorithm;  // heatmap
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-i,--input", cfg.input,
                  "ASlib scenario directory or performance CSV")
      ->required();
  sub->add_option("--input-kind", cfg.input_kind)
      ->check(CLI::IsMember({"auto", "scenario", "csv"}));
  sub->add_option("--objective", cfg.objective, "CSV objective direction")
      ->check(CLI::IsMember({"max", "min"}));
  sub->add_option("--measurement", cfg.measurement,
                  "performance column of algorithm_runs.arff");
  sub->add_option("--missing", cfg.missing)
      ->check(CLI::IsMember({"impute_worst", "drop", "error"}));
  sub->add_option("--transform", cfg.transform)
      ->check(CLI::IsMember({"identity", "reciprocal", "negate_minmax"}));
  sub->add_option("--clip-epsilon", cfg.clip_epsilon);
  sub->add_option("--prior-mu", cfg.prior_mu);
  sub->add_option("--prior-sigma", cfg.prior_sigma);
  sub->add_option("--max-cycles", cfg.max_cycles);
  sub->add_option("--tolerance", cfg.tolerance, "log-likelihood tolerance");
  sub->add_option("-o,--output", cfg.output,
                  "output directory (default $AIRT_OUTPUT_DIR or ./airt-out)");
  sub->add_option("--model", cfg.model, "fitted model JSON to reuse");
}

PerformanceMatrix load_input(const RunConfig& cfg) {
  const fs::path p(cfg.input);
  std::string kind = cfg.input_kind;
  if (kind == "auto") kind = fs::is_directory(p) ? "scenario" : "csv";
  MissingPolicy policy = cfg.missing == "drop"    ? MissingPolicy::kDropInstance
                         : cfg.missing == "error" ? MissingPolicy::kError
                                                  : MissingPolicy::kImputeWorst;
  if (kind == "scenario") {
    LoadOptions opt;
    opt.missing = policy;
    opt.measurement = cfg.measurement;
    return load_scenario(p, opt);
  }
  return load_csv(p, cfg.objective == "max", policy);
}

TransformConfig transform_config(const RunConfig& cfg,
                                 const PerformanceMatrix& m) {
  TransformConfig t = cfg.transform.empty()
                          ? default_transform(m.descriptor)
                          : TransformConfig{transform_kind_from_string(
                                cfg.transform)};
  t.clip_epsilon = cfg.clip_epsilon;
  return t;
}

crm::FitConfig fit_config(const RunConfig& cfg) {
  crm::FitConfig f;
  f.max_cycles = cfg.max_cycles;
  f.loglik_tolerance = cfg.tolerance;
  return f;
}

fs::path output_dir(const RunConfig& cfg) {
  fs::path dir = cfg.output;
  if (dir.empty()) {
    const char* env = std::getenv("AIRT_OUTPUT_DIR");
    dir = env && *env ? env : "airt-out";
  }
  fs::create_directories(dir);
  const fs::path probe = dir / ".airt-write-probe";
  {
    std::ofstream out(probe);
    if (!out)
      throw ConfigError("cli", "output directory not writable: " +
                                   dir.string());
  }
  fs::remove(probe);
  return dir;
}

struct Pipeline {
  PerformanceMatrix matrix;
  TransformedResponses responses;
  crm::CrmModel model;
};

Pipeline run_fit(const RunConfig& cfg) {
  Pipeline p;
  p.matrix = load_input(cfg);
  p.responses = transform_performance(p.matrix, transform_config(cfg, p.matrix));
  if (!cfg.model.empty()) {
    p.model = report::load_model(cfg.model);
    if (p.model.algorithm_names != p.matrix.descriptor.algorithm_names ||
        p.model.instances() != p.matrix.instances())
      throw ConsistencyError("cli",
                             "model does not match the input performance "
                             "matrix");
    return p;
  }
  p.model = crm::fit(p.responses, {cfg.prior_mu, cfg.prior_sigma},
                     fit_config(cfg), p.matrix.descriptor.algorithm_names);
  return p;
}

std::string eps_tag(double eps) { return "eps" + report::format_double(eps); }

void finish(const fs::path& dir) {
  // The manifest covers every artifact in the directory, so several
  // subcommands can share one output directory.
  report::Written all;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().filename() != "manifest.json")
      all.push_back(e.path());
  report::write_manifest(all, dir);
}

void cmd_fit(const RunConfig& cfg) {
  const fs::path dir = output_dir(cfg);
  Pipeline p = run_fit(cfg);
  report::save_model(p.model, dir / "model.json");
  report::write_loglik_trace(p.model, dir / "loglik_trace.csv");
  finish(dir);
}

void cmd_metrics(const RunConfig& cfg) {
  const fs::path dir = output_dir(cfg);
  Pipeline p = run_fit(cfg);
  report::write_metrics(metrics::algorithm_metrics(p.model), dir);
  report::write_difficulty(metrics::dataset_difficulty(p.model.theta),
                           p.matrix.descriptor.instance_ids,
                           dir / "difficulty.csv");
  finish(dir);
}

void cmd_strengths(const RunConfig& cfg) {
  const fs::path dir = output_dir(cfg);
  Pipeline p = run_fit(cfg);
  trait::CurveOptions copt;
  copt.grid_points = cfg.grid_points;
  const auto curves =
      trait::fit_curves(metrics::dataset_difficulty(p.model.theta),
                        p.responses.x, p.model.algorithm_names, copt);
  report::write_curves(curves, dir);
  std::vector<trait::StrengthReport> reports;
  for (double eps : cfg.epsilons) {
    reports.push_back(trait::strengths_weaknesses(curves, eps));
    report::write_strengths(reports.back(), curves, eps_tag(eps), dir);
  }
  report::write_lto_table(reports, dir / "lto.csv");
  finish(dir);
}

void cmd_goodness(const RunConfig& cfg) {
  const fs::path dir = output_dir(cfg);
  Pipeline p = run_fit(cfg);
  const auto scaling = cfg.residual_scaling == "per_algorithm"
                           ? goodness::ResidualScaling::kPerAlgorithm
                           : goodness::ResidualScaling::kGlobal;
  report::write_goodness(goodness::evaluate(p.responses.x, p.model, scaling),
                         dir);
  finish(dir);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) v[k] = lo + (hi - lo) * k / (n - 1);
  return v;
}

void cmd_heatmap(const RunConfig& cfg) {
  const fs::path dir = output_dir(cfg);
  Pipeline p = run_fit(cfg);
  const int j = p.matrix.algorithm_index(cfg.algorithm);
  if (p.model.degenerate[j])
    throw DegenerateItemError("cli", cfg.algorithm, j);
  const Eigen::VectorXd zc = p.responses.z.col(j);
  const auto z_grid = linspace(zc.minCoeff() - 1.0, zc.maxCoeff() + 1.0, 60);
  const auto t_grid = linspace(p.model.theta.minCoeff() - 1.0,
                               p.model.theta.maxCoeff() + 1.0, 60);
  const auto grid = crm::heatmap_grid(p.model.params.item(j), z_grid, t_grid);
  report::write_heatmap(cfg.algorithm, z_grid, t_grid, grid, dir);
  finish(dir);
}

void cmd_compare(const RunConfig& cfg) {
  const fs::path dir = output_dir(cfg);
  const PerformanceMatrix m = load_input(cfg);
  portfolio::CompareOptions opt;
  opt.folds = cfg.folds;
  opt.seed = cfg.seed;
  opt.transform = transform_config(cfg, m);
  opt.prior = {cfg.prior_mu, cfg.prior_sigma};
  opt.fit = fit_config(cfg);
  opt.grid_points = cfg.grid_points;
  for (double eps : cfg.epsilons)
    report::write_comparison(portfolio::cv_compare(m, eps, opt),
                             dir / ("compare_" + eps_tag(eps)));
  finish(dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AIRT: algorithm portfolio evaluation with item response theory"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* fit = app.add_subcommand("fit", "fit the model; write model JSON and "
                                        "log-likelihood trace");
  auto* met = app.add_subcommand("metrics", "algorithm metrics and dataset "
                                            "difficulty");
  auto* str = app.add_subcommand("strengths", "latent trait curves, strengths "
                                              "and weaknesses, LTO");
  auto* good = app.add_subcommand("goodness", "model goodness diagnostics");
  auto* heat = app.add_subcommand("heatmap", "density heatmap for one "
                                             "algorithm");
  auto* cmp = app.add_subcommand("compare", "cross-validated portfolio "
                                            "comparison");
  for (auto* sub : {fit, met, str, good, heat, cmp}) add_common(sub, cfg);
  for (auto* sub : {str, cmp}) {
    sub->add_option("-e,--epsilon", cfg.epsilons, "epsilon values")
        ->expected(1, -1)
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--grid-points", cfg.grid_points)
        ->check(CLI::Range(2, 100000));
  }
  good->add_option("--residual-scaling", cfg.residual_scaling)
      ->check(CLI::IsMember({"global", "per_algorithm"}));
  heat->add_option("algorithm", cfg.algorithm)->required();
  cmp->add_option("--folds", cfg.folds)->check(CLI::Range(2, 1000000));
  cmp->add_option("--seed", cfg.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*fit) cmd_fit(cfg);
    else if (*met) cmd_metrics(cfg);
    else if (*str) cmd_strengths(cfg);
    else if (*good) cmd_goodness(cfg);
    else if (*heat) cmd_heatmap(cfg);
    else if (*cmp) cmd_compare(cfg);
  } catch (const std::exception& e) {
    std::cerr << report::error_json(e);
    return 1;
  }
  return 0;
}
