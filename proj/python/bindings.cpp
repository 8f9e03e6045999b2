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


#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "airt/crm.hpp"
#include "airt/error.hpp"
#include "airt/goodness.hpp"
#include "airt/ingest.hpp"
#include "airt/metrics.hpp"
#include "airt/portfolio.hpp"
#include "airt/report.hpp"
#include "airt/trait_analysis.hpp"

namespace py = pybind11;
using namespace airt;

namespace {

MissingPolicy missing_policy(const std::string& name) {
  if (name == "impute_worst") return MissingPolicy::kImputeWorst;
  if (name == "drop") return MissingPolicy::kDropInstance;
  if (name == "error") return MissingPolicy::kError;
  throw ConfigError("python", "unknown missing policy '" + name + "'");
}

goodness::ResidualScaling residual_scaling(const std::string& name) {
  if (name == "global") return goodness::ResidualScaling::kGlobal;
  if (name == "per_algorithm") return goodness::ResidualScaling::kPerAlgorithm;
  throw ConfigError("python", "unknown residual scaling '" + name + "'");
}

std::optional<TransformConfig> transform_config(
    const std::optional<std::string>& kind, double clip_epsilon) {
  if (!kind) return std::nullopt;
  return TransformConfig{transform_kind_from_string(*kind), clip_epsilon};
}

}  // namespace

PYBIND11_MODULE(_airt, m) {
  m.doc() = "Algorithm evaluation with item response theory";
  py::register_exception<Error>(m, "AirtError");

  py::class_<ScenarioDescriptor>(m, "ScenarioDescriptor")
      .def_readonly("name", &ScenarioDescriptor::name)
      .def_readonly("measurement", &ScenarioDescriptor::measurement)
      .def_readonly("maximize", &ScenarioDescriptor::maximize)
      .def_readonly("algorithm_names", &ScenarioDescriptor::algorithm_names)
      .def_readonly("instance_ids", &ScenarioDescriptor::instance_ids);

  py::class_<PerformanceMatrix>(m, "PerformanceMatrix")
      .def(py::init([](const Eigen::MatrixXd& values, bool maximize,
                       std::vector<std::string> algorithms,
                       std::vector<std::string> instances) {
             PerformanceMatrix p;
             p.values = values;
             p.descriptor.maximize = maximize;
             if (algorithms.empty())
               for (Eigen::Index j = 0; j < values.cols(); ++j)
                 algorithms.push_back("a" + std::to_string(j));
             if (instances.empty())
               for (Eigen::Index i = 0; i < values.rows(); ++i)
                 instances.push_back(std::to_string(i));
             if (static_cast<Eigen::Index>(algorithms.size()) != values.cols() ||
                 static_cast<Eigen::Index>(instances.size()) != values.rows())
               throw ConsistencyError("python", "names do not match the shape");
             p.descriptor.algorithm_names = std::move(algorithms);
             p.descriptor.instance_ids = std::move(instances);
             return p;
           }),
           py::arg("values"), py::arg("maximize") = true,
           py::arg("algorithms") = std::vector<std::string>{},
           py::arg("instances") = std::vector<std::string>{})
      .def_readonly("values", &PerformanceMatrix::values)
      .def_readonly("descriptor", &PerformanceMatrix::descriptor)
      .def_readonly("imputed_cells", &PerformanceMatrix::imputed_cells)
      .def_readonly("dropped_instances", &PerformanceMatrix::dropped_instances)
      .def_property_readonly("algorithm_names", [](const PerformanceMatrix& p) {
        return p.descriptor.algorithm_names;
      });

  m.def(
      "load_scenario",
      [](const std::filesystem::path& dir, const std::string& missing,
         const std::string& measurement) {
        return load_scenario(dir, {missing_policy(missing), measurement});
      },
      py::arg("path"), py::arg("missing") = "impute_worst",
      py::arg("measurement") = "");
  m.def(
      "load_csv",
      [](const std::filesystem::path& path, bool maximize,
         const std::string& missing) {
        return load_csv(path, maximize, missing_policy(missing));
      },
      py::arg("path"), py::arg("maximize") = true, py::arg("missing") = "error");

  py::class_<TransformedResponses>(m, "TransformedResponses")
      .def_readonly("x", &TransformedResponses::x)
      .def_readonly("z", &TransformedResponses::z)
      .def_readonly("offset", &TransformedResponses::offset)
      .def_readonly("scale", &TransformedResponses::scale)
      .def_static("from_logits", &TransformedResponses::from_logits);
  m.def(
      "transform",
      [](const PerformanceMatrix& p, const std::optional<std::string>& kind,
         double clip_epsilon) {
        auto cfg = transform_config(kind, clip_epsilon)
                       .value_or(default_transform(p.descriptor));
        cfg.clip_epsilon = clip_epsilon;
        return transform_performance(p, cfg);
      },
      py::arg("matrix"), py::arg("kind") = py::none(),
      py::arg("clip_epsilon") = 0.01);

  py::class_<crm::CrmModel>(m, "CrmModel")
      .def_readonly("algorithm_names", &crm::CrmModel::algorithm_names)
      .def_property_readonly(
          "alpha", [](const crm::CrmModel& c) { return c.params.alpha; })
      .def_property_readonly(
          "beta", [](const crm::CrmModel& c) { return c.params.beta; })
      .def_property_readonly(
          "gamma", [](const crm::CrmModel& c) { return c.params.gamma; })
      .def_readonly("theta", &crm::CrmModel::theta)
      .def_property_readonly(
          "posterior_mean",
          [](const crm::CrmModel& c) { return c.posterior.mean; })
      .def_property_readonly(
          "posterior_variance",
          [](const crm::CrmModel& c) { return c.posterior.variance; })
      .def_readonly("loglik_trace", &crm::CrmModel::loglik_trace)
      .def_readonly("converged", &crm::CrmModel::converged)
      .def_readonly("cycles_used", &crm::CrmModel::cycles_used)
      .def_readonly("degenerate", &crm::CrmModel::degenerate)
      .def_property_readonly(
          "warnings",
          [](const crm::CrmModel& c) {
            std::vector<std::string> out;
            for (const auto& w : c.warnings) out.push_back(w.message);
            return out;
          })
      .def("to_json",
           [](const crm::CrmModel& c) { return report::model_to_json(c); })
      .def("save", [](const crm::CrmModel& c, const std::filesystem::path& p) {
        report::save_model(c, p);
      });
  m.def("load_model", &report::load_model, py::arg("path"));

  m.def(
      "fit",
      [](const TransformedResponses& r, double prior_mu, double prior_sigma,
         int max_cycles, double tolerance, std::vector<std::string> names) {
        crm::FitConfig cfg;
        cfg.max_cycles = max_cycles;
        cfg.loglik_tolerance = tolerance;
        py::gil_scoped_release release;
        return crm::fit(r, {prior_mu, prior_sigma}, cfg, names);
      },
      py::arg("responses"), py::arg("prior_mu") = 0.0,
      py::arg("prior_sigma") = 1.0, py::arg("max_cycles") = 200,
      py::arg("tolerance") = 1e-4,
      py::arg("names") = std::vector<std::string>{});

  py::class_<metrics::AlgorithmMetrics>(m, "AlgorithmMetrics")
      .def_readonly("algorithm", &metrics::AlgorithmMetrics::algorithm)
      .def_readonly("consistency", &metrics::AlgorithmMetrics::consistency)
      .def_readonly("anomalous", &metrics::AlgorithmMetrics::anomalous)
      .def_readonly("difficulty_limit",
                    &metrics::AlgorithmMetrics::difficulty_limit)
      .def_readonly("degenerate", &metrics::AlgorithmMetrics::degenerate);
  m.def("algorithm_metrics",
        py::overload_cast<const crm::CrmModel&>(&metrics::algorithm_metrics),
        py::arg("model"));
  m.def(
      "dataset_difficulty",
      [](const crm::CrmModel& c) {
        return metrics::dataset_difficulty(c.theta).delta;
      },
      py::arg("model"));

  py::class_<trait::TraitCurveSet>(m, "TraitCurveSet")
      .def_readonly("algorithm_names", &trait::TraitCurveSet::algorithm_names)
      .def_readonly("grid", &trait::TraitCurveSet::grid)
      .def_readonly("curves", &trait::TraitCurveSet::curves)
      .def_readonly("lambdas", &trait::TraitCurveSet::lambdas)
      .def_readonly("linear_fallback", &trait::TraitCurveSet::linear_fallback)
      .def_readonly("delta", &trait::TraitCurveSet::delta);
  m.def(
      "fit_curves",
      [](const crm::CrmModel& c, const Eigen::MatrixXd& x, int grid_points) {
        trait::CurveOptions opt;
        opt.grid_points = grid_points;
        return trait::fit_curves(metrics::dataset_difficulty(c.theta), x,
                                 c.algorithm_names, opt);
      },
      py::arg("model"), py::arg("x"), py::arg("grid_points") = 101);

  py::class_<trait::Interval>(m, "Interval")
      .def_readonly("lo", &trait::Interval::lo)
      .def_readonly("hi", &trait::Interval::hi)
      .def("__repr__", [](const trait::Interval& i) {
        return "Interval(" + report::format_double(i.lo) + ", " +
               report::format_double(i.hi) + ")";
      });
  py::class_<trait::StrengthReport>(m, "StrengthReport")
      .def_readonly("epsilon", &trait::StrengthReport::epsilon)
      .def_readonly("algorithm_names", &trait::StrengthReport::algorithm_names)
      .def_readonly("strengths", &trait::StrengthReport::strengths)
      .def_readonly("weaknesses", &trait::StrengthReport::weaknesses)
      .def_property_readonly("strong",
                             [](const trait::StrengthReport& r) {
                               return Eigen::MatrixXi(r.strong.cast<int>());
                             })
      .def_property_readonly("weak",
                             [](const trait::StrengthReport& r) {
                               return Eigen::MatrixXi(r.weak.cast<int>());
                             })
      .def_readonly("lto", &trait::StrengthReport::lto);
  m.def("strengths", &trait::strengths_weaknesses, py::arg("curves"),
        py::arg("epsilon") = 0.0);
  m.def(
      "airt_portfolio",
      [](const trait::StrengthReport& r, const crm::CrmModel& c) {
        std::vector<double> limits;
        for (const auto& a : metrics::algorithm_metrics(c))
          limits.push_back(a.difficulty_limit);
        return trait::airt_portfolio(r, limits);
      },
      py::arg("report"), py::arg("model"));

  py::class_<goodness::GoodnessRow>(m, "GoodnessRow")
      .def_readonly("algorithm", &goodness::GoodnessRow::algorithm)
      .def_readonly("mse", &goodness::GoodnessRow::mse)
      .def_readonly("aucdf", &goodness::GoodnessRow::aucdf)
      .def_readonly("auaec", &goodness::GoodnessRow::auaec)
      .def_readonly("aupec", &goodness::GoodnessRow::aupec)
      .def_readonly("abs_diff", &goodness::GoodnessRow::abs_diff)
      .def_readonly("warnings", &goodness::GoodnessRow::warnings);
  m.def(
      "goodness",
      [](const Eigen::MatrixXd& x, const crm::CrmModel& c,
         const std::string& scaling) {
        return goodness::evaluate(x, c, residual_scaling(scaling)).rows;
      },
      py::arg("x"), py::arg("model"), py::arg("scaling") = "global");
  m.def("aucdf", &goodness::aucdf, py::arg("rho"), py::arg("grid_points") = 1001);

  m.def(
      "shapley_values",
      [](const Eigen::MatrixXd& x) {
        return portfolio::shapley_values(x).phi;
      },
      py::arg("x"));
  m.def(
      "topset_ranking",
      [](const Eigen::MatrixXd& x) {
        std::vector<int> out;
        for (const auto& e : portfolio::topset_ranking(x))
          out.push_back(e.algorithm);
        return out;
      },
      py::arg("x"));

  py::class_<portfolio::ComparisonEntry>(m, "ComparisonEntry")
      .def_property_readonly("method",
                             [](const portfolio::ComparisonEntry& e) {
                               return std::string(portfolio::to_string(e.method));
                             })
      .def_readonly("n", &portfolio::ComparisonEntry::n)
      .def_readonly("mean_gap", &portfolio::ComparisonEntry::mean_gap)
      .def_readonly("stderr_gap", &portfolio::ComparisonEntry::stderr_gap)
      .def_readonly("folds_realized",
                    &portfolio::ComparisonEntry::folds_realized);
  m.def(
      "cv_compare",
      [](const PerformanceMatrix& p, double epsilon, int folds,
         std::uint64_t seed, const std::optional<std::string>& transform) {
        portfolio::CompareOptions opt;
        opt.folds = folds;
        opt.seed = seed;
        opt.transform = transform_config(transform, 0.01);
        py::gil_scoped_release release;
        return portfolio::cv_compare(p, epsilon, opt).entries;
      },
      py::arg("matrix"), py::arg("epsilon") = 0.0, py::arg("folds") = 10,
      py::arg("seed") = 0, py::arg("transform") = py::none());
}
