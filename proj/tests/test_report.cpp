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


#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "airt/error.hpp"
#include "airt/report.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace airt;
using namespace airt::report;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

crm::CrmModel small_model() {
  std::mt19937_64 rng(6);
  auto truth = airt::testing::random_items(4, 1, rng);
  auto s = airt::testing::simulate(truth, 50, 2);
  Eigen::MatrixXd z(50, 5);
  z << s.z, Eigen::VectorXd::Constant(50, 0.2);
  return crm::fit(TransformedResponses::from_logits(z), {},
                  {}, std::vector<std::string>{"a", "b", "c", "d", "flat"});
}

}  // namespace

TEST_CASE("format_double: shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(std::strtod(format_double(M_PI).c_str(), nullptr) == M_PI);
  CHECK(format_double(NAN) == "NaN");
  CHECK(format_double(-INFINITY) == "-Inf");
}

TEST_CASE("model JSON round-trips losslessly") {
  const auto m = small_model();
  const std::string text = model_to_json(m);
  const auto back = model_from_json(text);
  CHECK(back.algorithm_names == m.algorithm_names);
  CHECK(back.params.alpha == m.params.alpha);
  CHECK(back.params.beta == m.params.beta);
  CHECK(back.params.gamma == m.params.gamma);
  CHECK(back.theta == m.theta);
  CHECK(back.posterior.mean == m.posterior.mean);
  CHECK(back.posterior.variance == m.posterior.variance);
  CHECK(back.loglik_trace == m.loglik_trace);
  CHECK(back.degenerate == m.degenerate);
  CHECK(back.converged == m.converged);
  CHECK(back.cycles_used == m.cycles_used);
  CHECK(model_to_json(back) == text);
  CHECK_THROWS_AS(model_from_json("{\"format\": \"other\"}"), FormatError);
  CHECK_THROWS_AS(model_from_json("{nope"), ParseError);
}

TEST_CASE("error_json carries module, kind, and details") {
  const auto j = nlohmann::json::parse(
      error_json(ParseError("ingest", "bad cell", 12, 3)));
  CHECK(j["error"]["module"] == "ingest");
  CHECK(j["error"]["kind"] == "parse");
  CHECK(j["error"]["line"] == 12);
  CHECK(j["error"]["column"] == 3);
  const auto d = nlohmann::json::parse(
      error_json(DegenerateItemError("crm", "x", 2)));
  CHECK(d["error"]["algorithm"] == "x");
}

TEST_CASE("writers and manifest") {
  const fs::path dir = fs::temp_directory_path() / "airt_report_test";
  fs::remove_all(dir);
  const auto m = small_model();
  Written all;
  auto add = [&](const Written& w) { all.insert(all.end(), w.begin(), w.end()); };
  const auto met = metrics::algorithm_metrics(m);
  add(write_metrics(met, dir));
  const std::string csv = slurp(dir / "metrics.csv");
  CHECK(csv.rfind("algorithm,consistency,anomalous,difficulty_limit,warnings\n", 0) == 0);
  CHECK(csv.find("flat,Inf,false,NaN,") != std::string::npos);
  const auto mj = nlohmann::json::parse(slurp(dir / "metrics.json"));
  CHECK(mj["metrics"][4]["difficulty_limit"].is_null());

  const auto delta = metrics::dataset_difficulty(m.theta);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Constant(50, 5, 0.5);
  const auto curves = trait::fit_curves(delta, x, m.algorithm_names);
  const auto rep = trait::strengths_weaknesses(curves, 0.01);
  add(write_curves(curves, dir));
  add(write_strengths(rep, curves, "eps0.01", dir));
  add(write_lto_table({rep}, dir / "lto.csv"));
  const auto sj = nlohmann::json::parse(slurp(dir / "strengths_eps0.01.json"));
  CHECK(sj["algorithms"].size() == 5);
  CHECK(slurp(dir / "strengths_eps0.01.svg").find("<svg") == 0);

  std::vector<double> zs{-1, 0, 1}, ts{-1, 1};
  add(write_heatmap("a b", zs, ts, crm::heatmap_grid(m.params.item(0), zs, ts), dir));
  CHECK(fs::exists(dir / "heatmap_a_b.csv"));

  const fs::path manifest = write_manifest(all, dir);
  const auto mf = nlohmann::json::parse(slurp(manifest));
  CHECK(mf["artifacts"].size() == all.size());
  for (const auto& a : mf["artifacts"])
    CHECK(a["sha256"] == sha256_file(dir / a["path"].get<std::string>()));

  // sha256("abc")
  std::ofstream(dir / "abc.txt", std::ios::binary) << "abc";
  CHECK(sha256_file(dir / "abc.txt") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
