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
#include <sstream>

#include "airt/arff.hpp"
#include "airt/error.hpp"
#include "airt/ingest.hpp"

namespace fs = std::filesystem;
using namespace airt;

namespace {

const fs::path kData = AIRT_TEST_DATA_DIR;

fs::path temp_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("airt_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

const char* kDescription = R"(scenario_id: TINY
performance_measures:
  - accuracy
maximize:
  - true
algorithms_deterministic:
  - A
  - B
)";

const char* kArffHead = R"(@RELATION runs
@ATTRIBUTE instance_id STRING
@ATTRIBUTE repetition NUMERIC
@ATTRIBUTE algorithm STRING
@ATTRIBUTE accuracy NUMERIC
@ATTRIBUTE runstatus {ok,timeout,crash}
@DATA
)";

}  // namespace

TEST_CASE("arff: header, quoting, missing cells") {
  std::istringstream in(
      "% comment\n@relation 'my rel'\n@attribute name string\n"
      "@attribute v numeric\n@attribute s {ok, 'bad one'}\n\n@data\n"
      "'a, b',1.5,ok\n\"c\",?,'bad one'\n");
  const auto t = arff::read(in);
  CHECK(t.relation == "my rel");
  REQUIRE(t.attributes.size() == 3);
  CHECK(t.attributes[2].type == arff::AttributeType::kNominal);
  CHECK(t.attributes[2].nominal_values[1] == "bad one");
  REQUIRE(t.rows.size() == 2);
  CHECK(*t.rows[0].cells[0] == "a, b");
  CHECK_FALSE(t.rows[1].cells[1].has_value());
  CHECK(*t.rows[1].cells[2] == "bad one");
  CHECK(t.find("V").value() == 1);
}

TEST_CASE("arff: malformed row reports its line") {
  std::istringstream in("@relation r\n@attribute a numeric\n@attribute b "
                        "numeric\n@data\n1,2\n3\n");
  try {
    arff::read(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
  }
}

TEST_CASE("load_scenario: 2x2 fixture round trip") {
  const fs::path d = temp_dir("tiny");
  write_file(d / "description.txt", kDescription);
  write_file(d / "algorithm_runs.arff",
             std::string(kArffHead) +
                 "i1,1,A,0.9,ok\ni1,1,B,0.6,ok\ni2,1,A,0.3,ok\ni2,1,B,0.2,ok\n");
  const auto m = load_scenario(d);
  CHECK(m.descriptor.name == "TINY");
  CHECK(m.descriptor.maximize);
  CHECK(m.descriptor.measurement == "accuracy");
  CHECK(m.descriptor.algorithm_names == std::vector<std::string>{"A", "B"});
  CHECK(m.descriptor.instance_ids == std::vector<std::string>{"i1", "i2"});
  CHECK(m.values(0, 0) == doctest::Approx(0.9));
  CHECK(m.values(1, 1) == doctest::Approx(0.2));
}

TEST_CASE("load_scenario: repetitions are averaged") {
  const auto m = load_scenario(kData / "scenario_small");
  CHECK(m.instances() == 12);
  CHECK(m.algorithms() == 3);
  CHECK_FALSE(m.descriptor.maximize);
  // Independent mean of the three solverC runs for inst00 in the fixture.
  const double expected = (19.48 + 20.416 + 20.503) / 3.0;
  CHECK(m.values(0, m.algorithm_index("solverC")) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("load_scenario: failed runs imputed with the instance's worst") {
  const auto m = load_scenario(kData / "scenario_small");
  const int b = m.algorithm_index("solverB");
  // inst04's solverB run timed out with a penalized value of 1000; for a
  // minimized measure the worst value on the instance is that 1000.
  CHECK(m.values(4, b) == doctest::Approx(1000.0));
  CHECK(m.imputed_cells == 1);
  // The argmin among observed values is unchanged.
  Eigen::Index best;
  m.values.row(4).minCoeff(&best);
  CHECK(best != b);
}

TEST_CASE("load_scenario: drop policy removes the instance") {
  LoadOptions opt;
  opt.missing = MissingPolicy::kDropInstance;
  const auto m = load_scenario(kData / "scenario_small", opt);
  CHECK(m.instances() == 11);
  CHECK(m.dropped_instances == std::vector<std::string>{"inst04"});
}

TEST_CASE("load_scenario: error paths") {
  const fs::path d = temp_dir("errors");
  CHECK_THROWS_AS(load_scenario(d), LoadError);
  write_file(d / "description.txt", kDescription);
  CHECK_THROWS_AS(load_scenario(d), LoadError);
  write_file(d / "algorithm_runs.arff",
             std::string(kArffHead) + "i1,1,A,0.9,ok\ni1,1,C,0.6,ok\n"
                                      "i2,1,A,0.3,ok\ni2,1,C,0.2,ok\n");
  CHECK_THROWS_AS(load_scenario(d), ConsistencyError);
  write_file(d / "algorithm_runs.arff",
             std::string(kArffHead) + "i1,1,A,0.9,ok\ni1,1,B\n");
  try {
    load_scenario(d);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 9);
  }
}

TEST_CASE("load_csv: values, direction, and errors") {
  const fs::path d = temp_dir("csv");
  write_file(d / "ok.csv", "id,A,B\nx,0.1,0.2\ny,0.3,0.4\nz,0.5,0.6\n");
  const auto m = load_csv(d / "ok.csv", true);
  CHECK(m.instances() == 3);
  CHECK(m.algorithms() == 2);
  CHECK(m.descriptor.maximize);
  CHECK(m.values(2, 1) == doctest::Approx(0.6));

  write_file(d / "ragged.csv", "id,A,B\nx,0.1\n");
  CHECK_THROWS_AS(load_csv(d / "ragged.csv", true), FormatError);

  write_file(d / "text.csv", "id,A,B\nx,0.1,0.2\ny,abc,0.4\n");
  try {
    load_csv(d / "text.csv", true);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 2);
  }

  write_file(d / "hole.csv", "id,A,B\nx,0.1,0.2\ny,,0.4\nz,0.5,0.6\n");
  CHECK_THROWS(load_csv(d / "hole.csv", true, MissingPolicy::kError));
  const auto imputed = load_csv(d / "hole.csv", true, MissingPolicy::kImputeWorst);
  CHECK(imputed.values(1, 0) == doctest::Approx(0.4));
}

TEST_CASE("csv round trip through write_csv") {
  const auto m = load_scenario(kData / "scenario_small");
  const fs::path d = temp_dir("roundtrip");
  write_csv(m, d / "m.csv");
  const auto back = load_csv(d / "m.csv", m.descriptor.maximize);
  CHECK(back.descriptor.algorithm_names == m.descriptor.algorithm_names);
  CHECK(back.descriptor.instance_ids == m.descriptor.instance_ids);
  CHECK((back.values - m.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("transform: logit of one half and clipping") {
  PerformanceMatrix m;
  m.values.resize(2, 2);
  m.values << 0.5, 1.0, 0.2, 0.0;
  m.descriptor.maximize = true;
  m.descriptor.algorithm_names = {"A", "B"};
  m.descriptor.instance_ids = {"i", "j"};
  const auto t = transform_performance(m, {TransformKind::kIdentity, 0.01});
  CHECK(t.z(0, 0) == doctest::Approx(0.0));
  CHECK(t.x(0, 1) == doctest::Approx(0.99));
  CHECK(t.z(0, 1) == doctest::Approx(std::log(99.0)));
  CHECK(t.x(1, 1) == doctest::Approx(0.01));
}

TEST_CASE("transform: runtimes under negate_minmax") {
  PerformanceMatrix m;
  m.values.resize(3, 2);
  m.values << 1, 10, 10, 100, 100, 1;
  m.descriptor.maximize = false;
  m.descriptor.algorithm_names = {"A", "B"};
  m.descriptor.instance_ids = {"a", "b", "c"};
  const auto t = transform_performance(m, {TransformKind::kNegateMinMax, 0.01});
  // (100 - y) / 99, then clipped.
  CHECK(t.x(0, 0) == doctest::Approx(0.99));
  CHECK(t.x(1, 0) == doctest::Approx(90.0 / 99.0));
  CHECK(t.x(2, 0) == doctest::Approx(0.01));
}

TEST_CASE("transform: properties on the scenario fixture") {
  const auto m = load_scenario(kData / "scenario_small");
  for (auto kind : {TransformKind::kReciprocal, TransformKind::kNegateMinMax}) {
    const auto t = transform_performance(m, {kind, 0.01});
    CHECK(t.z.allFinite());
    CHECK(t.x.minCoeff() >= 0.01);
    CHECK(t.x.maxCoeff() <= 0.99);
    for (Eigen::Index i = 0; i < t.x.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.x.cols(); ++j)
        CHECK(std::abs(inverse_logit(t.z(i, j)) - t.x(i, j)) < 1e-12);
      Eigen::Index ax, best;
      t.x.row(i).maxCoeff(&ax);
      m.values.row(i).minCoeff(&best);
      CHECK(t.x(i, ax) == t.x(i, best));
    }
  }
}

TEST_CASE("transform: error paths") {
  PerformanceMatrix m;
  m.values = Eigen::MatrixXd::Constant(2, 2, 3.0);
  m.descriptor.maximize = false;
  m.descriptor.algorithm_names = {"A", "B"};
  m.descriptor.instance_ids = {"a", "b"};
  CHECK_THROWS_AS(transform_performance(m, {TransformKind::kNegateMinMax, 0.01}),
                  DegenerateError);
  m.values(0, 0) = 0.0;
  CHECK_THROWS_AS(transform_performance(m, {TransformKind::kReciprocal, 0.01}),
                  DomainError);
  CHECK_THROWS_AS(transform_performance(m, {TransformKind::kNegateMinMax, 0.6}),
                  ConfigError);
}
