// Copyright 2026 The statemetric Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "statemetric/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "statemetric/metric_engine.hpp"

namespace statemetric::cli {
namespace {

using Json = nlohmann::json;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return std::string(STATEMETRIC_DATA_DIR) + "/" + name; }

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "statemetric");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json rows(const Outcome& o, const std::string& section) {
  return Json::parse(o.out).at("results").at(section);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Cli, MetricThreePoint) {
  const Outcome o = run_cli({"metric", data("example71.json"), "--format", "json"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const Json r = rows(o, "metric");
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r[0]["mu"], "d1");
  EXPECT_EQ(r[0]["nu"], "d2");
  EXPECT_NEAR(r[0]["distance"].get<double>(), std::sqrt(1.25), 1e-6);
  EXPECT_NEAR(r[1]["distance"].get<double>(), 1.0, 1e-6);
  EXPECT_NEAR(r[2]["distance"].get<double>(), 0.5, 1e-6);
  for (const Json& row : r)
    EXPECT_LE(row["upper"].get<double>() - row["lower"].get<double>(), 1e-7);
  const Outcome table = run_cli({"metric", data("example71.json")});
  EXPECT_NE(table.out.find("d1  d2  1.1180340"), std::string::npos) << table.out;
}

TEST(Cli, WeakLatticeCounterexample) {
  const Outcome o = run_cli({"check", "weak-lattice", data("counterexample4x4.json")});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("weak-lattice  weak-lattice  f "), std::string::npos) << o.out;
  const Outcome j =
      run_cli({"check", "weak-lattice", data("counterexample4x4.json"), "--format", "json"});
  const Json v = rows(j, "violations");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0]["observables"], "f");
  EXPECT_NEAR(v[0]["margin"].get<double>(), 0.1281037258183435, 1e-9);
  EXPECT_EQ(run_cli({"check", "weak-lattice", data("counterexample4x4.json"), "--strict"}).code,
            kExitViolations);
}

TEST(Cli, StrictPassesWithoutViolations) {
  const Outcome o = run_cli({"check", "leibniz", data("example71.json"), "--strict"});
  EXPECT_EQ(o.code, kExitOk) << o.out;
}

TEST(Cli, ResistTriangle) {
  const Outcome o = run_cli({"resist", data("triangle-resistance.json")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  for (const char* pair : {"a  b", "a  c", "b  c"})
    EXPECT_NE(o.out.find(std::string(pair) + "   0.6666667      0.6666667"), std::string::npos)
        << o.out;
  const Json r = rows(run_cli({"resist", data("triangle-resistance.json"), "--format", "json"}),
                      "effective-resistance");
  for (const Json& row : r) EXPECT_NEAR(row["resistance"].get<double>(), 2.0 / 3.0, 1e-12);
}

TEST(Cli, TransportOnPath) {
  const Json r =
      rows(run_cli({"mk", data("path-transport.json"), "--format", "json"}), "transport");
  ASSERT_EQ(r.size(), 6u);
  // Half the mass moves 3 (p0 → p2), half moves 3 (p1 → p3).
  EXPECT_NEAR(r[0]["distance"].get<double>(), 3.0, 1e-9);
  EXPECT_NEAR(r[5]["distance"].get<double>(), 4.0, 1e-9);
}

TEST(Cli, EvalAndRecover) {
  const Json e = rows(run_cli({"eval", data("example71.json"), "--format", "json"}), "seminorm");
  EXPECT_NEAR(e[2]["L"].get<double>(), std::sqrt(5.0), 1e-9);
  const Json r =
      rows(run_cli({"recover", data("example71.json"), "--format", "json"}), "recovery");
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[2]["extreme"].get<double>(), 2.0, 1e-9);
  EXPECT_GE(r[2]["recovered"].get<double>(), 0.95 * std::sqrt(5.0));
  EXPECT_EQ(r[2]["extreme_insufficient"], true);
}

TEST(Cli, TableRoundTrip) {
  for (const char* file : {"example71.json", "path-transport.json", "triangle-resistance.json"}) {
    const Outcome o = run_cli({"table", data(file), "--format", "json"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const ProblemFile original = load_problem(data(file));
    const ProblemFile again = parse_problem(o.out);
    ASSERT_EQ(again.seminorm.kind(), "metric-lip");
    const Matrix& d = std::get<MetricLipSeminorm>(again.seminorm.variant()).table.distances();
    const MetricTable expected = metric_table(original.seminorm);
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.rows(); ++j) EXPECT_EQ(d(i, j), expected(i, j)) << file;
    // Feeding the table back in reproduces it.
    EXPECT_EQ(metric_table(again.seminorm).distances(), d);
  }
}

TEST(Cli, Deterministic) {
  const std::vector<std::vector<std::string>> commands = {
      {"metric", data("example71.json")},
      {"recover", data("example71.json"), "--samples", "300"},
      {"check", data("example71.json"), "--trials", "20", "--format", "csv"},
      {"table", data("counterexample4x4.json"), "--format", "json"},
      {"check", data("path-transport.json"), "--seed", "7", "--precision"}};
  for (const auto& args : commands) {
    const Outcome a = run_cli(args);
    const Outcome b = run_cli(args);
    EXPECT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, Formats) {
  const Outcome csv = run_cli({"eval", data("example71.json"), "--format", "csv"});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "section,observable,L,quotient_norm");
  EXPECT_NE(csv.out.find("seminorm,f_or_g,2.2360680,0.5000000"), std::string::npos);
  const Outcome full = run_cli({"eval", data("example71.json"), "--precision"});
  EXPECT_NE(full.out.find("2.23606797749979"), std::string::npos) << full.out;
  EXPECT_EQ(run_cli({"eval", data("example71.json"), "--format", "xml"}).code, kExitMalformed);
}

TEST(Cli, NumericalFailureCarriesBounds) {
  const std::string file = ::testing::TempDir() + "quotient2.json";
  std::ofstream(file) << R"({"schema": "statemetric/1", "space": {"matrix": 2},
    "seminorm": {"kind": "quotient"},
    "states": [{"name": "a", "re": [[1, 0], [0, 0]]},
               {"name": "c", "re": [[0.3, 0.1], [0.1, 0.7]], "im": [[0, 0.2], [-0.2, 0]]}]})";
  EXPECT_EQ(run_cli({"metric", file}).code, kExitOk);
  const Outcome o = run_cli({"metric", file, "--tol", "1e-15"});
  EXPECT_EQ(o.code, kExitNumerical);
  EXPECT_NE(o.err.find("lower"), std::string::npos);
  EXPECT_NE(o.err.find("upper"), std::string::npos);
}

TEST(Cli, CommandLineErrors) {
  EXPECT_EQ(run_cli({}).code, kExitMalformed);
  EXPECT_EQ(run_cli({"metric"}).code, kExitMalformed);
  EXPECT_EQ(run_cli({"bogus", data("example71.json")}).code, kExitMalformed);
  EXPECT_EQ(run_cli({"check", "nonsense", data("example71.json")}).code, kExitMalformed);
  EXPECT_EQ(run_cli({"metric", "extra", data("example71.json")}).code, kExitMalformed);
  EXPECT_EQ(run_cli({"metric", "/nonexistent.json"}).code, kExitMalformed);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
}

TEST(Cli, CommandSeminormMismatch) {
  const Outcome mk = run_cli({"mk", data("example71.json")});
  EXPECT_EQ(mk.code, kExitMalformed);
  EXPECT_EQ(mk.err.rfind("error: seminorm.kind:", 0), 0u) << mk.err;
  EXPECT_EQ(run_cli({"resist", data("path-transport.json")}).code, kExitMalformed);
}

// ---- schema ----------------------------------------------------------------

Json example() { return Json::parse(slurp(data("example71.json"))); }

std::string diagnostic(const Json& j) {
  try {
    parse_problem(j.dump());
  } catch (const FileError& e) {
    return e.what();
  }
  return "";
}

TEST(Schema, BundledFilesParse) {
  for (const char* file : {"example71.json", "counterexample4x4.json", "triangle-resistance.json",
                           "path-transport.json"})
    EXPECT_NO_THROW(load_problem(data(file))) << file;
}

TEST(Schema, MissingFieldsHaveDistinctDiagnostics) {
  const Json graph = Json::parse(slurp(data("path-transport.json")));
  const Json resist = Json::parse(slurp(data("triangle-resistance.json")));
  Json table = example();
  table["seminorm"] = {{"kind", "metric-lip"}, {"distances", {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}}};
  Json matrix = example();
  matrix["space"] = {{"matrix", 2}};
  matrix["seminorm"] = {{"kind", "quotient"}};
  matrix["states"] = {{{"name", "a"}, {"re", {{1, 0}, {0, 0}}}}};
  matrix["observables"] = {{{"name", "z"}, {"re", {{1, 0}, {0, -1}}}}};
  matrix.erase("tasks");

  struct Case {
    Json base;
    Json::json_pointer pointer;
    std::string field;
  };
  const std::vector<Case> cases = {
      {example(), Json::json_pointer("/schema"), "schema"},
      {example(), Json::json_pointer("/space"), "space"},
      {example(), Json::json_pointer("/space/labels"), "space"},
      {example(), Json::json_pointer("/seminorm"), "seminorm"},
      {example(), Json::json_pointer("/seminorm/kind"), "seminorm.kind"},
      {example(), Json::json_pointer("/seminorm/re"), "seminorm.re"},
      {graph, Json::json_pointer("/seminorm/edges"), "seminorm.edges"},
      {graph, Json::json_pointer("/seminorm/edges/0/a"), "seminorm.edges[0].a"},
      {graph, Json::json_pointer("/seminorm/edges/0/b"), "seminorm.edges[0].b"},
      {graph, Json::json_pointer("/seminorm/edges/0/cost"), "seminorm.edges[0].cost"},
      {resist, Json::json_pointer("/seminorm/edges/1/resistance"), "seminorm.edges[1].resistance"},
      {table, Json::json_pointer("/seminorm/distances"), "seminorm.distances"},
      {example(), Json::json_pointer("/states/0/name"), "states[0].name"},
      {example(), Json::json_pointer("/states/3/weights"), "states[3].weights"},
      {example(), Json::json_pointer("/observables/1/name"), "observables[1].name"},
      {example(), Json::json_pointer("/observables/1/values"), "observables[1].values"},
      {example(), Json::json_pointer("/tasks/0/command"), "tasks[0].command"},
      {matrix, Json::json_pointer("/states/0/re"), "states[0].re"},
      {matrix, Json::json_pointer("/observables/0/re"), "observables[0].re"},
  };
  std::set<std::string> seen;
  for (const Case& c : cases) {
    ASSERT_EQ(diagnostic(c.base), "") << c.field;
    Json broken = c.base;
    broken[c.pointer.parent_pointer()].erase(c.pointer.back());
    const std::string message = diagnostic(broken);
    EXPECT_EQ(message.rfind(c.field + ": ", 0), 0u) << c.field << " -> " << message;
    EXPECT_TRUE(seen.insert(message).second) << "repeated diagnostic: " << message;
  }
}

TEST(Schema, InvalidValues) {
  auto with = [](const std::string& pointer, Json value) {
    Json j = example();
    j[Json::json_pointer(pointer)] = std::move(value);
    return diagnostic(j);
  };
  EXPECT_EQ(with("/schema", "statemetric/2").rfind("schema: ", 0), 0u);
  EXPECT_EQ(with("/seminorm/kind", "bogus").rfind("seminorm.kind: ", 0), 0u);
  EXPECT_EQ(with("/seminorm/re/0/1", 5).rfind("seminorm: ", 0), 0u);  // not skew
  EXPECT_EQ(with("/seminorm/re/1", Json::array({0, 1})).rfind("seminorm.re[1]: ", 0), 0u);
  EXPECT_EQ(with("/seminorm/adjointness", "odd").rfind("seminorm.adjointness: ", 0), 0u);
  EXPECT_EQ(with("/space/labels/1", "x1").rfind("space.labels: ", 0), 0u);
  EXPECT_EQ(with("/states/0/point", "x9").rfind("states[0].point: ", 0), 0u);
  EXPECT_EQ(with("/states/1/name", "d1").rfind("states[1].name: ", 0), 0u);
  EXPECT_EQ(with("/states/3/weights", Json::array({0.5, 0.6, 0.1})).rfind("states[3]: ", 0), 0u);
  EXPECT_EQ(with("/observables/0/values", Json::array({1, "a", 0}))
                .rfind("observables[0].values[1]: ", 0),
            0u);
  EXPECT_EQ(with("/tasks/0/pairs/1/0", "nobody").rfind("tasks[0].pairs[1][0]: ", 0), 0u);
  EXPECT_EQ(with("/tasks/1/checks", Json::array({"sideways"})).rfind("tasks[1].checks[0]: ", 0),
            0u);
  EXPECT_EQ(diagnostic(Json::array()).rfind("(root): ", 0), 0u);
  try {
    parse_problem("{not json");
    FAIL();
  } catch (const FileError& e) {
    EXPECT_EQ(e.field(), "(root)");
  }
}

TEST(Schema, DiracWithRepresentation) {
  Json j = example();
  // Two Hilbert indices for x1; D couples them to each other and to x2, x3.
  j["seminorm"] = {{"kind", "dirac"},
                   {"re", {{0, 1, 0, 1}, {-1, 0, 1, 0}, {0, -1, 0, 2}, {-1, 0, -2, 0}}},
                   {"rep", {"x1", "x1", "x2", "x3"}}};
  const ProblemFile p = parse_problem(j.dump());
  EXPECT_EQ(std::get<DiracSeminorm>(p.seminorm.variant()).op.hilbert_dimension(), 4u);
  j["seminorm"].erase("rep");
  EXPECT_EQ(diagnostic(j).rfind("seminorm.rep: ", 0), 0u);
}

}  // namespace
}  // namespace statemetric::cli
