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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "statemetric/metric_engine.hpp"
#include "statemetric/metric_table.hpp"
#include "statemetric/properties.hpp"
#include "statemetric/resistance.hpp"

namespace statemetric::cli {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

const std::vector<std::string> kCommands = {"eval", "metric", "table", "mk",
                                            "recover", "resist", "check"};
const std::vector<std::string> kChecks = {"lattice",          "weak-lattice", "leibniz",
                                          "metric-axioms",    "convex",       "midpoint-balanced",
                                          "midpoint-concave", "linear"};

// ---- problem file ----------------------------------------------------------

std::string at(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}
std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& need(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw FileError(path.empty() ? "(root)" : path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw FileError(at(path, key), "missing required field");
  return *it;
}

const Json* maybe(const Json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string read_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw FileError(path, "expected a string");
  return j.get<std::string>();
}

double read_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw FileError(path, "expected a number");
  return j.get<double>();
}

const Json& read_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw FileError(path, "expected an array");
  return j;
}

Vector read_vector(const Json& j, const std::string& path) {
  Vector v;
  for (std::size_t i = 0; i < read_array(j, path).size(); ++i)
    v.push_back(read_number(j[i], at(path, i)));
  return v;
}

Matrix read_matrix(const Json& j, const std::string& path) {
  const Json& rows = read_array(j, path);
  if (rows.empty()) throw FileError(path, "expected a non-empty matrix");
  std::vector<std::vector<double>> values;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    values.push_back(read_vector(rows[i], at(path, i)));
    if (values.back().size() != rows.size())
      throw FileError(at(path, i), "expected " + std::to_string(rows.size()) + " entries");
  }
  return Matrix::from_rows(values);
}

std::string read_name(const Json& entry, const std::string& path, std::set<std::string>& seen) {
  const std::string name = read_string(need(entry, "name", path), at(path, "name"));
  if (name.empty()) throw FileError(at(path, "name"), "empty name");
  if (!seen.insert(name).second) throw FileError(at(path, "name"), "duplicate name '" + name + "'");
  return name;
}

std::size_t read_label(const Json& j, const std::string& path,
                       const std::vector<std::string>& labels) {
  const std::string label = read_string(j, path);
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw FileError(path, "unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

// Hermitian matrix from "re" and optional "im" members of `obj`.
HermMatrix read_hermitian(const Json& obj, const std::string& path, std::size_t n) {
  Matrix re = read_matrix(need(obj, "re", path), at(path, "re"));
  Matrix im = maybe(obj, "im") ? read_matrix(obj["im"], at(path, "im")) : Matrix(n, n);
  if (re.rows() != n) throw FileError(at(path, "re"), "expected a " + std::to_string(n) + "×" +
                                                          std::to_string(n) + " matrix");
  if (im.rows() != n) throw FileError(at(path, "im"), "expected a " + std::to_string(n) + "×" +
                                                          std::to_string(n) + " matrix");
  try {
    return HermMatrix(std::move(re), std::move(im));
  } catch (const DomainError& e) {
    throw FileError(path, e.what());
  }
}

std::vector<Edge> read_edges(const Json& j, const std::string& path, const char* weight,
                             const std::vector<std::string>& labels) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < read_array(j, path).size(); ++i) {
    const std::string p = at(path, i);
    edges.push_back({read_label(need(j[i], "a", p), at(p, "a"), labels),
                     read_label(need(j[i], "b", p), at(p, "b"), labels),
                     read_number(need(j[i], weight, p), at(p, weight))});
  }
  return edges;
}

DiracOperator::Adjointness read_adjointness(const Json& obj, const std::string& path) {
  const Json* a = maybe(obj, "adjointness");
  if (!a) return DiracOperator::Adjointness::kSkew;
  const std::string s = read_string(*a, at(path, "adjointness"));
  if (s == "skew") return DiracOperator::Adjointness::kSkew;
  if (s == "self") return DiracOperator::Adjointness::kSelf;
  throw FileError(at(path, "adjointness"), "expected 'skew' or 'self'");
}

SeminormSpec read_dirac(const Json& j, const std::string& path, const Shape& shape,
                        const std::vector<std::string>& labels) {
  const Matrix re = read_matrix(need(j, "re", path), at(path, "re"));
  const std::size_t m = re.rows();
  const Matrix im = maybe(j, "im") ? read_matrix(j["im"], at(path, "im")) : Matrix(m, m);
  if (im.rows() != m) throw FileError(at(path, "im"), "size differs from 're'");
  const auto adjointness = read_adjointness(j, path);
  if (shape.flavor == Flavor::kMatrix)
    return DiracOperator::matrix(re, im, shape.n, adjointness);
  if (const Json* rep = maybe(j, "rep")) {
    std::vector<std::size_t> points;
    for (std::size_t i = 0; i < read_array(*rep, at(path, "rep")).size(); ++i)
      points.push_back(read_label((*rep)[i], at(at(path, "rep"), i), labels));
    return DiracOperator::commutative(re, im, std::move(points), shape.n, adjointness);
  }
  if (m != shape.n)
    throw FileError(at(path, "rep"), "missing required field (D is larger than the space)");
  std::vector<std::size_t> identity(m);
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  return DiracOperator::commutative(re, im, std::move(identity), shape.n, adjointness);
}

SeminormSpec read_seminorm(const Json& j, const Shape& shape,
                           const std::vector<std::string>& labels) {
  const std::string path = "seminorm";
  const std::string kind = read_string(need(j, "kind", path), at(path, "kind"));
  const bool commutative = shape.flavor == Flavor::kCommutative;
  if (!commutative && kind != "dirac" && kind != "quotient")
    throw FileError(at(path, "kind"), "'" + kind + "' needs a space with labels");
  try {
    if (kind == "dirac") return read_dirac(j, path, shape, labels);
    if (kind == "quotient") return SeminormSpec::quotient(shape);
    const FiniteSpace space(labels);
    if (kind == "graph-lip")
      return CostGraph(space,
                       read_edges(need(j, "edges", path), at(path, "edges"), "cost", labels));
    if (kind == "resistance")
      return ConductanceGraph(
          space, read_edges(need(j, "edges", path), at(path, "edges"), "resistance", labels));
    if (kind == "metric-lip") {
      Matrix d = read_matrix(need(j, "distances", path), at(path, "distances"));
      if (d.rows() != shape.n)
        throw FileError(at(path, "distances"), "size differs from the space");
      return MetricTable(space, std::move(d));
    }
  } catch (const FileError&) {
    throw;
  } catch (const DomainError& e) {
    throw FileError(path, e.what());
  }
  throw FileError(at(path, "kind"), "unknown seminorm kind '" + kind + "'");
}

State read_state(const Json& j, const std::string& path, const Shape& shape,
                 const std::vector<std::string>& labels) {
  try {
    if (shape.flavor == Flavor::kMatrix) return DensityState(read_hermitian(j, path, shape.n));
    if (const Json* point = maybe(j, "point"))
      return point_state(shape.n, read_label(*point, at(path, "point"), labels));
    Vector w = read_vector(need(j, "weights", path), at(path, "weights"));
    if (w.size() != shape.n) throw FileError(at(path, "weights"), "size differs from the space");
    return ProbState(std::move(w));
  } catch (const FileError&) {
    throw;
  } catch (const DomainError& e) {
    throw FileError(path, e.what());
  }
}

Observable read_observable(const Json& j, const std::string& path, const Shape& shape) {
  if (shape.flavor == Flavor::kMatrix) return MatObservable(read_hermitian(j, path, shape.n));
  Vector v = read_vector(need(j, "values", path), at(path, "values"));
  if (v.size() != shape.n) throw FileError(at(path, "values"), "size differs from the space");
  return CommObservable(std::move(v));
}

std::vector<std::string> read_names(const Json& j, const std::string& path,
                                    const std::set<std::string>& declared, const char* what) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < read_array(j, path).size(); ++i) {
    names.push_back(read_string(j[i], at(path, i)));
    if (!declared.count(names.back()))
      throw FileError(at(path, i), std::string("unknown ") + what + " '" + names.back() + "'");
  }
  return names;
}

Task read_task(const Json& j, const std::string& path, const std::set<std::string>& states,
               const std::set<std::string>& observables) {
  Task task;
  task.command = read_string(need(j, "command", path), at(path, "command"));
  if (std::find(kCommands.begin(), kCommands.end(), task.command) == kCommands.end())
    throw FileError(at(path, "command"), "unknown command '" + task.command + "'");
  if (const Json* pairs = maybe(j, "pairs")) {
    const std::string p = at(path, "pairs");
    for (std::size_t i = 0; i < read_array(*pairs, p).size(); ++i) {
      const std::vector<std::string> pair = read_names((*pairs)[i], at(p, i), states, "state");
      if (pair.size() != 2) throw FileError(at(p, i), "expected two state names");
      task.pairs.emplace_back(pair[0], pair[1]);
    }
  }
  if (const Json* obs = maybe(j, "observables"))
    task.observables = read_names(*obs, at(path, "observables"), observables, "observable");
  if (const Json* checks = maybe(j, "checks")) {
    const std::set<std::string> known(kChecks.begin(), kChecks.end());
    task.checks = read_names(*checks, at(path, "checks"), known, "check");
  }
  return task;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FileError("(root)", std::string("invalid JSON: ") + e.what());
  }
  const std::string schema = read_string(need(root, "schema", ""), "schema");
  if (schema != kSchema) throw FileError("schema", "unsupported schema '" + schema + "'");

  const Json& space = need(root, "space", "");
  Shape shape;
  std::vector<std::string> labels;
  if (const Json* l = maybe(space, "labels")) {
    for (std::size_t i = 0; i < read_array(*l, "space.labels").size(); ++i)
      labels.push_back(read_string((*l)[i], at("space.labels", i)));
    try {
      FiniteSpace check(labels);
    } catch (const DomainError& e) {
      throw FileError("space.labels", e.what());
    }
    shape = {Flavor::kCommutative, labels.size()};
  } else if (const Json* m = maybe(space, "matrix")) {
    if (!m->is_number_integer() || m->get<long long>() < 2)
      throw FileError("space.matrix", "expected an integer ≥ 2");
    shape = {Flavor::kMatrix, m->get<std::size_t>()};
  } else {
    throw FileError("space", "needs 'labels' or 'matrix'");
  }

  SeminormSpec seminorm = read_seminorm(need(root, "seminorm", ""), shape, labels);

  std::vector<NamedState> states;
  std::set<std::string> state_names;
  if (const Json* s = maybe(root, "states"))
    for (std::size_t i = 0; i < read_array(*s, "states").size(); ++i) {
      const std::string path = at("states", i);
      std::string name = read_name((*s)[i], path, state_names);
      states.push_back({std::move(name), read_state((*s)[i], path, shape, labels)});
    }

  std::vector<NamedObservable> observables;
  std::set<std::string> observable_names;
  if (const Json* o = maybe(root, "observables"))
    for (std::size_t i = 0; i < read_array(*o, "observables").size(); ++i) {
      const std::string path = at("observables", i);
      std::string name = read_name((*o)[i], path, observable_names);
      observables.push_back({std::move(name), read_observable((*o)[i], path, shape)});
    }

  std::vector<Task> tasks;
  if (const Json* t = maybe(root, "tasks"))
    for (std::size_t i = 0; i < read_array(*t, "tasks").size(); ++i)
      tasks.push_back(read_task((*t)[i], at("tasks", i), state_names, observable_names));

  return {shape, std::move(labels), std::move(seminorm), std::move(states),
          std::move(observables), std::move(tasks)};
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("(file)", "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

namespace {

// ---- output ----------------------------------------------------------------

using Cell = std::variant<std::monostate, std::string, double, long long, bool>;

struct Section {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Settings {
  EngineOptions engine;
  std::uint64_t seed = 0;
  std::size_t samples = 2000;
  std::size_t trials = 200;
  std::string format = "table";
  bool strict = false;
  bool full_precision = false;
};

std::string format_number(double x, bool full) {
  char buf[64];
  if (full) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
  } else {
    if (std::abs(x) < 5e-8) x = 0.0;
    std::snprintf(buf, sizeof buf, "%.7f", x);
  }
  return buf;
}

std::string format_cell(const Cell& c, bool full) {
  return std::visit(
      [full](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "-";
        else if constexpr (std::is_same_v<T, std::string>) return v;
        else if constexpr (std::is_same_v<T, double>) return format_number(v, full);
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        else return v ? "yes" : "no";
      },
      c);
}

OrderedJson cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> OrderedJson {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
        else return v;
      },
      c);
}

// Display width in code points.
std::size_t width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s) w += (c & 0xC0) != 0x80;
  return w;
}

void write_table(std::ostream& out, const std::vector<Section>& sections, bool full) {
  bool first = true;
  for (const Section& s : sections) {
    if (!first) out << '\n';
    first = false;
    out << "# " << s.name << '\n';
    std::vector<std::vector<std::string>> text(s.rows.size());
    std::vector<std::size_t> w;
    for (const std::string& c : s.columns) w.push_back(width(c));
    for (std::size_t r = 0; r < s.rows.size(); ++r)
      for (std::size_t c = 0; c < s.columns.size(); ++c) {
        text[r].push_back(format_cell(s.rows[r][c], full));
        w[c] = std::max(w[c], width(text[r][c]));
      }
    auto line = [&](const std::vector<std::string>& cells, const std::vector<Cell>* row) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const std::string pad(w[c] - width(cells[c]), ' ');
        const bool right = row && (std::holds_alternative<double>((*row)[c]) ||
                                   std::holds_alternative<long long>((*row)[c]));
        if (c) out << "  ";
        if (right) out << pad << cells[c];
        else out << cells[c] << (c + 1 < cells.size() ? pad : "");
      }
      out << '\n';
    };
    line(s.columns, nullptr);
    for (std::size_t r = 0; r < s.rows.size(); ++r) line(text[r], &s.rows[r]);
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_csv(std::ostream& out, const std::vector<Section>& sections, bool full) {
  bool first = true;
  for (const Section& s : sections) {
    if (!first) out << '\n';
    first = false;
    out << "section";
    for (const std::string& c : s.columns) out << ',' << csv_field(c);
    out << '\n';
    for (const auto& row : s.rows) {
      out << csv_field(s.name);
      for (const Cell& c : row) out << ',' << csv_field(format_cell(c, full));
      out << '\n';
    }
  }
}

void write_json(std::ostream& out, const std::string& command,
                const std::vector<Section>& sections) {
  OrderedJson doc;
  doc["schema"] = kSchema;
  doc["command"] = command;
  OrderedJson results = OrderedJson::object();
  for (const Section& s : sections) {
    OrderedJson rows = OrderedJson::array();
    for (const auto& row : s.rows) {
      OrderedJson r;
      for (std::size_t c = 0; c < s.columns.size(); ++c) r[s.columns[c]] = cell_json(row[c]);
      rows.push_back(std::move(r));
    }
    results[s.name] = std::move(rows);
  }
  doc["results"] = std::move(results);
  out << doc.dump(2) << '\n';
}

// ---- commands --------------------------------------------------------------

const Task* task_for(const ProblemFile& p, const std::string& command) {
  for (const Task& t : p.tasks)
    if (t.command == command) return &t;
  return nullptr;
}

std::vector<NamedState> states_or_points(const ProblemFile& p) {
  if (p.states.size() >= 2 || p.shape.flavor == Flavor::kMatrix) return p.states;
  std::vector<NamedState> points;
  for (std::size_t i = 0; i < p.shape.n; ++i)
    points.push_back({p.labels[i], point_state(p.shape.n, i)});
  return points;
}

// Pairs named by a task, otherwise every unordered pair of declared states
// (of points when fewer than two states are declared).
std::vector<std::pair<NamedState, NamedState>> state_pairs(const ProblemFile& p,
                                                           const std::string& command) {
  std::vector<std::pair<NamedState, NamedState>> pairs;
  if (const Task* t = task_for(p, command); t && !t->pairs.empty()) {
    auto find = [&](const std::string& name) {
      return *std::find_if(p.states.begin(), p.states.end(),
                           [&](const NamedState& s) { return s.name == name; });
    };
    for (const auto& [a, b] : t->pairs) pairs.emplace_back(find(a), find(b));
    return pairs;
  }
  const std::vector<NamedState> all = states_or_points(p);
  if (all.size() < 2) throw FileError("states", "'" + command + "' needs at least two states");
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) pairs.emplace_back(all[i], all[j]);
  return pairs;
}

std::vector<NamedObservable> selected_observables(const ProblemFile& p,
                                                  const std::string& command) {
  const Task* t = task_for(p, command);
  if (!t || t->observables.empty()) return p.observables;
  std::vector<NamedObservable> out;
  for (const std::string& name : t->observables)
    out.push_back(*std::find_if(p.observables.begin(), p.observables.end(),
                                [&](const NamedObservable& o) { return o.name == name; }));
  return out;
}

std::vector<Section> run_eval(const ProblemFile& p) {
  if (p.observables.empty()) throw FileError("observables", "'eval' needs at least one observable");
  Section s{"seminorm", {"observable", "L", "quotient_norm"}, {}};
  for (const NamedObservable& o : selected_observables(p, "eval"))
    s.rows.push_back({o.name, eval(p.seminorm, o.value), quotient_norm(o.value)});
  return {s};
}

std::vector<Section> run_metric(const ProblemFile& p, const Settings& st) {
  Section s{"metric", {"mu", "nu", "distance", "lower", "upper", "iterations", "exact"}, {}};
  for (const auto& [mu, nu] : state_pairs(p, "metric")) {
    const CertifiedValue v = state_metric(p.seminorm, mu.value, nu.value, st.engine);
    s.rows.push_back({mu.name, nu.name, v.value, v.lower, v.upper,
                      static_cast<long long>(v.iterations), v.exact});
  }
  return {s};
}

void require_labels(const ProblemFile& p, const std::string& command) {
  if (p.shape.flavor != Flavor::kCommutative)
    throw FileError("space", "'" + command + "' needs a space with labels");
}

Section distance_section(const std::string& name, const std::vector<std::string>& labels,
                         const Matrix& d) {
  Section s{name, {""}, {}};
  for (const std::string& l : labels) s.columns.push_back(l);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::vector<Cell> row{labels[i]};
    for (std::size_t j = 0; j < labels.size(); ++j) row.push_back(d(i, j));
    s.rows.push_back(std::move(row));
  }
  return s;
}

std::vector<Section> run_mk(const ProblemFile& p) {
  require_labels(p, "mk");
  const auto& v = p.seminorm.variant();
  Section s{"transport", {"mu", "nu", "distance"}, {}};
  for (const auto& [mu, nu] : state_pairs(p, "mk")) {
    const auto& a = std::get<ProbState>(mu.value);
    const auto& b = std::get<ProbState>(nu.value);
    double d = 0.0;
    if (const auto* g = std::get_if<GraphLipSeminorm>(&v)) d = monge_kantorovich(g->graph, a, b);
    else if (const auto* t = std::get_if<MetricLipSeminorm>(&v))
      d = monge_kantorovich(t->table, a, b);
    else throw FileError("seminorm.kind", "'mk' needs a graph-lip or metric-lip seminorm");
    s.rows.push_back({mu.name, nu.name, d});
  }
  return {s};
}

std::vector<Section> run_recover(const ProblemFile& p, const Settings& st) {
  if (p.observables.empty())
    throw FileError("observables", "'recover' needs at least one observable");
  const RecoveryReport r = compare(p.seminorm, selected_observables(p, "recover"), st.samples,
                                   st.seed, 0.05, st.engine);
  Section s{
      "recovery",
      {"observable", "L", "extreme", "recovered", "extreme_insufficient", "recovery_witnessed"},
      {}};
  for (const RecoveryRecord& rec : r.records) {
    const Cell extreme = rec.extreme ? Cell(*rec.extreme) : Cell();
    s.rows.push_back({rec.name, rec.lipschitz, extreme, rec.recovered, rec.extreme_insufficient,
                      rec.recovery_witnessed});
  }
  return {s};
}

std::vector<Section> run_resist(const ProblemFile& p) {
  const auto* r = std::get_if<ResistanceSeminorm>(&p.seminorm.variant());
  if (!r) throw FileError("seminorm.kind", "'resist' needs a resistance seminorm");
  const std::size_t n = p.shape.n;
  Section pairs{"effective-resistance", {"x", "y", "resistance", "spanning_tree"}, {}};
  const Matrix trees = spanning_tree_resistance_table(r->graph);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      pairs.rows.push_back({p.labels[x], p.labels[y], effective_resistance(r->graph, x, y),
                            trees(x, y)});
  std::vector<Section> out{pairs};
  if (p.states.size() >= 2) {
    Section states{"state-metric", {"mu", "nu", "distance"}, {}};
    for (const auto& [mu, nu] : state_pairs(p, "resist"))
      states.rows.push_back({mu.name, nu.name,
                             resistance_metric(r->graph, std::get<ProbState>(mu.value),
                                               std::get<ProbState>(nu.value))});
    out.push_back(std::move(states));
  }
  return out;
}

bool exact_metric(const SeminormSpec& spec) {
  return !spec.is_dirac() && spec.shape().flavor == Flavor::kCommutative;
}

std::string describe_values(const Vector& v) {
  std::string s = "(";
  char buf[32];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.7g", v[i]);
    s += (i ? " " : "") + std::string(buf);
  }
  return s + ")";
}

std::string describe(const Observable& a, const ProblemFile& p) {
  for (const NamedObservable& o : p.observables)
    if (o.value == a) return o.name;
  if (const auto* c = std::get_if<CommObservable>(&a)) return describe_values(c->values());
  return "<" + std::to_string(shape_of(a).n) + "×" + std::to_string(shape_of(a).n) + " observable>";
}

std::string describe(const State& mu, const ProblemFile& p) {
  for (const NamedState& s : p.states)
    if (s.value == mu) return s.name;
  if (const auto* w = std::get_if<ProbState>(&mu)) {
    for (std::size_t i = 0; i < p.shape.n; ++i)
      if (*w == point_state(p.shape.n, i)) return "δ" + p.labels[i];
    return describe_values(w->weights());
  }
  return "<" + std::to_string(p.shape.n) + "×" + std::to_string(p.shape.n) + " density>";
}

template <typename T>
std::string join_described(const std::vector<T>& items, const ProblemFile& p) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? " " : "") + describe(items[i], p);
  return s;
}

CheckReport run_check(const std::string& name, const ProblemFile& p, const Settings& st,
                      const std::vector<Observable>& canonical) {
  CheckOptions o;
  o.trials = st.trials;
  o.seed = st.seed;
  if (name == "lattice") return check_lattice(p.seminorm, o, canonical);
  if (name == "weak-lattice") return check_weak_lattice(p.seminorm, o, canonical);
  if (name == "leibniz") return check_leibniz(p.seminorm, o, canonical);
  // Engine-derived distances carry errors of order tol.
  if (!exact_metric(p.seminorm)) o.slack += 4.0 * st.engine.tol;
  const MetricFunction d = metric_of(p.seminorm, st.engine);
  const StateSampler sample = default_sampler(p.shape);
  if (name == "metric-axioms") return check_metric_axioms(d, sample, o);
  if (name == "convex") return check_convex(d, sample, o);
  if (name == "midpoint-balanced") return check_midpoint_balanced(d, sample, o);
  if (name == "midpoint-concave") return check_midpoint_concave(d, sample, o);
  return check_linear(d, sample, o);
}

std::vector<Section> run_checks(const ProblemFile& p, const Settings& st,
                                std::vector<std::string> names, bool& violated) {
  if (names.empty())
    if (const Task* t = task_for(p, "check")) names = t->checks;
  const bool matrix = p.shape.flavor == Flavor::kMatrix;
  if (names.empty())
    for (const std::string& c : kChecks)
      if (!matrix || (c != "lattice" && c != "weak-lattice")) names.push_back(c);
  std::vector<Observable> canonical;
  for (const NamedObservable& o : selected_observables(p, "check")) canonical.push_back(o.value);

  Section summary{"checks", {"check", "trials", "rejected", "violations", "pass"}, {}};
  Section violations{"violations",
                     {"check", "kind", "observables", "states", "t", "lhs", "rhs", "margin"},
                     {}};
  Section notes{"notes", {"check", "note"}, {}};
  for (const std::string& name : names) {
    const CheckReport r = run_check(name, p, st, canonical);
    summary.rows.push_back({name, static_cast<long long>(r.trials),
                            static_cast<long long>(r.rejected),
                            static_cast<long long>(r.violations.size()), r.pass});
    const bool has_t = name == "convex" || name == "linear";
    auto text = [](std::string s) { return s.empty() ? Cell() : Cell(std::move(s)); };
    for (const Violation& v : r.violations)
      violations.rows.push_back({name, v.kind, text(join_described(v.observables, p)),
                                 text(join_described(v.states, p)), has_t ? Cell(v.t) : Cell(),
                                 v.lhs, v.rhs, v.margin});
    for (const std::string& note : r.notes) notes.rows.push_back({name, note});
    violated = violated || !r.pass;
  }
  std::vector<Section> out{summary, violations};
  if (!notes.rows.empty()) out.push_back(notes);
  return out;
}

// `table --format json` emits a problem file whose seminorm is the table
// itself, so the output can be fed back in.
void write_table_problem(std::ostream& out, const ProblemFile& p, const MetricTable& t) {
  OrderedJson doc;
  doc["schema"] = kSchema;
  doc["space"]["labels"] = p.labels;
  OrderedJson rows = OrderedJson::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (std::size_t j = 0; j < t.size(); ++j) row.push_back(t(i, j));
    rows.push_back(std::move(row));
  }
  doc["seminorm"]["kind"] = "metric-lip";
  doc["seminorm"]["distances"] = std::move(rows);
  doc["source"] = p.seminorm.kind();
  out << doc.dump(2) << '\n';
}

void emit(std::ostream& out, const std::string& command, const std::vector<Section>& sections,
          const Settings& st) {
  if (st.format == "json") write_json(out, command, sections);
  else if (st.format == "csv") write_csv(out, sections, st.full_precision);
  else write_table(out, sections, st.full_precision);
}

int dispatch(const std::string& command, const std::vector<std::string>& positionals,
             const Settings& st, std::ostream& out) {
  const std::string file = positionals.back();
  const std::vector<std::string> extra(positionals.begin(), positionals.end() - 1);
  if (command == "check") {
    for (const std::string& name : extra)
      if (std::find(kChecks.begin(), kChecks.end(), name) == kChecks.end())
        throw FileError("(command line)", "unknown check '" + name + "'");
  } else if (!extra.empty()) {
    throw FileError("(command line)", "'" + command + "' takes a single problem file");
  }
  const ProblemFile p = load_problem(file);
  bool violated = false;
  std::vector<Section> sections;
  if (command == "eval") sections = run_eval(p);
  else if (command == "metric") sections = run_metric(p, st);
  else if (command == "mk") sections = run_mk(p);
  else if (command == "recover") sections = run_recover(p, st);
  else if (command == "resist") sections = run_resist(p);
  else if (command == "check") sections = run_checks(p, st, extra, violated);
  else {
    require_labels(p, "table");
    const MetricTable t = metric_table(p.seminorm, st.engine);
    if (st.format == "json") {
      write_table_problem(out, p, t);
      return kExitOk;
    }
    sections = {distance_section("distances", p.labels, t.distances())};
  }
  emit(out, command, sections, st);
  return violated && st.strict ? kExitViolations : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metrics on state spaces from Lipschitz seminorms", "statemetric"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings st;
  app.add_option("--tol", st.engine.tol, "Gap between certified bounds")->capture_default_str();
  app.add_option("--seed", st.seed, "Seed for sampled quantities")->capture_default_str();
  app.add_option("--samples", st.samples, "State pairs sampled by 'recover'")
      ->capture_default_str();
  app.add_option("--trials", st.trials, "Configurations per check")->capture_default_str();
  app.add_option("--format", st.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  app.add_flag("--strict", st.strict, "Exit with status 3 when a check finds violations");
  app.add_flag("--precision", st.full_precision, "Print 17 significant digits");

  std::map<std::string, std::vector<std::string>> positionals;
  const std::map<std::string, std::string> help = {
      {"eval", "Seminorm of each observable"},
      {"metric", "Certified distance for pairs of states"},
      {"table", "Distances between points"},
      {"mk", "Transport distance for pairs of states"},
      {"recover", "Compare L with the seminorms recovered from the metric"},
      {"resist", "Effective resistances and resistance distances"},
      {"check", "Run property checks; names may precede the file"}};
  for (const std::string& c : kCommands) {
    CLI::App* sub = app.add_subcommand(c, help.at(c));
    sub->add_option("args", positionals[c], c == "check" ? "[check...] file" : "file")
        ->required();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitMalformed;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, positionals[command], st, out);
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << " (lower " << format_number(e.lower(), true) << ", upper "
        << format_number(e.upper(), true) << ", iterations " << e.iterations() << ")\n";
    return kExitNumerical;
  } catch (const SolverFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  }
}

}  // namespace statemetric::cli
