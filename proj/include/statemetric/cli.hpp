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


// Batch front end: problem files in, deterministic tables out.
//
// Problem files are JSON objects with "schema": "statemetric/1", a "space",
// a "seminorm" and optional named "states", "observables" and "tasks".
// Exit codes: 0 success (including checks that found violations), 1 a
// malformed file or command line, 2 a numerical failure, 3 violations
// under --strict.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "statemetric/error.hpp"
#include "statemetric/recovery.hpp"
#include "statemetric/seminorms.hpp"
#include "statemetric/spaces.hpp"

namespace statemetric::cli {

inline constexpr char kSchema[] = "statemetric/1";

inline constexpr int kExitOk = 0;
inline constexpr int kExitMalformed = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitViolations = 3;

// A problem file that does not fit the schema. what() starts with the
// path of the offending field, e.g. "seminorm.edges[2].a: unknown label".
class FileError : public DomainError {
 public:
  FileError(const std::string& field, const std::string& message)
      : DomainError(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct NamedState {
  std::string name;
  State value;
};

// Restricts a subcommand to the listed names. Empty lists mean "all".
struct Task {
  std::string command;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::string> observables;
  std::vector<std::string> checks;
};

struct ProblemFile {
  Shape shape;
  // Point labels; empty for matrix algebras.
  std::vector<std::string> labels;
  SeminormSpec seminorm;
  std::vector<NamedState> states;
  std::vector<NamedObservable> observables;
  std::vector<Task> tasks;
};

ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::string& path);

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace statemetric::cli
