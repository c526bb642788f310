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

#pragma once

#include <stdexcept>
#include <string>

namespace statemetric {

// Invalid input: bad shape, out-of-range index, violated precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ShapeMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class DisconnectedGraph : public DomainError {
 public:
  using DomainError::DomainError;
};

// A numerical kernel could not produce an answer (singular basis,
// eigensolver iteration cap, ...).
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative bound refinement hit its cap. Carries the best bounds found.
class NoConvergence : public SolverFailure {
 public:
  NoConvergence(const std::string& what, double lower, double upper,
                int iterations)
      : SolverFailure(what),
        lower_(lower),
        upper_(upper),
        iterations_(iterations) {}

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  int iterations() const { return iterations_; }

 private:
  double lower_;
  double upper_;
  int iterations_;
};

}  // namespace statemetric
