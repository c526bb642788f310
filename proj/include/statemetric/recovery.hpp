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


// Seminorms recovered from the metric: L^e from point masses alone and a
// sampled lower bound on L_ρ over all states.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "statemetric/metric_engine.hpp"
#include "statemetric/metric_table.hpp"
#include "statemetric/seminorms.hpp"
#include "statemetric/spaces.hpp"

namespace statemetric {

// max over point pairs of |f(x) − f(y)| / d(x,y).
double extreme_seminorm(const CommObservable& f, const MetricTable& table);

inline constexpr int kRefinementSteps = 50;

// sup of |(μ − ν)(a)| / ρ(μ,ν) over every pair of point masses
// (commutative specs), then `samples` seeded random state pairs. Each new
// running maximum is sharpened by a short hill climb. Distances enter
// through their certified upper bounds, so the result never exceeds L(a)
// beyond rounding. The value after N samples depends only on the first N,
// hence is nondecreasing in `samples`.
double sampled_recovered_seminorm(const SeminormSpec& spec, const Observable& a,
                                  std::size_t samples, std::uint64_t seed,
                                  const EngineOptions& options = {});

struct NamedObservable {
  std::string name;
  Observable value;
};

struct RecoveryRecord {
  std::string name;
  double lipschitz = 0.0;
  // nullopt for matrix observables, where point masses do not exist.
  std::optional<double> extreme;
  double recovered = 0.0;
  // L^e < L − 1e-6.
  bool extreme_insufficient = false;
  // recovered ≥ L − tol_report.
  bool recovery_witnessed = false;
};

struct RecoveryReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double tol_report = 0.0;
  std::vector<RecoveryRecord> records;
};

RecoveryReport compare(const SeminormSpec& spec, const std::vector<NamedObservable>& observables,
                       std::size_t samples, std::uint64_t seed, double tol_report = 0.05,
                       const EngineOptions& options = {});

}  // namespace statemetric
