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


// ρ_L(μ,ν) = sup{|μ(a) − ν(a)| : L(a) ≤ 1} and the dual norm L′. Polyhedral
// seminorms are solved exactly by linear programming; spectral ones by a
// cutting-plane loop that brackets the answer between a feasible witness
// and an LP relaxation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "statemetric/graphs.hpp"
#include "statemetric/metric_table.hpp"
#include "statemetric/seminorms.hpp"
#include "statemetric/spaces.hpp"

namespace statemetric {

struct EngineOptions {
  double tol = 1e-7;
  int max_iterations = 500;
};

struct CertifiedValue {
  double value = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  int iterations = 0;
  // Exact LP optimum (polyhedral seminorm) rather than a bracketed value.
  bool exact = false;
  // L(witness) ≤ 1 and |λ(witness)| = lower.
  Observable witness;
};

// Throws ShapeMismatch if the states do not fit the spec, NoConvergence
// (carrying the best bounds) once max_iterations relaxations were solved
// without closing the gap.
CertifiedValue state_metric(const SeminormSpec& spec, const State& mu, const State& nu,
                            const EngineOptions& options = {});
CertifiedValue dual_norm(const SeminormSpec& spec, const ZeroSumFunctional& lambda,
                         const EngineOptions& options = {});

// trace|μ − ν|.
double trace_distance(const DensityState& mu, const DensityState& nu);

// Kantorovich–Rubinstein distance with transshipment: LP over potentials f
// with |f(x) − f(y)| ≤ cost on every table pair or graph edge.
double monge_kantorovich(const MetricTable& table, const ProbState& mu, const ProbState& nu);
double monge_kantorovich(const CostGraph& graph, const ProbState& mu, const ProbState& nu);

// ρ_L between all pairs of point masses. Commutative specs only. Entries of
// spectral specs carry the engine tolerance, so the triangle check is
// relaxed by 3·tol.
MetricTable metric_table(const SeminormSpec& spec, const EngineOptions& options = {});

struct Radius {
  double value = 0.0;
  // False when the value is only a lower bound from sampled pure states.
  bool exact = true;
};

// Half the diameter of the state space. Exact for commutative specs and the
// matrix quotient seminorm; otherwise the largest half-distance among
// `pure_samples` seeded pure states taken in consecutive pairs.
Radius radius(const SeminormSpec& spec, const EngineOptions& options = {},
              std::uint64_t seed = 0, std::size_t pure_samples = 1000);

}  // namespace statemetric
