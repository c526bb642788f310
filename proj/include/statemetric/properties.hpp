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


// Sampled predicate checks: lattice, weak-lattice and Leibniz inequalities
// for seminorms; metric axioms and the convexity / midpoint / linearity
// conditions for metrics on the state space; norm reconstruction from a
// metric.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "statemetric/metric_engine.hpp"
#include "statemetric/sampling.hpp"
#include "statemetric/seminorms.hpp"
#include "statemetric/spaces.hpp"

namespace statemetric {

// A failed instance of lhs ≤ rhs (lhs = rhs for the equality predicates,
// recorded as lhs = |difference|, rhs = 0). margin = lhs − rhs.
struct Violation {
  std::string kind;
  std::vector<Observable> observables;
  std::vector<State> states;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

struct CheckReport {
  std::string name;
  // Configurations actually evaluated.
  std::size_t trials = 0;
  // Sampled configurations discarded as infeasible.
  std::size_t rejected = 0;
  std::vector<Violation> violations;
  bool pass = true;
  std::vector<std::string> notes;
};

struct CheckOptions {
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  // A predicate lhs ≤ rhs fails when lhs − rhs > slack.
  double slack = 1e-9;
  // Sampling attempts allowed per trial for configurations that can be
  // infeasible.
  std::size_t attempts_per_trial = 50;
};

// Observables added to the random ones: every canonical observable for the
// weak-lattice check, every pair for the lattice and Leibniz checks. The
// indicator functions of single points are always included (once).
CheckReport check_lattice(const SeminormSpec& spec, const CheckOptions& options = {},
                          const std::vector<Observable>& canonical = {});
CheckReport check_weak_lattice(const SeminormSpec& spec, const CheckOptions& options = {},
                               const std::vector<Observable>& canonical = {});
// Pointwise product for commutative specs, Jordan product (ab + ba)/2 for
// matrix specs; ‖·‖ is the sup norm, resp. the operator norm.
CheckReport check_leibniz(const SeminormSpec& spec, const CheckOptions& options = {},
                          const std::vector<Observable>& canonical = {});

using MetricFunction = std::function<double(const State&, const State&)>;
using StateSampler = std::function<State(Rng&)>;

// ρ_L(μ,ν) through the engine.
MetricFunction metric_of(const SeminormSpec& spec, const EngineOptions& options = {});
// Three in four draws are random_state, one in four an extreme state.
StateSampler default_sampler(const Shape& shape);

// d ≥ 0, d(μ,μ) = 0, d(μ,ν) > 0 for μ ≠ ν, symmetry, triangle inequality.
CheckReport check_metric_axioms(const MetricFunction& d, const StateSampler& sample,
                                const CheckOptions& options = {});

// d(μ, tν₁ + (1−t)ν₂) ≤ t·d(μ,ν₁) + (1−t)·d(μ,ν₂).
CheckReport check_convex(const MetricFunction& d, const StateSampler& sample,
                         const CheckOptions& options = {});
// (μ + ν′)/2 = (μ′ + ν)/2 ⇒ d(μ,ν) = d(μ′,ν′); ν′ = μ′ + ν − μ must be a
// state, otherwise the configuration is rejected.
CheckReport check_midpoint_balanced(const MetricFunction& d, const StateSampler& sample,
                                    const CheckOptions& options = {});
// d((μ+μ′)/2, (ν+ν′)/2) ≤ (d(μ,ν) + d(μ′,ν′))/2.
CheckReport check_midpoint_concave(const MetricFunction& d, const StateSampler& sample,
                                   const CheckOptions& options = {});
// d(μ, μ + t·v) = t·d(ν, ν + v) with v = ω − ν and t ∈ (0, 2); rejected
// unless μ + t·v is a state.
CheckReport check_linear(const MetricFunction& d, const StateSampler& sample,
                         const CheckOptions& options = {});

struct NormFromMetric {
  // M(λ) = s·d(λ⁺/s, λ⁻/s) with s the mass of the positive part.
  std::vector<double> values;
  // Pairs of representations λ = μ − ν = μ′ − ν′ that were compared.
  std::size_t representations = 0;
  std::size_t rejected = 0;
  double max_discrepancy = 0.0;
};

// Evaluates M on `requested` and compares `pairs` deliberately distinct
// representations of sampled functionals.
NormFromMetric norm_from_metric(const MetricFunction& d, const StateSampler& sample,
                                const std::vector<ZeroSumFunctional>& requested,
                                std::size_t pairs, std::uint64_t seed);

// μ + Σ, or nullopt if the result leaves the state space by more than
// rounding.
std::optional<State> shifted_state(const State& mu, const ZeroSumFunctional& shift);

}  // namespace statemetric
