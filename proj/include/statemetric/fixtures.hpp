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


// Named instances used by the tests, the acceptance suite and the bundled
// problem files.

#pragma once

#include <cstdint>

#include "statemetric/metric_engine.hpp"
#include "statemetric/properties.hpp"
#include "statemetric/resistance.hpp"
#include "statemetric/seminorms.hpp"

namespace statemetric::fixtures {

// D = [[0,0,α],[0,0,β],[−α,−β,0]] on three points.
DiracOperator example71(double alpha = 1.0, double beta = 2.0);

// Skew-adjoint D on four points for which f = (4,2,0,−1) has
// L(f ∨ 0) > L(f).
DiracOperator counterexample4x4();
CommObservable counterexample4x4_observable();
// L(f ∨ 0) − L(f), frozen from the first computation.
inline constexpr double kCounterexample4x4Margin = 0.12810372581834347;

// Graph and observables with L(fg) > L(f)‖g‖∞ + ‖f‖∞L(g) for the
// resistance seminorm, frozen from find_leibniz_witness(2).
LeibnizWitness leibniz_witness();
inline constexpr double kLeibnizWitnessMargin = 0.028926556953096094;

// ρ_L of example71() plus 0.1·h(μ,ν) off the diagonal, with
// h(μ,ν) = 1.25 + 0.25·cos(5⟨w, μ + ν⟩) for w drawn from `seed`. Since h
// lies in [1, 1.5] the result is still a metric, but not one induced by a
// norm.
MetricFunction perturbed_metric(std::uint64_t seed = 0, const EngineOptions& options = {});

}  // namespace statemetric::fixtures
