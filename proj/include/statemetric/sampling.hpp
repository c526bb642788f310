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


// Seeded samplers over state spaces and observables.

#pragma once

#include <cstdint>
#include <random>

#include "statemetric/spaces.hpp"

namespace statemetric {

using Rng = std::mt19937_64;

// splitmix64 of (seed, index): independent per-trial streams whose values
// do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Dirichlet(1, ..., 1) from normalized exponentials.
ProbState random_prob_state(Rng& rng, std::size_t n);
// G·G* / trace(G·G*) with G an i.i.d. complex Gaussian matrix.
DensityState random_density_state(Rng& rng, std::size_t n);
// ψψ* for a normalized complex Gaussian ψ.
DensityState random_pure_state(Rng& rng, std::size_t n);
State random_state(Rng& rng, const Shape& shape);
State random_extreme_state(Rng& rng, const Shape& shape);

// Uniform(-1, 1) coordinates.
Observable random_observable(Rng& rng, const Shape& shape);

}  // namespace statemetric
