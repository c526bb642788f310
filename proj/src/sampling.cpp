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


#include "statemetric/sampling.hpp"

#include <cmath>

namespace statemetric {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ProbState random_prob_state(Rng& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  Vector w(n);
  double total = 0.0;
  for (double& x : w) {
    x = e(rng);
    total += x;
  }
  for (double& x : w) x /= total;
  return ProbState(std::move(w));
}

namespace {

HermMatrix normalized_gram(const Matrix& gr, const Matrix& gi) {
  // (Gr + iGi)(Gr + iGi)* = (Gr Grᵀ + Gi Giᵀ) + i(Gi Grᵀ − Gr Giᵀ)
  Matrix re = gr * gr.transpose() + gi * gi.transpose();
  Matrix im = gi * gr.transpose() - gr * gi.transpose();
  HermMatrix h(std::move(re), std::move(im));
  return h * (1.0 / h.trace());
}

}  // namespace

DensityState random_density_state(Rng& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix gr(n, n);
  Matrix gi(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      gr(i, j) = g(rng);
      gi(i, j) = g(rng);
    }
  return DensityState(normalized_gram(gr, gi));
}

DensityState random_pure_state(Rng& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix gr(n, 1);
  Matrix gi(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    gr(i, 0) = g(rng);
    gi(i, 0) = g(rng);
  }
  return DensityState(normalized_gram(gr, gi));
}

State random_state(Rng& rng, const Shape& shape) {
  if (shape.flavor == Flavor::kCommutative) return random_prob_state(rng, shape.n);
  return random_density_state(rng, shape.n);
}

State random_extreme_state(Rng& rng, const Shape& shape) {
  if (shape.flavor == Flavor::kCommutative) {
    std::uniform_int_distribution<std::size_t> pick(0, shape.n - 1);
    return point_state(shape.n, pick(rng));
  }
  return random_pure_state(rng, shape.n);
}

Observable random_observable(Rng& rng, const Shape& shape) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector c(shape.coordinate_count());
  for (double& x : c) x = u(rng);
  return from_coordinates(shape, c);
}

}  // namespace statemetric
