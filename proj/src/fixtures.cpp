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


#include "statemetric/fixtures.hpp"

#include <cmath>

#include "statemetric/sampling.hpp"

namespace statemetric::fixtures {

DiracOperator example71(double alpha, double beta) {
  return DiracOperator::commutative(
      Matrix::from_rows({{0, 0, alpha}, {0, 0, beta}, {-alpha, -beta, 0}}));
}

DiracOperator counterexample4x4() {
  return DiracOperator::commutative(
      Matrix::from_rows({{0, 4, -1, 0}, {-4, 0, 2, -2}, {1, -2, 0, -4}, {0, 2, 4, 0}}));
}

CommObservable counterexample4x4_observable() { return CommObservable({4, 2, 0, -1}); }

LeibnizWitness leibniz_witness() {
  ConductanceGraph graph(FiniteSpace::numbered(5), {{0, 1, 0.28569161752011779},
                                                    {0, 2, 4.0210876673721483},
                                                    {2, 3, 3.3595451283507347},
                                                    {0, 4, 2.8948056665249369},
                                                    {0, 3, 0.78649841971627543},
                                                    {1, 4, 0.38033196500390021}});
  CommObservable f({-0.056260438169138283, -0.12226196280316705, 0.041003486055848179,
                    0.12226189845505706, -0.11459622361071525});
  CommObservable g({-0.46840531477753039, -1.016233279452706, 0.33887743337726978,
                    1.013401913079276, -0.95261538382528244});
  return {std::move(graph), std::move(f), std::move(g), kLeibnizWitnessMargin};
}

MetricFunction perturbed_metric(std::uint64_t seed, const EngineOptions& options) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Vector w{u(rng), u(rng), u(rng)};
  const MetricFunction base = metric_of(example71(), options);
  return [w, base](const State& mu, const State& nu) {
    if (mu == nu) return 0.0;
    const ProbState& p = std::get<ProbState>(mu);
    const ProbState& q = std::get<ProbState>(nu);
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) s += w[i] * (p[i] + q[i]);
    return base(mu, nu) + 0.1 * (1.25 + 0.25 * std::cos(5.0 * s));
  };
}

}  // namespace statemetric::fixtures
