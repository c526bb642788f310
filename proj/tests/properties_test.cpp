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


#include "statemetric/properties.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "statemetric/error.hpp"
#include "statemetric/fixtures.hpp"
#include "statemetric/resistance.hpp"
#include "statemetric/sampling.hpp"
#include "test_support.hpp"

namespace statemetric {
namespace {

double max_margin(const CheckReport& r) {
  double m = -INFINITY;
  for (const Violation& v : r.violations) m = std::max(m, v.margin);
  return m;
}

const Violation* find_kind(const CheckReport& r, const std::string& kind) {
  for (const Violation& v : r.violations)
    if (v.kind == kind) return &v;
  return nullptr;
}

MetricTable path_table() {
  return MetricTable(FiniteSpace::numbered(4), Matrix::from_rows({{0, 1, 2, 3},
                                                                   {1, 0, 1, 2},
                                                                   {2, 1, 0, 1},
                                                                   {3, 2, 1, 0}}));
}

StateSampler point_sampler(std::size_t n) {
  return [n](Rng& rng) -> State {
    return point_state(n, std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  };
}

// Engine-computed metrics carry an error of order tol times the scale.
CheckOptions engine_slack() {
  CheckOptions o;
  o.slack = 1e-9 + 4 * EngineOptions{}.tol;
  return o;
}

TEST(Lattice, MetricLipPasses) {
  const CheckReport r = check_lattice(SeminormSpec(path_table()));
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.trials, 200u + 6u);
}

// Shortest-path metric of a random connected graph.
MetricTable random_metric(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = i == j ? 0.0 : INFINITY;
  std::uniform_real_distribution<double> cost(0.5, 3.0);
  for (const auto& [a, b] : testing::random_connected_edges(rng, n)) {
    d(a, b) = cost(rng);
    d(b, a) = d(a, b);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  return MetricTable(FiniteSpace::numbered(n), d);
}

TEST(Lattice, RandomMetricLipPasses) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CheckReport r = check_lattice(SeminormSpec(random_metric(s, 3 + s % 4)));
    EXPECT_TRUE(r.pass) << "metric " << s << " margin " << max_margin(r);
  }
}

TEST(Lattice, ThreePointDiracFails) {
  const std::vector<Observable> canonical = {CommObservable({1, 0, 0}),
                                             CommObservable({0, 1, 0})};
  const CheckReport r = check_lattice(fixtures::example71(), {}, canonical);
  EXPECT_FALSE(r.pass);
  const Violation& v = r.violations.front();
  EXPECT_EQ(v.kind, "lattice");
  EXPECT_NEAR(v.lhs, std::sqrt(5.0), 1e-9);
  EXPECT_NEAR(v.rhs, 2.0, 1e-9);
  EXPECT_NEAR(v.margin, std::sqrt(5.0) - 2.0, 1e-9);
}

TEST(Lattice, ViolationReplays) {
  const SeminormSpec spec(fixtures::example71());
  const CheckReport r = check_lattice(spec);
  ASSERT_FALSE(r.violations.empty());
  for (const Violation& v : r.violations) {
    const auto& f = std::get<CommObservable>(v.observables[0]);
    const auto& g = std::get<CommObservable>(v.observables[1]);
    const double lhs = eval(spec, lattice_join(f, g));
    const double rhs = std::max(eval(spec, f), eval(spec, g));
    EXPECT_NEAR(lhs - rhs, v.margin, 1e-12);
  }
}

TEST(Lattice, RejectsMatrixSpec) {
  EXPECT_THROW(check_lattice(SeminormSpec::quotient({Flavor::kMatrix, 2})), DomainError);
}

TEST(WeakLattice, Counterexample4x4Fails) {
  const CheckReport r = check_weak_lattice(fixtures::counterexample4x4(), {},
                                           {fixtures::counterexample4x4_observable()});
  EXPECT_FALSE(r.pass);
  const Violation& v = r.violations.front();
  EXPECT_EQ(std::get<CommObservable>(v.observables[0]).values(),
            fixtures::counterexample4x4_observable().values());
  EXPECT_NEAR(v.lhs, 11.503054326015318, 1e-9);
  EXPECT_NEAR(v.rhs, 11.374950600196975, 1e-9);
  EXPECT_NEAR(v.margin, fixtures::kCounterexample4x4Margin, 1e-9);
}

TEST(WeakLattice, ThreePointSkewDiracPasses) {
  std::mt19937_64 rng(3);
  CheckOptions o;
  o.trials = 200;
  for (int s = 0; s < 50; ++s) {
    Matrix d(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        d(i, j) = std::uniform_real_distribution<double>(-1, 1)(rng);
        d(j, i) = -d(i, j);
      }
    o.seed = static_cast<std::uint64_t>(s);
    const CheckReport r = check_weak_lattice(DiracOperator::commutative(d), o);
    EXPECT_TRUE(r.pass) << "spec " << s << " margin " << max_margin(r);
  }
}

TEST(WeakLattice, MetricLipPasses) {
  EXPECT_TRUE(check_weak_lattice(SeminormSpec(path_table())).pass);
}

TEST(Leibniz, DiracAndMetricLipPass) {
  EXPECT_TRUE(check_leibniz(fixtures::example71()).pass);
  EXPECT_TRUE(check_leibniz(fixtures::counterexample4x4()).pass);
  EXPECT_TRUE(check_leibniz(SeminormSpec(path_table())).pass);
}

TEST(Leibniz, MatrixSpecNotesJordanProduct) {
  const CheckReport r = check_leibniz(SeminormSpec::quotient({Flavor::kMatrix, 2}));
  ASSERT_EQ(r.notes.size(), 1u);
  EXPECT_NE(r.notes[0].find("Jordan"), std::string::npos);
}

TEST(Leibniz, ResistanceWitnessFails) {
  const LeibnizWitness w = fixtures::leibniz_witness();
  EXPECT_NEAR(leibniz_margin(w.graph, w.f, w.g), fixtures::kLeibnizWitnessMargin, 1e-12);
  const CheckReport r = check_leibniz(w.graph, {}, {w.f, w.g});
  EXPECT_FALSE(r.pass);
  EXPECT_GE(max_margin(r), fixtures::kLeibnizWitnessMargin - 1e-12);
}

TEST(MetricAxioms, EngineMetricsPass) {
  const Shape s3{Flavor::kCommutative, 3};
  EXPECT_TRUE(check_metric_axioms(metric_of(fixtures::example71()), default_sampler(s3),
                                  engine_slack())
                  .pass);
  const SeminormSpec table(path_table());
  EXPECT_TRUE(check_metric_axioms(metric_of(table), default_sampler(table.shape())).pass);
}

TEST(MetricAxioms, SquaredResistanceFailsTriangle) {
  const ConductanceGraph path(FiniteSpace::numbered(3), {{0, 1, 1.0}, {1, 2, 1.0}});
  const MetricFunction d = [&](const State& mu, const State& nu) {
    const double r = resistance_metric(path, std::get<ProbState>(mu), std::get<ProbState>(nu));
    return r * r;
  };
  const CheckReport r = check_metric_axioms(d, point_sampler(3));
  EXPECT_FALSE(r.pass);
  const Violation* v = find_kind(r, "triangle");
  ASSERT_NE(v, nullptr);
  EXPECT_NEAR(max_margin(r), 2.0, 1e-9);  // 4 against 1 + 1
  EXPECT_EQ(find_kind(r, "symmetry"), nullptr);
}

TEST(MetricAxioms, ZeroFailsPositivity) {
  const MetricFunction zero = [](const State&, const State&) { return 0.0; };
  const CheckReport r = check_metric_axioms(zero, point_sampler(3));
  EXPECT_FALSE(r.pass);
  EXPECT_NE(find_kind(r, "positivity"), nullptr);
  EXPECT_EQ(find_kind(r, "triangle"), nullptr);
}

TEST(MetricAxioms, AsymmetricFailsSymmetry) {
  const MetricFunction d = [](const State& mu, const State& nu) {
    const double a = std::get<ProbState>(mu)[0];
    const double b = std::get<ProbState>(nu)[0];
    return mu == nu ? 0.0 : 1.0 + (a > b ? 0.5 : 0.0);
  };
  EXPECT_NE(find_kind(check_metric_axioms(d, point_sampler(3)), "symmetry"), nullptr);
}

using MetricCheck = CheckReport (*)(const MetricFunction&, const StateSampler&,
                                    const CheckOptions&);
const MetricCheck kMetricChecks[] = {&check_convex, &check_midpoint_balanced,
                                     &check_midpoint_concave, &check_linear};

TEST(MetricChecks, EngineMetricsPass) {
  const Shape s3{Flavor::kCommutative, 3};
  const MetricFunction d71 = metric_of(fixtures::example71());
  const SeminormSpec table(path_table());
  const MetricFunction dt = metric_of(table);
  for (MetricCheck check : kMetricChecks) {
    const CheckReport a = check(d71, default_sampler(s3), engine_slack());
    EXPECT_TRUE(a.pass) << a.name << " margin " << max_margin(a);
    EXPECT_EQ(a.trials, 200u) << a.name;
    const CheckReport b = check(dt, default_sampler(table.shape()), {});
    EXPECT_TRUE(b.pass) << b.name << " margin " << max_margin(b);
  }
}

TEST(MetricChecks, MatrixQuotientPasses) {
  const SeminormSpec spec = SeminormSpec::quotient({Flavor::kMatrix, 2});
  CheckOptions o = engine_slack();
  o.trials = 20;
  for (MetricCheck check : kMetricChecks) {
    const CheckReport r = check(metric_of(spec), default_sampler(spec.shape()), o);
    EXPECT_TRUE(r.pass) << r.name << " margin " << max_margin(r);
  }
}

TEST(MetricChecks, PerturbedMetricFails) {
  const MetricFunction d = fixtures::perturbed_metric(0);
  const StateSampler sample = default_sampler({Flavor::kCommutative, 3});
  EXPECT_TRUE(check_metric_axioms(d, sample, engine_slack()).pass);
  std::size_t failed = 0;
  for (MetricCheck check : kMetricChecks) failed += check(d, sample, {}).pass ? 0 : 1;
  EXPECT_GE(failed, 1u);
}

TEST(MetricChecks, DeterministicInSeed) {
  const MetricFunction d = fixtures::perturbed_metric(0);
  const StateSampler sample = default_sampler({Flavor::kCommutative, 3});
  const CheckReport a = check_convex(d, sample);
  const CheckReport b = check_convex(d, sample);
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i)
    EXPECT_EQ(a.violations[i].margin, b.violations[i].margin);
}

TEST(MetricChecks, InfeasibleSamplerPassesVacuously) {
  auto counter = std::make_shared<std::size_t>(0);
  const StateSampler cyclic = [counter](Rng&) -> State {
    const std::size_t k = (*counter)++ % 3;
    return point_state(3, k == 0 ? 0 : 1);
  };
  CheckOptions o;
  o.trials = 10;
  const CheckReport r = check_midpoint_balanced(metric_of(fixtures::example71()), cyclic, o);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.trials, 0u);
  EXPECT_EQ(r.rejected, 10u * o.attempts_per_trial);
  ASSERT_EQ(r.notes.size(), 1u);
}

TEST(MetricChecks, ViolationReplays) {
  const MetricFunction d = fixtures::perturbed_metric(0);
  const CheckReport r = check_midpoint_concave(d, default_sampler({Flavor::kCommutative, 3}));
  ASSERT_FALSE(r.violations.empty());
  for (const Violation& v : r.violations) {
    const auto& s = v.states;
    const double lhs = d(mix(s[0], s[2], 0.5), mix(s[1], s[3], 0.5));
    const double rhs = 0.5 * (d(s[0], s[1]) + d(s[2], s[3]));
    EXPECT_NEAR(lhs - rhs, v.margin, 1e-12);
  }
}

TEST(ShiftedState, Examples) {
  const State mu = ProbState(Vector{0.5, 0.5, 0.0});
  const auto up = shifted_state(mu, ZeroSumFunctional(Vector{-0.5, 0.0, 0.5}));
  ASSERT_TRUE(up.has_value());
  EXPECT_EQ(std::get<ProbState>(*up).weights(), (Vector{0.0, 0.5, 0.5}));
  EXPECT_FALSE(shifted_state(mu, ZeroSumFunctional(Vector{-0.6, 0.0, 0.6})).has_value());
  const State rho = DensityState(HermMatrix::diagonal(Vector{0.5, 0.5}));
  EXPECT_TRUE(shifted_state(rho, ZeroSumFunctional::zero({Flavor::kMatrix, 2})).has_value());
  EXPECT_THROW(shifted_state(mu, ZeroSumFunctional(Vector{1.0, -1.0})), ShapeMismatch);
}

TEST(NormFromMetric, ThreePointDirac) {
  const MetricFunction d = metric_of(fixtures::example71());
  const NormFromMetric m =
      norm_from_metric(d, default_sampler({Flavor::kCommutative, 3}),
                       {ZeroSumFunctional(Vector{1, -1, 0}), ZeroSumFunctional(Vector{0, 0, 0}),
                        ZeroSumFunctional(Vector{0.3, 0.2, -0.5})},
                       100, 0);
  ASSERT_EQ(m.values.size(), 3u);
  EXPECT_NEAR(m.values[0], std::sqrt(1.25), 1e-6);
  EXPECT_EQ(m.values[1], 0.0);
  // L′(λ) = sqrt(λ₁² + λ₂²/4) for α = 1, β = 2.
  EXPECT_NEAR(m.values[2], std::sqrt(0.09 + 0.01), 1e-6);
  EXPECT_GT(m.representations, 0u);
  EXPECT_LT(m.max_discrepancy, 1e-6);
}

TEST(NormFromMetric, LinearMetricsAreConsistent) {
  // Closed form of ρ_L for example71(): sqrt(λ₁² + λ₂²/4).
  const MetricFunction closed = [](const State& mu, const State& nu) {
    const ProbState& p = std::get<ProbState>(mu);
    const ProbState& q = std::get<ProbState>(nu);
    return std::hypot(p[0] - q[0], 0.5 * (p[1] - q[1]));
  };
  const SeminormSpec table(path_table());
  const std::vector<std::pair<MetricFunction, Shape>> metrics = {
      {closed, {Flavor::kCommutative, 3}}, {metric_of(table), table.shape()}};
  for (const auto& [d, shape] : metrics) {
    const CheckReport r = check_linear(d, default_sampler(shape));
    ASSERT_TRUE(r.pass);
    ASSERT_GE(r.trials, 100u);
    EXPECT_LE(norm_from_metric(d, default_sampler(shape), {}, 200, 0).max_discrepancy, 1e-9);
  }
}

TEST(NormFromMetric, PerturbedMetricIsInconsistent) {
  const NormFromMetric m = norm_from_metric(fixtures::perturbed_metric(0),
                                            default_sampler({Flavor::kCommutative, 3}), {}, 100, 0);
  EXPECT_GT(m.max_discrepancy, 1e-3);
}

}  // namespace
}  // namespace statemetric
