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


#include "statemetric/seminorms.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "statemetric/error.hpp"
#include "statemetric/resistance.hpp"
#include "statemetric/sampling.hpp"
#include "test_support.hpp"

namespace statemetric {
namespace {

DiracOperator example71(double alpha, double beta) {
  return DiracOperator::commutative(
      Matrix::from_rows({{0, 0, alpha}, {0, 0, beta}, {-alpha, -beta, 0}}));
}

double example71_closed_form(double alpha, double beta, const Vector& f) {
  return std::hypot(alpha * (f[2] - f[0]), beta * (f[2] - f[1]));
}

CostGraph random_cost_graph(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> cost(0.2, 5.0);
  std::vector<Edge> edges;
  for (auto [a, b] : testing::random_connected_edges(rng, n)) edges.push_back({a, b, cost(rng)});
  return CostGraph(FiniteSpace::numbered(n), std::move(edges));
}

ConductanceGraph random_conductance_graph(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> r(0.2, 5.0);
  std::vector<Edge> edges;
  for (auto [a, b] : testing::random_connected_edges(rng, n)) edges.push_back({a, b, r(rng)});
  return ConductanceGraph(FiniteSpace::numbered(n), std::move(edges));
}

MetricTable random_metric_table(std::mt19937_64& rng, std::size_t n) {
  // Path metric of a random cost graph is always a metric.
  std::uniform_real_distribution<double> u(0.5, 2.0);
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = u(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  return MetricTable(FiniteSpace::numbered(n), std::move(d));
}

// M_n acting on C^n ⊗ C^2.
DiracOperator random_matrix_dirac(std::mt19937_64& rng, std::size_t n) {
  const HermMatrix h = testing::random_hermitian(rng, 2 * n);
  // i·H is anti-Hermitian: re = −im(H), im = re(H).
  return DiracOperator::matrix(h.im() * -1.0, h.re(), n);
}

std::vector<SeminormSpec> sample_specs(std::mt19937_64& rng) {
  std::vector<SeminormSpec> specs;
  specs.emplace_back(example71(1.0, 2.0));
  specs.emplace_back(random_cost_graph(rng, 4));
  specs.emplace_back(dirac_from_cost(random_cost_graph(rng, 4)));
  specs.emplace_back(random_conductance_graph(rng, 5));
  specs.emplace_back(random_metric_table(rng, 4));
  specs.push_back(SeminormSpec::quotient({Flavor::kCommutative, 4}));
  specs.push_back(SeminormSpec::quotient({Flavor::kMatrix, 3}));
  specs.emplace_back(random_matrix_dirac(rng, 3));
  return specs;
}

TEST(Eval, Examples) {
  const SeminormSpec dirac = example71(1.0, 2.0);
  EXPECT_NEAR(eval(dirac, CommObservable({1, 0, 0})), 1.0, 1e-12);
  EXPECT_NEAR(eval(dirac, CommObservable({0, 1, 0})), 2.0, 1e-12);
  EXPECT_NEAR(eval(dirac, CommObservable({1, 1, 0})), std::sqrt(5.0), 1e-12);

  const SeminormSpec resist =
      ConductanceGraph(FiniteSpace::numbered(2), {{0, 1, 0.5}});
  EXPECT_DOUBLE_EQ(eval(resist, CommObservable({1, 0})), 2.0);

  const SeminormSpec lip = CostGraph(FiniteSpace::numbered(2), {{0, 1, 2.0}});
  EXPECT_DOUBLE_EQ(eval(lip, CommObservable({1, 0})), 0.5);

  const SeminormSpec q = SeminormSpec::quotient({Flavor::kMatrix, 2});
  EXPECT_NEAR(eval(q, MatObservable(HermMatrix::diagonal(Vector{1, -1}))), 1.0, 1e-12);
}

TEST(Eval, ShapeMismatch) {
  const SeminormSpec dirac = example71(1.0, 2.0);
  EXPECT_THROW(eval(dirac, CommObservable({1, 0})), ShapeMismatch);
  EXPECT_THROW(eval(dirac, MatObservable(HermMatrix::zero(3))), ShapeMismatch);
  const SeminormSpec q = SeminormSpec::quotient({Flavor::kMatrix, 2});
  EXPECT_THROW(eval(q, CommObservable({1, 0})), ShapeMismatch);
}

TEST(Eval, DiracMatchesThreePointClosedForm) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(0.1, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = coef(rng);
    const double beta = coef(rng);
    const Vector f = testing::random_vector(rng, 3, -3.0, 3.0);
    EXPECT_NEAR(eval(example71(alpha, beta), CommObservable(f)),
                example71_closed_form(alpha, beta, f), 1e-10);
  }
}

TEST(Eval, SeminormAxioms) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const SeminormSpec& spec : sample_specs(rng)) {
    SCOPED_TRACE(spec.kind());
    const Shape shape = spec.shape();
    for (int trial = 0; trial < 50; ++trial) {
      const Observable a = random_observable(rng, shape);
      const Observable b = random_observable(rng, shape);
      const double c = u(rng);
      const double la = eval(spec, a);
      const double tol = 1e-10 * (1.0 + la);
      EXPECT_NEAR(eval(spec, add_constant(a, c)), la, tol);
      EXPECT_NEAR(eval(spec, scaled(a, -1.0)), la, tol);
      EXPECT_NEAR(eval(spec, scaled(a, c)), std::abs(c) * la, 1e-10 * (1.0 + std::abs(c) * la));
      EXPECT_LE(eval(spec, add(a, b)), la + eval(spec, b) + 1e-10);
      EXPECT_GT(la, 0.0);
    }
    EXPECT_EQ(eval(spec, scaled(order_unit(shape), 2.5)), 0.0);
  }
}

TEST(DiracOperator, Validation) {
  EXPECT_THROW(DiracOperator::commutative(Matrix::from_rows({{0, 1}, {1, 0}})), DomainError);
  EXPECT_THROW(DiracOperator::commutative(Matrix::from_rows({{0, 1}, {-1, 0}}),
                                          DiracOperator::Adjointness::kSelf),
               DomainError);
  // Point 2 is isolated, so f = (0,0,1) commutes with D.
  EXPECT_THROW(DiracOperator::commutative(
                   Matrix::from_rows({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}})),
               DomainError);
  // rep must hit every point and stay in range.
  const Matrix d = Matrix::from_rows({{0, 1}, {-1, 0}});
  EXPECT_THROW(DiracOperator::commutative(d, Matrix(2, 2), {0, 0}, 2), DomainError);
  EXPECT_THROW(DiracOperator::commutative(d, Matrix(2, 2), {0, 2}, 2), DomainError);
  // Without multiplicity D commutes with its own spectral projections.
  std::mt19937_64 rng(1);
  const HermMatrix h = testing::random_hermitian(rng, 3);
  EXPECT_THROW(DiracOperator::matrix(h.im() * -1.0, h.re(), 3), DomainError);
  EXPECT_THROW(DiracOperator::matrix(Matrix(5, 5), Matrix(5, 5), 2), DomainError);
  EXPECT_NO_THROW(random_matrix_dirac(rng, 3));
  EXPECT_NO_THROW(example71(1.0, 2.0));
}

TEST(DiracOperator, CommutatorIsHermitianAndMatchesDirect) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3;
    const DiracOperator op = random_matrix_dirac(rng, n);
    const HermMatrix a = testing::random_hermitian(rng, n);
    const HermMatrix c = op.commutator(MatObservable(a));
    const std::size_t m = 2 * n;
    // Independent complex arithmetic: [D, A ⊗ I₂] with D = re + i·im.
    std::vector<std::vector<std::complex<double>>> big(
        m, std::vector<std::complex<double>>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t p = 0; p < 2; ++p)
          big[2 * i + p][2 * j + p] = {a.re()(i, j), a.im()(i, j)};
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        std::complex<double> s = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const std::complex<double> dik(op.re()(i, k), op.im()(i, k));
          const std::complex<double> dkj(op.re()(k, j), op.im()(k, j));
          s += dik * big[k][j] - big[i][k] * dkj;
        }
        EXPECT_NEAR(c.re()(i, j), s.real(), 1e-12);
        EXPECT_NEAR(c.im()(i, j), s.imag(), 1e-12);
      }
  }
}

TEST(UnitBall, Examples) {
  const SeminormSpec lip = CostGraph(FiniteSpace::numbered(2), {{0, 1, 2.0}});
  const auto cuts = std::get<std::vector<Cut>>(unit_ball_constraints(lip));
  ASSERT_EQ(cuts.size(), 2u);
  EXPECT_EQ(cuts[0].coefficients, (Vector{1, -1}));
  EXPECT_EQ(cuts[1].coefficients, (Vector{-1, 1}));
  EXPECT_EQ(cuts[0].bound, 2.0);

  Matrix d(2, 2);
  d(0, 1) = d(1, 0) = 3.0;
  const SeminormSpec metric = MetricTable(FiniteSpace::numbered(2), d);
  const auto mcuts = std::get<std::vector<Cut>>(unit_ball_constraints(metric));
  ASSERT_EQ(mcuts.size(), 2u);
  EXPECT_EQ(mcuts[0].bound, 3.0);

  EXPECT_TRUE(std::holds_alternative<PolyhedralUnavailable>(
      unit_ball_constraints(example71(1.0, 2.0))));
  EXPECT_TRUE(std::holds_alternative<PolyhedralUnavailable>(
      unit_ball_constraints(SeminormSpec::quotient({Flavor::kMatrix, 2}))));
}

TEST(UnitBall, ResistanceSignPatternsDescribeTheBall) {
  std::mt19937_64 rng(21);
  const ConductanceGraph g = random_conductance_graph(rng, 5);
  const auto cuts = std::get<SignPatternCuts>(unit_ball_constraints(g));
  ASSERT_EQ(cuts.size(), 32u);
  for (int trial = 0; trial < 50; ++trial) {
    const CommObservable f(testing::random_vector(rng, 5));
    double best = -1e300;
    for (std::size_t p = 0; p < cuts.size(); ++p)
      best = std::max(best, cuts.at(p).value(f.values()));
    EXPECT_NEAR(best, resistance_seminorm(g, f), 1e-12);
  }
}

TEST(UnitBall, ResistanceGuard) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < 21; ++i) edges.push_back({i, i + 1, 1.0});
  const SeminormSpec big = ConductanceGraph(FiniteSpace::numbered(21), edges);
  EXPECT_THROW(unit_ball_constraints(big), DomainError);
}

TEST(UnitBall, ExplicitCutsMatchEval) {
  std::mt19937_64 rng(4);
  std::vector<SeminormSpec> specs;
  specs.emplace_back(random_cost_graph(rng, 5));
  specs.emplace_back(random_metric_table(rng, 5));
  specs.push_back(SeminormSpec::quotient({Flavor::kCommutative, 5}));
  for (const SeminormSpec& spec : specs) {
    SCOPED_TRACE(spec.kind());
    const auto cuts = std::get<std::vector<Cut>>(unit_ball_constraints(spec));
    for (int trial = 0; trial < 50; ++trial) {
      const Vector f = testing::random_vector(rng, 5);
      double best = 0.0;
      for (const Cut& c : cuts) best = std::max(best, c.value(f) / c.bound);
      EXPECT_NEAR(best, eval(spec, CommObservable(f)), 1e-12);
    }
  }
}

TEST(SeparationOracle, Examples) {
  const SeminormSpec dirac = example71(1.0, 2.0);
  EXPECT_FALSE(separation_oracle(dirac, CommObservable({0.5, 0, 0})));
  EXPECT_FALSE(separation_oracle(dirac, CommObservable::constant(3, 4.0)));

  const Vector f{2, 0, 0};
  const auto cut = separation_oracle(dirac, CommObservable(f));
  ASSERT_TRUE(cut);
  EXPECT_GT(cut->violation(f), 0.0);
  // Commutator of (2,0,0) only involves f3 − f1: coefficients ∝ (−1, 0, 1).
  EXPECT_NEAR(cut->coefficients[1], 0.0, 1e-12);
  EXPECT_NEAR(cut->coefficients[0], -cut->coefficients[2], 1e-12);
  EXPECT_NEAR(std::abs(cut->coefficients[0]), 1.0, 1e-9);
}

TEST(SeparationOracle, CutsAreValidOnTheUnitBall) {
  std::mt19937_64 rng(13);
  for (const SeminormSpec& spec : sample_specs(rng)) {
    SCOPED_TRACE(spec.kind());
    const Shape shape = spec.shape();
    for (int trial = 0; trial < 10; ++trial) {
      const Observable a = scaled(random_observable(rng, shape), 5.0);
      const double la = eval(spec, a);
      const auto cuts = separation_cuts(spec, a, 4);
      if (la <= 1.0 + kSeparationSlack) {
        EXPECT_TRUE(cuts.empty());
        continue;
      }
      ASSERT_FALSE(cuts.empty());
      const Vector ca = coordinates(a);
      for (const Cut& cut : cuts) {
        EXPECT_GT(cut.violation(ca), 0.0);
        for (int s = 0; s < 100; ++s) {
          const Observable b = random_observable(rng, shape);
          const Observable unit = scaled(b, 1.0 / eval(spec, b));
          EXPECT_LE(cut.violation(coordinates(unit)), 1e-9);
        }
      }
      // The first cut is tight: rescaling a onto the boundary makes it an equality.
      EXPECT_NEAR(cuts.front().value(ca) / (cuts.front().bound * la), 1.0, 1e-8);
    }
  }
}

TEST(DiracFromCost, Examples) {
  const CostGraph edge(FiniteSpace::numbered(2), {{0, 1, 2.0}});
  EXPECT_NEAR(eval(dirac_from_cost(edge), CommObservable({1, 0})), 0.5, 1e-12);
  const CostGraph tri(FiniteSpace::numbered(3), {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const SeminormSpec d = dirac_from_cost(tri);
  EXPECT_NEAR(eval(d, CommObservable({1, 0, 0})), 1.0, 1e-12);
  EXPECT_EQ(eval(d, CommObservable::constant(3, 2.0)), 0.0);
  EXPECT_EQ(dirac_from_cost(tri).hilbert_dimension(), 6u);
}

TEST(DiracFromCost, AgreesWithGraphLip) {
  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int g = 0; g < 20; ++g) {
    const std::size_t n = 2 + g % 5;
    const CostGraph graph = random_cost_graph(rng, n);
    const SeminormSpec lip = graph;
    const SeminormSpec dirac = dirac_from_cost(graph);
    for (int trial = 0; trial < 200; ++trial) {
      const CommObservable f(testing::random_vector(rng, n, -2.0, 2.0));
      worst = std::max(worst, std::abs(eval(lip, f) - eval(dirac, f)));
    }
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(LatticeJoin, Examples) {
  EXPECT_EQ(lattice_join(CommObservable({1, 0, 0}), CommObservable({0, 1, 0})).values(),
            (Vector{1, 1, 0}));
  const CommObservable f({4, 2, 0, -1});
  EXPECT_EQ(lattice_join(f, f).values(), f.values());
  EXPECT_EQ(lattice_join(f, CommObservable::constant(4, 0.0)).values(), (Vector{4, 2, 0, 0}));
  EXPECT_THROW(lattice_join(f, CommObservable({1, 2})), ShapeMismatch);
}

TEST(QuadraticForm, MatchesDirectEvaluation) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 2; n <= 4; ++n) {
    const Shape shape{Flavor::kMatrix, n};
    for (int trial = 0; trial < 20; ++trial) {
      const HermMatrix a = testing::random_hermitian(rng, n);
      const Vector x = testing::random_vector(rng, n);
      const Vector y = testing::random_vector(rng, n);
      std::complex<double> s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          s += std::complex<double>(x[i], -y[i]) *
               std::complex<double>(a.re()(i, j), a.im()(i, j)) * std::complex<double>(x[j], y[j]);
      const Vector c = quadratic_form_coefficients(shape, x, y);
      EXPECT_NEAR(dot(c, coordinates(MatObservable(a))), s.real(), 1e-12);
    }
  }
}

}  // namespace
}  // namespace statemetric
