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


#include "statemetric/spaces.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "statemetric/error.hpp"
#include "statemetric/sampling.hpp"

namespace statemetric {
namespace {

TEST(FiniteSpace, Validation) {
  EXPECT_THROW(FiniteSpace({"a"}), DomainError);
  EXPECT_THROW(FiniteSpace({"a", "a"}), DomainError);
  const FiniteSpace s({"a", "b", "c"});
  EXPECT_EQ(s.index_of("c"), 2u);
  EXPECT_THROW(s.index_of("d"), DomainError);
  EXPECT_EQ(FiniteSpace::numbered(3).label(0), "1");
}

TEST(QuotientNorm, Examples) {
  EXPECT_DOUBLE_EQ(quotient_norm(CommObservable({1, 0, 0})), 0.5);
  EXPECT_DOUBLE_EQ(quotient_norm(CommObservable::constant(4, 3.7)), 0.0);
  EXPECT_NEAR(quotient_norm(MatObservable(HermMatrix::diagonal(Vector{1, -1}))),
              1.0, 1e-15);
}

TEST(QuotientNorm, InvariantUnderConstants) {
  Rng rng(1);
  std::uniform_real_distribution<double> u(-10, 10);
  for (Shape shape : {Shape{Flavor::kCommutative, 5}, Shape{Flavor::kMatrix, 3}}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Observable a = random_observable(rng, shape);
      EXPECT_NEAR(quotient_norm(add_constant(a, u(rng))), quotient_norm(a), 1e-12);
    }
  }
}

TEST(PointState, Examples) {
  EXPECT_EQ(point_state(3, 0).weights(), (Vector{1, 0, 0}));
  EXPECT_EQ(point_state(3, 2).weights(), (Vector{0, 0, 1}));
  EXPECT_THROW(point_state(3, 3), DomainError);
  const CommObservable f({4, 2, 0});
  EXPECT_EQ(pair(State(point_state(3, 1)), f), 2.0);
}

TEST(ProbState, ClampsAndRenormalizes) {
  const ProbState p({1.0 + 5e-13, -1e-16});
  EXPECT_EQ(p[1], 0.0);
  EXPECT_NEAR(p[0], 1.0, 1e-16);
  EXPECT_THROW(ProbState({1.1, -0.1}), DomainError);
  EXPECT_THROW(ProbState({0.5, 0.6}), DomainError);
}

TEST(DensityState, Validation) {
  EXPECT_NO_THROW(DensityState(HermMatrix::diagonal(Vector{0.75, 0.25})));
  EXPECT_THROW(DensityState(HermMatrix::diagonal(Vector{1.5, -0.5})), DomainError);
  EXPECT_THROW(DensityState(HermMatrix::diagonal(Vector{0.5, 0.25})), DomainError);
}

TEST(Difference, Examples) {
  const State d1 = point_state(3, 0);
  const State d2 = point_state(3, 1);
  EXPECT_EQ(difference(d1, d1).components(), (Vector{0, 0, 0}));
  EXPECT_EQ(difference(d1, d2).components(), (Vector{1, -1, 0}));
  EXPECT_EQ(difference(State(ProbState({0.75, 0.25})), State(ProbState({0.25, 0.75})))
                .components(),
            (Vector{0.5, -0.5}));
  EXPECT_THROW(difference(d1, State(point_state(2, 0))), ShapeMismatch);
}

TEST(Pair, Examples) {
  EXPECT_EQ(pair(ZeroSumFunctional(Vector{1, -1, 0}), CommObservable({4, 2, 0})), 2.0);
  EXPECT_EQ(pair(ZeroSumFunctional(Vector{0.3, 0.2, -0.5}),
                 CommObservable::constant(3, 7.0)),
            0.0);
  EXPECT_DOUBLE_EQ(pair(ZeroSumFunctional(HermMatrix::diagonal(Vector{0.5, -0.5})),
                        MatObservable(HermMatrix::diagonal(Vector{1, -1}))),
                   1.0);
  EXPECT_THROW(pair(ZeroSumFunctional(Vector{1, -1}), CommObservable({1, 2, 3})),
               ShapeMismatch);
}

TEST(ZeroSumFunctional, RejectsNonzeroTotal) {
  EXPECT_THROW(ZeroSumFunctional(Vector{1, 0}), DomainError);
  EXPECT_THROW(ZeroSumFunctional(HermMatrix::diagonal(Vector{1, 0})), DomainError);
}

TEST(Coordinates, RoundTrip) {
  Rng rng(4);
  for (std::size_t n = 1; n <= 4; ++n) {
    const Shape shape{Flavor::kMatrix, n};
    const Observable a = random_observable(rng, shape);
    EXPECT_EQ(from_coordinates(shape, coordinates(a)), a);
  }
}

// Properties over random states of both flavors.
TEST(StateProperties, PairingInvariants) {
  Rng rng(2);
  for (Shape shape : {Shape{Flavor::kCommutative, 4}, Shape{Flavor::kMatrix, 3}}) {
    for (int trial = 0; trial < 50; ++trial) {
      const State mu = random_state(rng, shape);
      const State nu = random_state(rng, shape);
      const ZeroSumFunctional d = difference(mu, nu);
      EXPECT_NEAR(pair(d, order_unit(shape)), 0.0, 1e-14);
      const ZeroSumFunctional r = difference(nu, mu);
      EXPECT_EQ(coordinates(from_coordinates(shape, Vector(shape.coordinate_count(), 0.0))).size(),
                shape.coordinate_count());
      const Observable a = random_observable(rng, shape);
      EXPECT_NEAR(pair(d, a), -pair(r, a), 1e-14);
      const double bound = shape.flavor == Flavor::kCommutative
                               ? norm_inf(std::get<CommObservable>(a).values())
                               : op_norm(std::get<MatObservable>(a).matrix());
      EXPECT_LE(std::abs(pair(mu, a)), bound + 1e-12);
    }
  }
}

}  // namespace
}  // namespace statemetric
