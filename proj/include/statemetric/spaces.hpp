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


// Order-unit spaces C(X) (real functions on a finite set) and self-adjoint
// M_n, their states, and functionals vanishing on the order unit.

#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "statemetric/linalg.hpp"

namespace statemetric {

enum class Flavor { kCommutative, kMatrix };

// Which algebra an object lives over: n points, or n×n matrices.
struct Shape {
  Flavor flavor = Flavor::kCommutative;
  std::size_t n = 0;

  // Real coordinates of an observable: n values, or n² for a Hermitian
  // matrix (diagonal, then Re and Im of the strict upper triangle).
  std::size_t coordinate_count() const {
    return flavor == Flavor::kCommutative ? n : n * n;
  }
  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(Flavor flavor);

class FiniteSpace {
 public:
  // Throws DomainError unless there are at least two labels, all distinct.
  explicit FiniteSpace(std::vector<std::string> labels);
  // Labels "1", "2", ..., "n".
  static FiniteSpace numbered(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  // Throws DomainError for unknown labels.
  std::size_t index_of(const std::string& label) const;

  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

 private:
  std::vector<std::string> labels_;
};

class CommObservable {
 public:
  CommObservable() = default;
  explicit CommObservable(Vector values);
  static CommObservable constant(std::size_t n, double c);

  std::size_t size() const { return values_.size(); }
  const Vector& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const CommObservable&, const CommObservable&) = default;

 private:
  Vector values_;
};

class MatObservable {
 public:
  MatObservable() = default;
  explicit MatObservable(HermMatrix matrix) : matrix_(std::move(matrix)) {}
  static MatObservable scalar(std::size_t n, double c);

  std::size_t size() const { return matrix_.n(); }
  const HermMatrix& matrix() const { return matrix_; }

  friend bool operator==(const MatObservable&, const MatObservable&) = default;

 private:
  HermMatrix matrix_;
};

using Observable = std::variant<CommObservable, MatObservable>;

Shape shape_of(const Observable& a);
Observable order_unit(const Shape& shape);
Observable scaled(const Observable& a, double s);
Observable add(const Observable& a, const Observable& b);
Observable add_constant(const Observable& a, double c);

Vector coordinates(const Observable& a);
Observable from_coordinates(const Shape& shape, std::span<const double> coords);

// Probability vector. Weights in [-1e-15, 0) are clamped to 0 and a total
// within 1e-12 of 1 is renormalized; anything else throws DomainError.
class ProbState {
 public:
  ProbState() = default;
  explicit ProbState(Vector weights);

  std::size_t size() const { return weights_.size(); }
  const Vector& weights() const { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }

  friend bool operator==(const ProbState&, const ProbState&) = default;

 private:
  Vector weights_;
};

// Density matrix: Hermitian, min eigenvalue ≥ -1e-10, trace 1 within 1e-12.
class DensityState {
 public:
  DensityState() = default;
  explicit DensityState(HermMatrix matrix);

  std::size_t size() const { return matrix_.n(); }
  const HermMatrix& matrix() const { return matrix_; }

  friend bool operator==(const DensityState&, const DensityState&) = default;

 private:
  HermMatrix matrix_;
};

using State = std::variant<ProbState, DensityState>;

Shape shape_of(const State& s);

// A functional with λ(e) = 0: a zero-sum vector or a traceless Hermitian
// matrix.
class ZeroSumFunctional {
 public:
  ZeroSumFunctional() = default;
  // Both throw DomainError if the total is not zero within 1e-12 (relative
  // to the ℓ¹ size of the input).
  explicit ZeroSumFunctional(Vector components);
  explicit ZeroSumFunctional(HermMatrix matrix);
  static ZeroSumFunctional zero(const Shape& shape);

  Shape shape() const;
  bool is_matrix() const { return std::holds_alternative<HermMatrix>(data_); }
  const Vector& components() const { return std::get<Vector>(data_); }
  const HermMatrix& matrix() const { return std::get<HermMatrix>(data_); }

  ZeroSumFunctional operator-() const;
  ZeroSumFunctional scaled(double s) const;

 private:
  std::variant<Vector, HermMatrix> data_;
};

// (max − min)/2 of the values or of the spectrum.
double quotient_norm(const Observable& a);

// δ-measure at a point. Throws DomainError if index ≥ n.
ProbState point_state(std::size_t n, std::size_t index);
ProbState point_state(const FiniteSpace& space, std::size_t index);

ProbState uniform_state(std::size_t n);

// μ − ν. Throws ShapeMismatch across flavors or sizes.
ZeroSumFunctional difference(const State& mu, const State& nu);

// Σ λ_x f(x), or trace(λ·a) with the unnormalized trace.
double pair(const ZeroSumFunctional& lambda, const Observable& a);
double pair(const State& mu, const Observable& a);

// Convex combination (1 − t)·μ + t·ν.
State mix(const State& mu, const State& nu, double t);

}  // namespace statemetric
