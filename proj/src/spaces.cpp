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

#include <algorithm>
#include <cmath>
#include <set>

#include "statemetric/error.hpp"

namespace statemetric {

namespace {

constexpr double kTotalTolerance = 1e-12;
constexpr double kClampTolerance = 1e-15;
constexpr double kPsdTolerance = 1e-10;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw DomainError(std::string(what) + " has non-finite entries");
}

}  // namespace

std::string to_string(Flavor flavor) {
  return flavor == Flavor::kCommutative ? "commutative" : "matrix";
}

FiniteSpace::FiniteSpace(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() < 2)
    throw DomainError("a finite space needs at least two points");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size())
    throw DomainError("point labels must be distinct");
}

FiniteSpace FiniteSpace::numbered(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return FiniteSpace(std::move(labels));
}

std::size_t FiniteSpace::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw DomainError("unknown point label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

CommObservable::CommObservable(Vector values) : values_(std::move(values)) {
  require_finite(values_, "observable");
}

CommObservable CommObservable::constant(std::size_t n, double c) {
  return CommObservable(Vector(n, c));
}

MatObservable MatObservable::scalar(std::size_t n, double c) {
  return MatObservable(HermMatrix::diagonal(Vector(n, c)));
}

Shape shape_of(const Observable& a) {
  return std::visit(
      Overloaded{
          [](const CommObservable& f) { return Shape{Flavor::kCommutative, f.size()}; },
          [](const MatObservable& m) { return Shape{Flavor::kMatrix, m.size()}; }},
      a);
}

Observable order_unit(const Shape& shape) {
  if (shape.flavor == Flavor::kCommutative)
    return CommObservable::constant(shape.n, 1.0);
  return MatObservable::scalar(shape.n, 1.0);
}

Observable scaled(const Observable& a, double s) {
  return std::visit(
      Overloaded{[&](const CommObservable& f) -> Observable {
                   Vector v = f.values();
                   for (double& x : v) x *= s;
                   return CommObservable(std::move(v));
                 },
                 [&](const MatObservable& m) -> Observable {
                   return MatObservable(m.matrix() * s);
                 }},
      a);
}

Observable add(const Observable& a, const Observable& b) {
  if (shape_of(a) != shape_of(b)) throw ShapeMismatch("observable shapes differ");
  if (const auto* f = std::get_if<CommObservable>(&a)) {
    Vector v = f->values();
    const auto& g = std::get<CommObservable>(b).values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += g[i];
    return CommObservable(std::move(v));
  }
  return MatObservable(std::get<MatObservable>(a).matrix() +
                       std::get<MatObservable>(b).matrix());
}

Observable add_constant(const Observable& a, double c) {
  return add(a, scaled(order_unit(shape_of(a)), c));
}

Vector coordinates(const Observable& a) {
  if (const auto* f = std::get_if<CommObservable>(&a)) return f->values();
  const HermMatrix& h = std::get<MatObservable>(a).matrix();
  const std::size_t n = h.n();
  Vector c;
  c.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(h.re()(i, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c.push_back(h.re()(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c.push_back(h.im()(i, j));
  return c;
}

Observable from_coordinates(const Shape& shape, std::span<const double> coords) {
  if (coords.size() != shape.coordinate_count())
    throw ShapeMismatch("coordinate vector has the wrong length");
  if (shape.flavor == Flavor::kCommutative)
    return CommObservable(Vector(coords.begin(), coords.end()));
  const std::size_t n = shape.n;
  Matrix re(n, n);
  Matrix im(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) re(i, i) = coords[k++];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      re(i, j) = coords[k];
      re(j, i) = coords[k++];
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      im(i, j) = coords[k];
      im(j, i) = -coords[k++];
    }
  return MatObservable(HermMatrix(std::move(re), std::move(im)));
}

ProbState::ProbState(Vector weights) : weights_(std::move(weights)) {
  require_finite(weights_, "state");
  if (weights_.empty()) throw DomainError("state has no weights");
  for (double& w : weights_) {
    if (w < -kClampTolerance) throw DomainError("state weights must be nonnegative");
    if (w < 0.0) w = 0.0;
  }
  const double total = sum(weights_);
  if (std::abs(total - 1.0) > kTotalTolerance)
    throw DomainError("state weights must sum to 1");
  for (double& w : weights_) w /= total;
}

DensityState::DensityState(HermMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.n() == 0) throw DomainError("density matrix is empty");
  if (std::abs(matrix_.trace() - 1.0) > kTotalTolerance)
    throw DomainError("density matrix must have trace 1");
  if (eigenvalues(matrix_).front() < -kPsdTolerance)
    throw DomainError("density matrix must be positive semidefinite");
}

Shape shape_of(const State& s) {
  return std::visit(
      Overloaded{
          [](const ProbState& p) { return Shape{Flavor::kCommutative, p.size()}; },
          [](const DensityState& d) { return Shape{Flavor::kMatrix, d.size()}; }},
      s);
}

ZeroSumFunctional::ZeroSumFunctional(Vector components)
    : data_(std::move(components)) {
  const Vector& v = std::get<Vector>(data_);
  require_finite(v, "functional");
  if (std::abs(sum(v)) > kTotalTolerance * std::max(1.0, norm_1(v)))
    throw DomainError("functional components must sum to zero");
}

ZeroSumFunctional::ZeroSumFunctional(HermMatrix matrix) : data_(std::move(matrix)) {
  const HermMatrix& h = std::get<HermMatrix>(data_);
  double size = 0.0;
  for (std::size_t i = 0; i < h.n(); ++i) size += std::abs(h.re()(i, i));
  if (std::abs(h.trace()) > kTotalTolerance * std::max(1.0, size))
    throw DomainError("functional matrix must be traceless");
}

ZeroSumFunctional ZeroSumFunctional::zero(const Shape& shape) {
  if (shape.flavor == Flavor::kCommutative)
    return ZeroSumFunctional(Vector(shape.n, 0.0));
  return ZeroSumFunctional(HermMatrix::zero(shape.n));
}

Shape ZeroSumFunctional::shape() const {
  if (is_matrix()) return {Flavor::kMatrix, matrix().n()};
  return {Flavor::kCommutative, components().size()};
}

ZeroSumFunctional ZeroSumFunctional::operator-() const { return scaled(-1.0); }

ZeroSumFunctional ZeroSumFunctional::scaled(double s) const {
  if (is_matrix()) return ZeroSumFunctional(matrix() * s);
  Vector v = components();
  for (double& x : v) x *= s;
  return ZeroSumFunctional(std::move(v));
}

double quotient_norm(const Observable& a) {
  if (const auto* f = std::get_if<CommObservable>(&a)) {
    const auto [lo, hi] = std::minmax_element(f->values().begin(), f->values().end());
    return 0.5 * (*hi - *lo);
  }
  const Vector ev = eigenvalues(std::get<MatObservable>(a).matrix());
  return 0.5 * (ev.back() - ev.front());
}

ProbState point_state(std::size_t n, std::size_t index) {
  if (index >= n) throw DomainError("point index out of range");
  Vector w(n, 0.0);
  w[index] = 1.0;
  return ProbState(std::move(w));
}

ProbState point_state(const FiniteSpace& space, std::size_t index) {
  return point_state(space.size(), index);
}

ProbState uniform_state(std::size_t n) {
  return ProbState(Vector(n, 1.0 / static_cast<double>(n)));
}

ZeroSumFunctional difference(const State& mu, const State& nu) {
  if (shape_of(mu) != shape_of(nu)) throw ShapeMismatch("states have different shapes");
  if (const auto* p = std::get_if<ProbState>(&mu)) {
    const Vector& q = std::get<ProbState>(nu).weights();
    Vector d(p->size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*p)[i] - q[i];
    return ZeroSumFunctional(std::move(d));
  }
  return ZeroSumFunctional(std::get<DensityState>(mu).matrix() -
                           std::get<DensityState>(nu).matrix());
}

double pair(const ZeroSumFunctional& lambda, const Observable& a) {
  if (lambda.shape() != shape_of(a))
    throw ShapeMismatch("functional and observable shapes differ");
  if (lambda.is_matrix())
    return trace_product(lambda.matrix(), std::get<MatObservable>(a).matrix());
  return dot(lambda.components(), std::get<CommObservable>(a).values());
}

double pair(const State& mu, const Observable& a) {
  if (shape_of(mu) != shape_of(a))
    throw ShapeMismatch("state and observable shapes differ");
  if (const auto* p = std::get_if<ProbState>(&mu))
    return dot(p->weights(), std::get<CommObservable>(a).values());
  return trace_product(std::get<DensityState>(mu).matrix(),
                       std::get<MatObservable>(a).matrix());
}

State mix(const State& mu, const State& nu, double t) {
  if (shape_of(mu) != shape_of(nu)) throw ShapeMismatch("states have different shapes");
  if (const auto* p = std::get_if<ProbState>(&mu)) {
    const Vector& q = std::get<ProbState>(nu).weights();
    Vector w(p->size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 - t) * (*p)[i] + t * q[i];
    return ProbState(std::move(w));
  }
  return DensityState(std::get<DensityState>(mu).matrix() * (1.0 - t) +
                      std::get<DensityState>(nu).matrix() * t);
}

}  // namespace statemetric
