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


// Lipschitz seminorms on C(X) and M_n: Dirac commutator norms, graph and
// metric Lipschitz constants, the resistance seminorm and the quotient
// norm. Each exposes its unit ball either as linear cuts or through a
// separation oracle.

#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "statemetric/graphs.hpp"
#include "statemetric/linalg.hpp"
#include "statemetric/metric_table.hpp"
#include "statemetric/spaces.hpp"

namespace statemetric {

// coefficients · coordinates(a) ≤ bound, valid on {a : L(a) ≤ 1}.
struct Cut {
  Vector coefficients;
  double bound = 0.0;

  double value(std::span<const double> coords) const {
    return dot(coefficients, coords);
  }
  double violation(std::span<const double> coords) const {
    return value(coords) - bound;
  }
};

// D on a finite-dimensional Hilbert space together with the representation
// of the algebra. For C(X) the representation is diagonal: Hilbert index k
// carries the point rep[k]. For M_n it is a ↦ a ⊗ I_k on C^n ⊗ C^k, with
// Hilbert index i·k + p for basis vector e_i ⊗ e_p. Multiplicity k = 1 is
// never valid: D commutes with its own spectral projections.
class DiracOperator {
 public:
  enum class Adjointness { kSkew, kSelf };

  // Throws DomainError if D is not exactly skew-adjoint (or self-adjoint,
  // per `adjointness`), if rep misses a point or points outside the space,
  // or if some non-constant observable commutes with D.
  static DiracOperator commutative(Matrix re, Matrix im, std::vector<std::size_t> rep,
                                   std::size_t points,
                                   Adjointness adjointness = Adjointness::kSkew);
  // Real D, one Hilbert index per point.
  static DiracOperator commutative(Matrix re,
                                   Adjointness adjointness = Adjointness::kSkew);
  // Algebra M_n acting on C^m, m a multiple of n.
  static DiracOperator matrix(Matrix re, Matrix im, std::size_t n,
                              Adjointness adjointness = Adjointness::kSkew);

  Shape shape() const { return shape_; }
  std::size_t hilbert_dimension() const { return re_.rows(); }
  std::size_t multiplicity() const { return re_.rows() / shape_.n; }
  Adjointness adjointness() const { return adjointness_; }
  const Matrix& re() const { return re_; }
  const Matrix& im() const { return im_; }
  const std::vector<std::size_t>& rep() const { return rep_; }

  // [D, π(a)] when D is skew-adjoint, i·[D, π(a)] when it is self-adjoint;
  // Hermitian either way, with the same norm as the commutator.
  HermMatrix commutator(const Observable& a) const;

  // Commutators of the coordinate basis observables.
  const std::vector<HermMatrix>& commutator_basis() const { return basis_; }

 private:
  DiracOperator(Matrix re, Matrix im, std::vector<std::size_t> rep, Shape shape,
                Adjointness adjointness);

  Matrix re_;
  Matrix im_;
  std::vector<std::size_t> rep_;
  Shape shape_;
  Adjointness adjointness_;
  std::vector<HermMatrix> basis_;
};

struct DiracSeminorm {
  DiracOperator op;
};
struct GraphLipSeminorm {
  CostGraph graph;
};
struct ResistanceSeminorm {
  ConductanceGraph graph;
};
struct QuotientSeminorm {
  Shape shape;
};
struct MetricLipSeminorm {
  MetricTable table;
};

class SeminormSpec {
 public:
  using Variant = std::variant<DiracSeminorm, GraphLipSeminorm, ResistanceSeminorm,
                               QuotientSeminorm, MetricLipSeminorm>;

  SeminormSpec(DiracOperator op) : v_(DiracSeminorm{std::move(op)}) {}
  SeminormSpec(CostGraph graph) : v_(GraphLipSeminorm{std::move(graph)}) {}
  SeminormSpec(ConductanceGraph graph) : v_(ResistanceSeminorm{std::move(graph)}) {}
  SeminormSpec(MetricTable table) : v_(MetricLipSeminorm{std::move(table)}) {}
  static SeminormSpec quotient(const Shape& shape);

  const Variant& variant() const { return v_; }
  Shape shape() const;
  std::string kind() const;

  bool is_dirac() const { return std::holds_alternative<DiracSeminorm>(v_); }
  bool is_resistance() const { return std::holds_alternative<ResistanceSeminorm>(v_); }

 private:
  explicit SeminormSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// L(a). Throws ShapeMismatch if the observable does not fit the spec.
double eval(const SeminormSpec& spec, const Observable& a);

// The 2^n sign-pattern cuts (1/2) Σ_x s_x (Δf)(x) ≤ 1 of the resistance
// unit ball, produced on demand.
class SignPatternCuts {
 public:
  explicit SignPatternCuts(ConductanceGraph graph);
  std::size_t size() const { return std::size_t{1} << graph_.size(); }
  // Bit x of `pattern` set means s_x = −1.
  Cut at(std::size_t pattern) const;

 private:
  ConductanceGraph graph_;
};

struct PolyhedralUnavailable {};

using UnitBall = std::variant<std::vector<Cut>, SignPatternCuts, PolyhedralUnavailable>;

inline constexpr std::size_t kSignPatternMaxPoints = 20;

// Explicit cuts for the graph, metric and commutative quotient seminorms;
// lazy sign patterns for the resistance seminorm (DomainError beyond 20
// points); PolyhedralUnavailable for spectral seminorms.
UnitBall unit_ball_constraints(const SeminormSpec& spec);

inline constexpr double kSeparationSlack = 1e-9;

// nullopt iff L(a) ≤ 1 + 1e-9, else the most violated cut.
std::optional<Cut> separation_oracle(const SeminormSpec& spec, const Observable& a);

// Up to `limit` cuts violated by a, most violated first. Spectral
// seminorms contribute one cut per offending eigenvector.
std::vector<Cut> separation_cuts(const SeminormSpec& spec, const Observable& a,
                                 std::size_t limit);

// D = P·F on the directed-edge Hilbert space of the cost graph: F flips
// (x,y) ↔ (y,x), P divides by the edge cost, and (x,y) carries point x.
DiracOperator dirac_from_cost(const CostGraph& graph);

// Pointwise maximum.
CommObservable lattice_join(const CommObservable& f, const CommObservable& g);

// Coefficients c with c · coordinates(a) = u* a u for u = x + i·y.
Vector quadratic_form_coefficients(const Shape& shape, std::span<const double> x,
                                   std::span<const double> y);

}  // namespace statemetric
