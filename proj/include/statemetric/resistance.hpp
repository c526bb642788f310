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


// Resistor networks: Laplacian, gradient and divergence, effective
// resistance, the resistance seminorm (1/2)‖Δf‖₁ and the metric it induces
// on probability vectors, plus an enumeration oracle for resistances.

#pragma once

#include <cstdint>
#include <optional>

#include "statemetric/graphs.hpp"
#include "statemetric/metric_table.hpp"
#include "statemetric/spaces.hpp"

namespace statemetric {

// Antisymmetric current on directed edges, zero off the edge set.
class EdgeFlow {
 public:
  // Throws DomainError unless values is n×n, exactly antisymmetric and
  // zero wherever the graph has no edge.
  EdgeFlow(const ConductanceGraph& graph, Matrix values);

  std::size_t size() const { return values_.rows(); }
  double operator()(std::size_t x, std::size_t y) const { return values_(x, y); }
  const Matrix& values() const { return values_; }

 private:
  Matrix values_;
};

// Δ = D − C with D_xx = Σ_y c_xy.
SymMatrix laplacian(const ConductanceGraph& graph);

// (Δf)(x) = Σ_y (f(x) − f(y)) c_xy, exactly zero on constants.
Vector apply_laplacian(const ConductanceGraph& graph, std::span<const double> f);

// (∇f)(x,y) = (f(x) − f(y)) c_xy.
EdgeFlow gradient(const ConductanceGraph& graph, const CommObservable& f);

// div(ω)(x) = Σ_y ω(x,y).
Vector divergence(const ConductanceGraph& graph, const EdgeFlow& flow);

// (df)(x,y) = f(x) − f(y) on edges.
EdgeFlow differential(const ConductanceGraph& graph, const CommObservable& f);

// N(ω) = (1/2) Σ_x |Σ_y ω(x,y) c_xy|.
double flow_seminorm(const ConductanceGraph& graph, const EdgeFlow& flow);

// L(f) = (1/2)‖Δf‖₁.
double resistance_seminorm(const ConductanceGraph& graph, const CommObservable& f);

// Voltage drop f(x) − f(y) for f = Δ⁻¹(δx − δy). Throws DomainError if
// x == y or either index is out of range.
double effective_resistance(const ConductanceGraph& graph, std::size_t x,
                            std::size_t y);

// max − min of Δ⁻¹(μ − ν), i.e. 2‖Δ⁻¹(μ − ν)‖∼.
double resistance_metric(const ConductanceGraph& graph, const ProbState& mu,
                         const ProbState& nu);

// All-pairs effective resistance.
MetricTable resistance_table(const ConductanceGraph& graph);

// Matrix-tree oracle: Σ over spanning 2-forests separating x and y of the
// product of conductances, divided by the same sum over spanning trees.
// Enumerates edge subsets; throws DomainError beyond 8 points or 16 edges.
double spanning_tree_resistance(const ConductanceGraph& graph, std::size_t x,
                                std::size_t y);
// Every pair at once from a single enumeration.
Matrix spanning_tree_resistance_table(const ConductanceGraph& graph);

inline constexpr std::size_t kSpanningTreeMaxPoints = 8;
inline constexpr std::size_t kSpanningTreeMaxEdges = 16;

// f, g on a graph with L(fg) > L(f)‖g‖∞ + ‖f‖∞ L(g).
struct LeibnizWitness {
  ConductanceGraph graph;
  CommObservable f;
  CommObservable g;
  double margin = 0.0;
};

double leibniz_margin(const ConductanceGraph& graph, const CommObservable& f,
                      const CommObservable& g);

// Seeded search over random graphs on at most 5 points. Returns nullopt if
// `max_graphs` graphs are exhausted without a witness above `min_margin`.
std::optional<LeibnizWitness> find_leibniz_witness(std::uint64_t seed,
                                                   int max_graphs = 200,
                                                   double min_margin = 1e-3);

}  // namespace statemetric
