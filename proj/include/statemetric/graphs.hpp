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


// Weighted graphs on a finite space: cost graphs (edge costs feeding
// Lipschitz seminorms) and conductance graphs (resistor networks).

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "statemetric/linalg.hpp"
#include "statemetric/spaces.hpp"

namespace statemetric {

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
};

bool is_connected(std::size_t n, std::span<const Edge> edges);

// Edge costs γ(x,y) = γ(y,x) > 0. Pairs without an edge have infinite cost.
class CostGraph {
 public:
  // Throws DomainError for self-loops, repeated pairs, out-of-range
  // endpoints or non-positive costs, and DisconnectedGraph if the edges do
  // not connect the space.
  CostGraph(FiniteSpace space, std::vector<Edge> edges);

  const FiniteSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  FiniteSpace space_;
  std::vector<Edge> edges_;
};

// Edge weights are resistances r_xy > 0; conductance c_xy = 1/r_xy, zero
// off the edge set.
class ConductanceGraph {
 public:
  ConductanceGraph(FiniteSpace space, std::vector<Edge> resistances);

  const FiniteSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Matrix& conductance() const { return conductance_; }
  double conductance(std::size_t x, std::size_t y) const {
    return conductance_(x, y);
  }
  bool has_edge(std::size_t x, std::size_t y) const {
    return conductance_(x, y) != 0.0;
  }

  // Same topology with edge `index` given a new resistance.
  ConductanceGraph with_resistance(std::size_t index, double resistance) const;

 private:
  FiniteSpace space_;
  std::vector<Edge> edges_;
  Matrix conductance_;
};

}  // namespace statemetric
