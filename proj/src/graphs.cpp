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


#include "statemetric/graphs.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "statemetric/error.hpp"

namespace statemetric {

namespace {

void validate_edges(std::size_t n, std::span<const Edge> edges,
                    const char* weight_name) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : edges) {
    if (e.a >= n || e.b >= n) throw DomainError("edge endpoint out of range");
    if (e.a == e.b) throw DomainError("self-loop edges are not allowed");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw DomainError(std::string("edge ") + weight_name +
                        " must be positive and finite");
    const auto key = std::minmax(e.a, e.b);
    if (!seen.insert(key).second) throw DomainError("repeated edge");
  }
  if (!is_connected(n, edges)) throw DisconnectedGraph("graph is not connected");
}

}  // namespace

bool is_connected(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (const Edge& e : edges) {
    const std::size_t ra = find(e.a);
    const std::size_t rb = find(e.b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components <= 1;
}

CostGraph::CostGraph(FiniteSpace space, std::vector<Edge> edges)
    : space_(std::move(space)), edges_(std::move(edges)) {
  validate_edges(space_.size(), edges_, "cost");
}

ConductanceGraph::ConductanceGraph(FiniteSpace space, std::vector<Edge> resistances)
    : space_(std::move(space)),
      edges_(std::move(resistances)),
      conductance_(space_.size(), space_.size()) {
  validate_edges(space_.size(), edges_, "resistance");
  for (const Edge& e : edges_) {
    conductance_(e.a, e.b) = 1.0 / e.weight;
    conductance_(e.b, e.a) = 1.0 / e.weight;
  }
}

ConductanceGraph ConductanceGraph::with_resistance(std::size_t index,
                                                   double resistance) const {
  std::vector<Edge> edges = edges_;
  edges.at(index).weight = resistance;
  return ConductanceGraph(space_, std::move(edges));
}

}  // namespace statemetric
