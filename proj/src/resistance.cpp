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


#include "statemetric/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "statemetric/error.hpp"
#include "statemetric/sampling.hpp"

namespace statemetric {

EdgeFlow::EdgeFlow(const ConductanceGraph& graph, Matrix values)
    : values_(std::move(values)) {
  const std::size_t n = graph.size();
  if (values_.rows() != n || values_.cols() != n)
    throw ShapeMismatch("edge flow size differs from the graph");
  if (!values_.all_finite()) throw DomainError("edge flow has non-finite values");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) {
      if (values_(x, y) != -values_(y, x))
        throw DomainError("edge flow must be antisymmetric");
      if (values_(x, y) != 0.0 && !graph.has_edge(x, y))
        throw DomainError("edge flow is nonzero off the edge set");
    }
}

SymMatrix laplacian(const ConductanceGraph& graph) {
  const std::size_t n = graph.size();
  Matrix lap(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    double degree = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      degree += graph.conductance(x, y);
      lap(x, y) = -graph.conductance(x, y);
    }
    lap(x, x) = degree;
  }
  return SymMatrix(std::move(lap));
}

Vector apply_laplacian(const ConductanceGraph& graph, std::span<const double> f) {
  const std::size_t n = graph.size();
  if (f.size() != n) throw ShapeMismatch("function length differs from the graph");
  Vector out(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (graph.has_edge(x, y)) out[x] += (f[x] - f[y]) * graph.conductance(x, y);
  return out;
}

EdgeFlow gradient(const ConductanceGraph& graph, const CommObservable& f) {
  const std::size_t n = graph.size();
  if (f.size() != n) throw ShapeMismatch("function length differs from the graph");
  Matrix w(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (graph.has_edge(x, y)) w(x, y) = (f[x] - f[y]) * graph.conductance(x, y);
  return EdgeFlow(graph, std::move(w));
}

EdgeFlow differential(const ConductanceGraph& graph, const CommObservable& f) {
  const std::size_t n = graph.size();
  if (f.size() != n) throw ShapeMismatch("function length differs from the graph");
  Matrix w(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (graph.has_edge(x, y)) w(x, y) = f[x] - f[y];
  return EdgeFlow(graph, std::move(w));
}

Vector divergence(const ConductanceGraph& graph, const EdgeFlow& flow) {
  const std::size_t n = graph.size();
  if (flow.size() != n) throw ShapeMismatch("edge flow size differs from the graph");
  Vector div(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) div[x] += flow(x, y);
  return div;
}

double flow_seminorm(const ConductanceGraph& graph, const EdgeFlow& flow) {
  const std::size_t n = graph.size();
  if (flow.size() != n) throw ShapeMismatch("edge flow size differs from the graph");
  double total = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    double inner = 0.0;
    for (std::size_t y = 0; y < n; ++y) inner += flow(x, y) * graph.conductance(x, y);
    total += std::abs(inner);
  }
  return 0.5 * total;
}

double resistance_seminorm(const ConductanceGraph& graph, const CommObservable& f) {
  return 0.5 * norm_1(apply_laplacian(graph, f.values()));
}

double effective_resistance(const ConductanceGraph& graph, std::size_t x,
                            std::size_t y) {
  const std::size_t n = graph.size();
  if (x >= n || y >= n) throw DomainError("point index out of range");
  if (x == y) throw DomainError("effective resistance needs distinct points");
  Vector rhs(n, 0.0);
  rhs[x] = 1.0;
  rhs[y] = -1.0;
  const Vector f = laplacian_solve(laplacian(graph), rhs);
  return f[x] - f[y];
}

double resistance_metric(const ConductanceGraph& graph, const ProbState& mu,
                         const ProbState& nu) {
  const std::size_t n = graph.size();
  if (mu.size() != n || nu.size() != n)
    throw ShapeMismatch("state length differs from the graph");
  Vector rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = mu[i] - nu[i];
  const Vector f = laplacian_solve(laplacian(graph), rhs);
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  return *hi - *lo;
}

MetricTable resistance_table(const ConductanceGraph& graph) {
  const std::size_t n = graph.size();
  const SymMatrix lap = laplacian(graph);
  Matrix d(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      Vector rhs(n, 0.0);
      rhs[x] = 1.0;
      rhs[y] = -1.0;
      const Vector f = laplacian_solve(lap, rhs);
      d(x, y) = d(y, x) = f[x] - f[y];
    }
  return MetricTable(graph.space(), std::move(d));
}

Matrix spanning_tree_resistance_table(const ConductanceGraph& graph) {
  const std::size_t n = graph.size();
  const auto& edges = graph.edges();
  const std::size_t m = edges.size();
  if (n > kSpanningTreeMaxPoints || m > kSpanningTreeMaxEdges)
    throw DomainError("spanning-tree enumeration is limited to 8 points and 16 edges");

  double tree_weight = 0.0;
  Matrix forest_weight(n, n);
  std::vector<std::size_t> parent(n);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size + 2 != n && size + 1 != n) continue;
    std::iota(parent.begin(), parent.end(), 0);
    double weight = 1.0;
    bool acyclic = true;
    for (std::size_t k = 0; k < m && acyclic; ++k) {
      if (!(mask & (std::uint32_t{1} << k))) continue;
      const std::size_t ra = find(edges[k].a);
      const std::size_t rb = find(edges[k].b);
      if (ra == rb) acyclic = false;
      parent[ra] = rb;
      weight /= edges[k].weight;
    }
    if (!acyclic) continue;
    if (size + 1 == n) {
      tree_weight += weight;
    } else {
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
          if (find(x) != find(y)) forest_weight(x, y) += weight;
    }
  }
  Matrix r(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      r(x, y) = r(y, x) = forest_weight(x, y) / tree_weight;
  return r;
}

double spanning_tree_resistance(const ConductanceGraph& graph, std::size_t x,
                                std::size_t y) {
  if (x >= graph.size() || y >= graph.size()) throw DomainError("point index out of range");
  if (x == y) throw DomainError("effective resistance needs distinct points");
  return spanning_tree_resistance_table(graph)(x, y);
}

double leibniz_margin(const ConductanceGraph& graph, const CommObservable& f,
                      const CommObservable& g) {
  if (f.size() != graph.size() || g.size() != graph.size())
    throw ShapeMismatch("function length differs from the graph");
  Vector fg(f.size());
  for (std::size_t i = 0; i < fg.size(); ++i) fg[i] = f[i] * g[i];
  const double lhs = resistance_seminorm(graph, CommObservable(std::move(fg)));
  const double rhs = resistance_seminorm(graph, f) * norm_inf(g.values()) +
                     norm_inf(f.values()) * resistance_seminorm(graph, g);
  return lhs - rhs;
}

std::optional<LeibnizWitness> find_leibniz_witness(std::uint64_t seed,
                                                   int max_graphs,
                                                   double min_margin) {
  for (int trial = 0; trial < max_graphs; ++trial) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    std::uniform_int_distribution<std::size_t> size_pick(3, 5);
    std::uniform_real_distribution<double> resist(0.2, 5.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::bernoulli_distribution extra(0.4);
    const std::size_t n = size_pick(rng);

    std::vector<Edge> edges;
    std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
    for (std::size_t i = 1; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      const std::size_t j = pick(rng);
      edges.push_back({j, i, resist(rng)});
      present[i][j] = present[j][i] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!present[i][j] && extra(rng)) edges.push_back({i, j, resist(rng)});
    const ConductanceGraph graph(FiniteSpace::numbered(n), std::move(edges));

    // Coordinate hill climb on (f, g) from a random start.
    Vector z(2 * n);
    for (double& v : z) v = unit(rng);
    auto margin_of = [&](const Vector& v) {
      return leibniz_margin(graph, CommObservable(Vector(v.begin(), v.begin() + n)),
                            CommObservable(Vector(v.begin() + n, v.end())));
    };
    double best = margin_of(z);
    double step = 0.5;
    std::uniform_int_distribution<std::size_t> coord(0, 2 * n - 1);
    for (int it = 0; it < 2000 && step > 1e-6; ++it) {
      const std::size_t k = coord(rng);
      bool improved = false;
      for (double sign : {1.0, -1.0}) {
        Vector trial_z = z;
        trial_z[k] += sign * step;
        const double m = margin_of(trial_z);
        if (m > best) {
          best = m;
          z = std::move(trial_z);
          improved = true;
          break;
        }
      }
      if (!improved && it % (2 * static_cast<int>(n)) == 0) step *= 0.7;
    }
    if (best > min_margin) {
      return LeibnizWitness{graph, CommObservable(Vector(z.begin(), z.begin() + n)),
                            CommObservable(Vector(z.begin() + n, z.end())), best};
    }
  }
  return std::nullopt;
}

}  // namespace statemetric
