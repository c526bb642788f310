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


#include "statemetric/metric_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "statemetric/error.hpp"
#include "statemetric/sampling.hpp"

namespace statemetric {

namespace {

// Spectral seminorms contribute at most this many cuts per relaxation.
constexpr std::size_t kCutsPerRound = 8;
constexpr double kInitialBox = 4.0;
// Generated cuts left slack for this many consecutive relaxations are
// dropped; the explicit cuts of polyhedral seminorms are kept.
constexpr int kCutPatience = 25;

// Observables modulo the order unit, parameterized by the first K − 1
// coordinates: commutative observables pin the last point to 0, matrix
// observables pin the trace to 0 through the last diagonal entry.
class Gauge {
 public:
  explicit Gauge(const Shape& shape) : shape_(shape) {}

  std::size_t dim() const { return shape_.coordinate_count() - 1; }

  Vector expand(std::span<const double> z) const {
    const std::size_t n = shape_.n;
    Vector c(shape_.coordinate_count(), 0.0);
    if (shape_.flavor == Flavor::kCommutative) {
      std::copy(z.begin(), z.end(), c.begin());
      return c;
    }
    double trace = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      c[i] = z[i];
      trace += z[i];
    }
    c[n - 1] = -trace;
    std::copy(z.begin() + (n - 1), z.end(), c.begin() + n);
    return c;
  }

  // Row vector r with r · expand(z) = pull(r) · z.
  Vector pull(std::span<const double> row) const {
    const std::size_t n = shape_.n;
    Vector r(dim());
    if (shape_.flavor == Flavor::kCommutative) {
      std::copy(row.begin(), row.end() - 1, r.begin());
      return r;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) r[i] = row[i] - row[n - 1];
    std::copy(row.begin() + n, row.end(), r.begin() + (n - 1));
    return r;
  }

  Observable observable(std::span<const double> z) const {
    return from_coordinates(shape_, expand(z));
  }

 private:
  Shape shape_;
};

bool explicit_polyhedral(const SeminormSpec& spec) {
  return std::holds_alternative<std::vector<Cut>>(unit_ball_constraints(spec));
}

FiniteSpace space_of(const SeminormSpec& spec) {
  if (const auto* g = std::get_if<GraphLipSeminorm>(&spec.variant())) return g->graph.space();
  if (const auto* r = std::get_if<ResistanceSeminorm>(&spec.variant()))
    return r->graph.space();
  if (const auto* m = std::get_if<MetricLipSeminorm>(&spec.variant())) return m->table.space();
  return FiniteSpace::numbered(spec.shape().n);
}

void require_fit(const SeminormSpec& spec, const Shape& shape) {
  if (spec.shape() != shape)
    throw ShapeMismatch("states are " + to_string(shape.flavor) + " of size " +
                        std::to_string(shape.n) + ", seminorm expects " +
                        to_string(spec.shape().flavor) + " of size " +
                        std::to_string(spec.shape().n));
}

}  // namespace

CertifiedValue dual_norm(const SeminormSpec& spec, const ZeroSumFunctional& lambda,
                         const EngineOptions& options) {
  const Shape shape = spec.shape();
  require_fit(spec, lambda.shape());
  if (!(options.tol > 0.0)) throw DomainError("tolerance must be positive");
  const Gauge gauge(shape);
  const std::size_t k = gauge.dim();

  Vector weights(shape.coordinate_count());
  for (std::size_t c = 0; c < weights.size(); ++c) {
    Vector e(weights.size(), 0.0);
    e[c] = 1.0;
    weights[c] = pair(lambda, from_coordinates(shape, e));
  }
  LinearProgram lp{gauge.pull(weights), {}};

  CertifiedValue result;
  result.witness = gauge.observable(Vector(k, 0.0));
  if (norm_inf(lp.objective) == 0.0) {
    result.exact = true;
    return result;
  }

  const bool polyhedral = explicit_polyhedral(spec);
  if (polyhedral) {
    const UnitBall ball = unit_ball_constraints(spec);
    for (const Cut& cut : std::get<std::vector<Cut>>(ball))
      lp.add(gauge.pull(cut.coefficients), cut.bound);
  }
  const bool exact = polyhedral || spec.is_resistance();
  const std::size_t permanent = lp.constraints.size();
  std::vector<int> idle;

  double box = kInitialBox;
  double upper = std::numeric_limits<double>::infinity();
  double lower = 0.0;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    LinearProgram relaxed = lp;
    for (std::size_t c = 0; c < k; ++c) {
      Vector e(k, 0.0);
      e[c] = 1.0;
      relaxed.add(e, box);
      e[c] = -1.0;
      relaxed.add(e, box);
    }
    const LpOutcome out = solve_lp(relaxed);
    if (out.status != LpStatus::kOptimal)
      throw SolverFailure("relaxation of a bounded problem was not solved to optimality");
    std::size_t kept = permanent;
    for (std::size_t c = permanent; c < lp.constraints.size(); ++c) {
      const LinearConstraint& row = lp.constraints[c];
      const bool tight =
          dot(row.coefficients, out.point) >= row.bound - 1e-9 * (1.0 + std::abs(row.bound));
      int& age = idle[c - permanent];
      age = tight ? 0 : age + 1;
      if (age > kCutPatience) continue;
      idle[kept - permanent] = age;
      if (kept != c) lp.constraints[kept] = std::move(lp.constraints[c]);
      ++kept;
    }
    lp.constraints.resize(kept);
    idle.resize(kept - permanent);

    const Observable a = gauge.observable(out.point);
    const double la = eval(spec, a);
    const double objective = out.value;
    if (la > 0.0 && objective / la > lower) {
      lower = objective / la;
      result.witness = scaled(a, 1.0 / la);
    }
    bool box_active = false;
    for (double z : out.point) box_active = box_active || std::abs(z) >= box * (1.0 - 1e-9);
    // Without active box constraints the relaxation only uses valid cuts.
    if (!box_active) upper = std::min(upper, objective);

    const std::vector<Cut> cuts = la > 1.0 + kSeparationSlack
                                      ? separation_cuts(spec, a, kCutsPerRound)
                                      : std::vector<Cut>{};
    if (!box_active && cuts.empty()) {
      if (exact) {
        result.value = result.upper = result.lower = objective;
        result.witness = scaled(a, 1.0 / std::max(la, 1.0));
        result.exact = true;
        result.iterations = iter;
        return result;
      }
    }
    if (!box_active && upper - lower <= options.tol) {
      result.lower = lower;
      result.upper = upper;
      result.value = 0.5 * (lower + upper);
      result.iterations = iter;
      return result;
    }
    if (cuts.empty()) {
      if (!box_active)
        throw NoConvergence("feasible relaxation optimum leaves a gap above tolerance", lower,
                            upper, iter);
      box *= 2.0;
      continue;
    }
    for (const Cut& cut : cuts) {
      lp.add(gauge.pull(cut.coefficients), cut.bound);
      idle.push_back(0);
    }
  }
  throw NoConvergence("cutting-plane iteration cap reached", lower, upper,
                      options.max_iterations);
}

CertifiedValue state_metric(const SeminormSpec& spec, const State& mu, const State& nu,
                            const EngineOptions& options) {
  require_fit(spec, shape_of(mu));
  require_fit(spec, shape_of(nu));
  return dual_norm(spec, difference(mu, nu), options);
}

double trace_distance(const DensityState& mu, const DensityState& nu) {
  if (mu.size() != nu.size()) throw ShapeMismatch("density matrices of different dimensions");
  return trace_norm(mu.matrix() - nu.matrix());
}

namespace {

// Rebuilds the optimal potential from the constraints tight at the LP
// optimum, walking outward from the most negative point of μ − ν, so that
// the value is a plain sum of costs. Kept only if it is feasible and agrees
// with the LP value.
double polish(const std::vector<Edge>& pairs, const Vector& lp_potential, const ProbState& mu,
              const ProbState& nu, double lp_value) {
  const std::size_t n = lp_potential.size();
  Vector lambda(n);
  for (std::size_t x = 0; x < n; ++x) lambda[x] = mu[x] - nu[x];
  const std::size_t root = std::min_element(lambda.begin(), lambda.end()) - lambda.begin();
  std::vector<std::vector<std::pair<std::size_t, double>>> tight(n);
  for (const Edge& e : pairs) {
    const double drop = lp_potential[e.a] - lp_potential[e.b];
    if (std::abs(drop) < e.weight - 1e-9 * (1.0 + e.weight)) continue;
    const double signed_cost = drop > 0.0 ? e.weight : -e.weight;
    tight[e.b].push_back({e.a, signed_cost});
    tight[e.a].push_back({e.b, -signed_cost});
  }
  Vector f(n, 0.0);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> queue{root};
  seen[root] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (auto [v, step] : tight[u])
      if (!seen[v]) {
        seen[v] = true;
        f[v] = f[u] + step;
        queue.push_back(v);
      }
  }
  // Points off the tight tree keep their LP potential.
  for (std::size_t x = 0; x < n; ++x)
    if (!seen[x]) f[x] = lp_potential[x] - lp_potential[root];
  for (const Edge& e : pairs)
    if (std::abs(f[e.a] - f[e.b]) > e.weight + 1e-9 * (1.0 + e.weight)) return lp_value;
  double value = 0.0;
  for (std::size_t x = 0; x < n; ++x) value += lambda[x] * f[x];
  return std::abs(value - lp_value) <= 1e-9 * (1.0 + std::abs(lp_value)) ? value : lp_value;
}

double transport_lp(std::size_t n, const std::vector<Edge>& pairs, const ProbState& mu,
                    const ProbState& nu) {
  if (mu.size() != n || nu.size() != n)
    throw ShapeMismatch("measures do not live on the transport space");
  LinearProgram lp;
  lp.objective.resize(n - 1);
  for (std::size_t x = 0; x + 1 < n; ++x) lp.objective[x] = mu[x] - nu[x];
  for (const Edge& e : pairs) {
    Vector c(n, 0.0);
    c[e.a] = 1.0;
    c[e.b] = -1.0;
    lp.add(Vector(c.begin(), c.end() - 1), e.weight);
    for (double& v : c) v = -v;
    lp.add(Vector(c.begin(), c.end() - 1), e.weight);
  }
  const LpOutcome out = solve_lp(lp);
  if (out.status != LpStatus::kOptimal)
    throw SolverFailure("transport LP was not solved to optimality");
  Vector f(out.point);
  f.push_back(0.0);
  return polish(pairs, f, mu, nu, out.value);
}

}  // namespace

double monge_kantorovich(const MetricTable& table, const ProbState& mu, const ProbState& nu) {
  std::vector<Edge> pairs;
  for (std::size_t x = 0; x < table.size(); ++x)
    for (std::size_t y = x + 1; y < table.size(); ++y) pairs.push_back({x, y, table(x, y)});
  return transport_lp(table.size(), pairs, mu, nu);
}

double monge_kantorovich(const CostGraph& graph, const ProbState& mu, const ProbState& nu) {
  return transport_lp(graph.size(), graph.edges(), mu, nu);
}

MetricTable metric_table(const SeminormSpec& spec, const EngineOptions& options) {
  const Shape shape = spec.shape();
  if (shape.flavor != Flavor::kCommutative)
    throw DomainError("metric tables need a commutative seminorm");
  const std::size_t n = shape.n;
  Matrix d(n, n);
  bool exact = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const CertifiedValue v = state_metric(spec, point_state(n, x), point_state(n, y), options);
      d(x, y) = d(y, x) = v.value;
      exact = exact && v.exact;
    }
  return MetricTable(space_of(spec), std::move(d), exact ? 1e-9 : 1e-9 + 3.0 * options.tol);
}

Radius radius(const SeminormSpec& spec, const EngineOptions& options, std::uint64_t seed,
              std::size_t pure_samples) {
  const Shape shape = spec.shape();
  if (shape.flavor == Flavor::kCommutative)
    return {0.5 * metric_table(spec, options).diameter(), true};
  if (std::holds_alternative<QuotientSeminorm>(spec.variant())) return {1.0, true};
  Rng rng(seed);
  double best = 0.0;
  for (std::size_t s = 0; s + 1 < pure_samples; s += 2) {
    const DensityState mu = random_pure_state(rng, shape.n);
    const DensityState nu = random_pure_state(rng, shape.n);
    best = std::max(best, state_metric(spec, mu, nu, options).value);
  }
  return {0.5 * best, false};
}

}  // namespace statemetric
