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


#include "statemetric/properties.hpp"

#include <algorithm>
#include <cmath>

#include "statemetric/error.hpp"

namespace statemetric {

namespace {

constexpr double kStateTolerance = 1e-12;

void require_commutative(const SeminormSpec& spec, const char* check) {
  if (spec.shape().flavor != Flavor::kCommutative)
    throw DomainError(std::string(check) + " needs a commutative seminorm");
}

double sup_norm(const Observable& a) {
  if (const auto* f = std::get_if<CommObservable>(&a)) return norm_inf(f->values());
  return op_norm(std::get<MatObservable>(a).matrix());
}

Observable product(const Observable& a, const Observable& b) {
  if (const auto* f = std::get_if<CommObservable>(&a)) {
    const Vector& g = std::get<CommObservable>(b).values();
    Vector out(f->size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*f)[i] * g[i];
    return CommObservable(std::move(out));
  }
  return MatObservable(jordan_product(std::get<MatObservable>(a).matrix(),
                                      std::get<MatObservable>(b).matrix()));
}

std::vector<Observable> with_indicators(const Shape& shape, std::vector<Observable> list) {
  for (std::size_t x = 0; x < shape.n; ++x) {
    Vector e(shape.n, 0.0);
    e[x] = 1.0;
    Observable indicator = CommObservable(e);
    if (shape.flavor == Flavor::kMatrix) indicator = MatObservable(HermMatrix::diagonal(e));
    if (std::find(list.begin(), list.end(), indicator) == list.end())
      list.push_back(std::move(indicator));
  }
  for (const Observable& a : list)
    if (shape_of(a) != shape) throw ShapeMismatch("canonical observable does not fit the seminorm");
  return list;
}

CheckReport named(std::string name) {
  CheckReport report;
  report.name = std::move(name);
  return report;
}

Violation make_violation(std::string kind, std::vector<Observable> observables,
                         std::vector<State> states, double t, double lhs, double rhs) {
  Violation v;
  v.kind = std::move(kind);
  v.observables = std::move(observables);
  v.states = std::move(states);
  v.t = t;
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = lhs - rhs;
  return v;
}

void record(CheckReport& report, const CheckOptions& options, Violation v) {
  if (v.margin > options.slack) report.violations.push_back(std::move(v));
}

void finish(CheckReport& report) { report.pass = report.violations.empty(); }

// Runs `attempt` on fresh per-attempt streams until `trials` configurations
// were feasible or the attempt budget is spent. `attempt` returns false for
// an infeasible configuration.
template <class Attempt>
void run_sampled(CheckReport& report, const CheckOptions& options, Attempt attempt) {
  const std::size_t budget = options.trials * std::max<std::size_t>(options.attempts_per_trial, 1);
  for (std::size_t i = 0; i < budget && report.trials < options.trials; ++i) {
    Rng rng(derive_seed(options.seed, i));
    if (attempt(rng))
      ++report.trials;
    else
      ++report.rejected;
  }
  if (report.trials < options.trials)
    report.notes.push_back("only " + std::to_string(report.trials) + " of " +
                           std::to_string(options.trials) +
                           " configurations were feasible within the attempt budget");
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

std::optional<State> shifted_state(const State& mu, const ZeroSumFunctional& shift) {
  if (shape_of(mu) != shift.shape()) throw ShapeMismatch("shift does not fit the state");
  if (const auto* p = std::get_if<ProbState>(&mu)) {
    Vector w = p->weights();
    const Vector& s = shift.components();
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] += s[i];
      if (w[i] < -kStateTolerance) return std::nullopt;
      w[i] = std::max(w[i], 0.0);
    }
    return ProbState(std::move(w));
  }
  HermMatrix h = std::get<DensityState>(mu).matrix() + shift.matrix();
  if (eigenvalues(h).front() < -kStateTolerance) return std::nullopt;
  return DensityState(std::move(h));
}

CheckReport check_lattice(const SeminormSpec& spec, const CheckOptions& options,
                          const std::vector<Observable>& canonical) {
  require_commutative(spec, "lattice check");
  CheckReport report = named("lattice");
  const Shape shape = spec.shape();
  auto test = [&](const Observable& f, const Observable& g) {
    const Observable join =
        lattice_join(std::get<CommObservable>(f), std::get<CommObservable>(g));
    record(report, options,
           make_violation("lattice", {f, g}, {}, 0.0, eval(spec, join),
                          std::max(eval(spec, f), eval(spec, g))));
    ++report.trials;
  };
  const std::vector<Observable> fixed = with_indicators(shape, canonical);
  for (std::size_t i = 0; i < fixed.size(); ++i)
    for (std::size_t j = i + 1; j < fixed.size(); ++j) test(fixed[i], fixed[j]);
  for (std::size_t i = 0; i < options.trials; ++i) {
    Rng rng(derive_seed(options.seed, i));
    const Observable f = random_observable(rng, shape);
    const Observable g = random_observable(rng, shape);
    test(f, g);
  }
  finish(report);
  return report;
}

CheckReport check_weak_lattice(const SeminormSpec& spec, const CheckOptions& options,
                               const std::vector<Observable>& canonical) {
  require_commutative(spec, "weak-lattice check");
  CheckReport report = named("weak-lattice");
  const Shape shape = spec.shape();
  const CommObservable zero = CommObservable::constant(shape.n, 0.0);
  auto test = [&](const Observable& f) {
    const Observable join = lattice_join(std::get<CommObservable>(f), zero);
    record(report, options,
           make_violation("weak-lattice", {f}, {}, 0.0, eval(spec, join), eval(spec, f)));
    ++report.trials;
  };
  for (const Observable& f : with_indicators(shape, canonical)) {
    test(f);
    test(scaled(f, -1.0));
  }
  for (std::size_t i = 0; i < options.trials; ++i) {
    Rng rng(derive_seed(options.seed, i));
    test(random_observable(rng, shape));
  }
  finish(report);
  return report;
}

CheckReport check_leibniz(const SeminormSpec& spec, const CheckOptions& options,
                          const std::vector<Observable>& canonical) {
  CheckReport report = named("leibniz");
  const Shape shape = spec.shape();
  if (shape.flavor == Flavor::kMatrix)
    report.notes.push_back("matrix observables use the Jordan product (ab + ba)/2");
  auto test = [&](const Observable& a, const Observable& b) {
    const double rhs = eval(spec, a) * sup_norm(b) + sup_norm(a) * eval(spec, b);
    record(report, options,
           make_violation("leibniz", {a, b}, {}, 0.0, eval(spec, product(a, b)), rhs));
    ++report.trials;
  };
  const std::vector<Observable> fixed = with_indicators(shape, canonical);
  for (std::size_t i = 0; i < fixed.size(); ++i)
    for (std::size_t j = i + 1; j < fixed.size(); ++j) test(fixed[i], fixed[j]);
  for (std::size_t i = 0; i < options.trials; ++i) {
    Rng rng(derive_seed(options.seed, i));
    const Observable a = random_observable(rng, shape);
    const Observable b = random_observable(rng, shape);
    test(a, b);
  }
  finish(report);
  return report;
}

MetricFunction metric_of(const SeminormSpec& spec, const EngineOptions& options) {
  return [spec, options](const State& mu, const State& nu) {
    return state_metric(spec, mu, nu, options).value;
  };
}

StateSampler default_sampler(const Shape& shape) {
  return [shape](Rng& rng) {
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) return random_extreme_state(rng, shape);
    return random_state(rng, shape);
  };
}

CheckReport check_metric_axioms(const MetricFunction& d, const StateSampler& sample,
                                const CheckOptions& options) {
  CheckReport report = named("metric-axioms");
  for (std::size_t i = 0; i < options.trials; ++i) {
    Rng rng(derive_seed(options.seed, i));
    const State mu = sample(rng);
    const State nu = sample(rng);
    const State omega = sample(rng);
    const double d_mn = d(mu, nu);
    const double d_nm = d(nu, mu);
    record(report, options, make_violation("identity", {}, {mu}, 0.0, std::abs(d(mu, mu)), 0.0));
    record(report, options, make_violation("nonnegativity", {}, {mu, nu}, 0.0, -d_mn, 0.0));
    if (!(mu == nu)) {
      // Strict: violated when d(μ,ν) does not exceed the slack.
      Violation v = make_violation("positivity", {}, {mu, nu}, 0.0, options.slack, d_mn);
      if (v.margin >= 0.0) report.violations.push_back(std::move(v));
    }
    record(report, options,
           make_violation("symmetry", {}, {mu, nu}, 0.0, std::abs(d_mn - d_nm), 0.0));
    record(report, options,
           make_violation("triangle", {}, {mu, nu, omega}, 0.0, d(mu, omega), d_mn + d(nu, omega)));
    ++report.trials;
  }
  finish(report);
  return report;
}

CheckReport check_convex(const MetricFunction& d, const StateSampler& sample,
                         const CheckOptions& options) {
  CheckReport report = named("convex");
  run_sampled(report, options, [&](Rng& rng) {
    const State mu = sample(rng);
    const State nu1 = sample(rng);
    const State nu2 = sample(rng);
    const double t = uniform(rng, 0.0, 1.0);
    const State mixed = mix(nu2, nu1, t);
    record(report, options,
           make_violation("convex", {}, {mu, nu1, nu2}, t, d(mu, mixed),
                          t * d(mu, nu1) + (1.0 - t) * d(mu, nu2)));
    return true;
  });
  finish(report);
  return report;
}

CheckReport check_midpoint_balanced(const MetricFunction& d, const StateSampler& sample,
                                    const CheckOptions& options) {
  CheckReport report = named("midpoint-balanced");
  run_sampled(report, options, [&](Rng& rng) {
    const State mu = sample(rng);
    const State nu = sample(rng);
    const State mu2 = sample(rng);
    const std::optional<State> nu2 = shifted_state(mu2, difference(nu, mu));
    if (!nu2) return false;
    record(report, options,
           make_violation("midpoint-balanced", {}, {mu, nu, mu2, *nu2}, 0.0,
                          std::abs(d(mu, nu) - d(mu2, *nu2)), 0.0));
    return true;
  });
  finish(report);
  return report;
}

CheckReport check_midpoint_concave(const MetricFunction& d, const StateSampler& sample,
                                   const CheckOptions& options) {
  CheckReport report = named("midpoint-concave");
  run_sampled(report, options, [&](Rng& rng) {
    const State mu = sample(rng);
    const State nu = sample(rng);
    const State mu2 = sample(rng);
    const State nu2 = sample(rng);
    record(report, options,
           make_violation("midpoint-concave", {}, {mu, nu, mu2, nu2}, 0.0,
            d(mix(mu, mu2, 0.5), mix(nu, nu2, 0.5)), 0.5 * (d(mu, nu) + d(mu2, nu2))));
    return true;
  });
  finish(report);
  return report;
}

CheckReport check_linear(const MetricFunction& d, const StateSampler& sample,
                         const CheckOptions& options) {
  CheckReport report = named("linear");
  run_sampled(report, options, [&](Rng& rng) {
    const State mu = sample(rng);
    const State nu = sample(rng);
    const State omega = sample(rng);
    const double t = uniform(rng, 0.0, 2.0);
    const std::optional<State> target = shifted_state(mu, difference(omega, nu).scaled(t));
    if (!target) return false;
    record(report, options,
           make_violation("linear", {}, {mu, nu, omega}, t,
                          std::abs(d(mu, *target) - t * d(nu, omega)), 0.0));
    return true;
  });
  finish(report);
  return report;
}

namespace {

// (s, λ⁺/s, λ⁻/s); s = 0 for λ = 0.
struct Decomposition {
  double mass = 0.0;
  std::optional<State> plus;
  std::optional<State> minus;
};

Decomposition decompose(const ZeroSumFunctional& lambda) {
  Decomposition out;
  if (!lambda.is_matrix()) {
    const Vector& l = lambda.components();
    Vector p(l.size()), m(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
      p[i] = std::max(l[i], 0.0);
      m[i] = std::max(-l[i], 0.0);
    }
    out.mass = 0.5 * (sum(p) + sum(m));
    if (out.mass == 0.0) return out;
    const double sp = sum(p);
    const double sm = sum(m);
    for (double& v : p) v /= sp;
    for (double& v : m) v /= sm;
    out.plus = ProbState(p);
    out.minus = ProbState(m);
    return out;
  }
  HermMatrix p = spectral_apply(lambda.matrix(), [](double x) { return std::max(x, 0.0); });
  HermMatrix m = spectral_apply(lambda.matrix(), [](double x) { return std::max(-x, 0.0); });
  const double sp = p.trace();
  const double sm = m.trace();
  out.mass = 0.5 * (sp + sm);
  if (sp <= 0.0 || sm <= 0.0) {
    out.mass = 0.0;
    return out;
  }
  out.plus = DensityState(p * (1.0 / sp));
  out.minus = DensityState(m * (1.0 / sm));
  return out;
}

double norm_value(const MetricFunction& d, const ZeroSumFunctional& lambda) {
  const Decomposition dec = decompose(lambda);
  if (dec.mass == 0.0) return 0.0;
  return dec.mass * d(*dec.plus, *dec.minus);
}

}  // namespace

NormFromMetric norm_from_metric(const MetricFunction& d, const StateSampler& sample,
                                const std::vector<ZeroSumFunctional>& requested,
                                std::size_t pairs, std::uint64_t seed) {
  NormFromMetric out;
  for (const ZeroSumFunctional& lambda : requested) out.values.push_back(norm_value(d, lambda));
  const std::size_t budget = 50 * pairs;
  for (std::size_t i = 0; i < budget && out.representations < pairs; ++i) {
    Rng rng(derive_seed(seed, i));
    const State mu = sample(rng);
    const State nu = sample(rng);
    const State omega = sample(rng);
    // μ′ moves toward ω; ν′ = μ′ − (μ − ν) keeps the same difference.
    const State mu2 = mix(mu, omega, uniform(rng, 0.0, 1.0));
    const ZeroSumFunctional lambda = difference(mu, nu);
    const std::optional<State> nu2 = shifted_state(mu2, -lambda);
    if (!nu2) {
      ++out.rejected;
      continue;
    }
    const double base = d(mu, nu);
    out.max_discrepancy = std::max(out.max_discrepancy, std::abs(base - d(mu2, *nu2)));
    // The disjoint representation λ = s·(λ⁺/s − λ⁻/s) must give the same
    // value through homogeneity.
    out.max_discrepancy = std::max(out.max_discrepancy, std::abs(base - norm_value(d, lambda)));
    ++out.representations;
  }
  return out;
}

}  // namespace statemetric
