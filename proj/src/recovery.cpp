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


#include "statemetric/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "statemetric/error.hpp"
#include "statemetric/sampling.hpp"

namespace statemetric {

namespace {

constexpr std::uint64_t kRefinementStream = 0x7265636f76657279ULL;
constexpr double kInitialStep = 0.1;

class RatioSearch {
 public:
  RatioSearch(const SeminormSpec& spec, const Observable& a, std::uint64_t seed,
              const EngineOptions& options)
      : spec_(spec), a_(a), seed_(seed), options_(options) {}

  double best() const { return best_; }

  // Offers a pair; on a new record, hill-climbs from it with a stream keyed
  // by `tag`.
  void offer(const State& mu, const State& nu, std::uint64_t tag) {
    const double r = ratio(mu, nu);
    if (r <= best_) return;
    best_ = r;
    refine(mu, nu, tag);
  }

 private:
  double ratio(const State& mu, const State& nu) const {
    const double num = std::abs(pair(difference(mu, nu), a_));
    if (num == 0.0) return 0.0;
    double upper;
    try {
      upper = state_metric(spec_, mu, nu, options_).upper;
    } catch (const NoConvergence& e) {
      upper = e.upper();
    }
    return std::isfinite(upper) && upper > 0.0 ? num / upper : 0.0;
  }

  void refine(State mu, State nu, std::uint64_t tag) {
    Rng rng(derive_seed(derive_seed(seed_, kRefinementStream), tag));
    double current = best_;
    double step = kInitialStep;
    const Shape shape = spec_.shape();
    for (int s = 0; s < kRefinementSteps; ++s) {
      const State extreme = random_extreme_state(rng, shape);
      const bool move_mu = s % 2 == 0;
      const State mu2 = move_mu ? mix(mu, extreme, step) : mu;
      const State nu2 = move_mu ? nu : mix(nu, extreme, step);
      const double r = ratio(mu2, nu2);
      if (r > current) {
        current = r;
        mu = mu2;
        nu = nu2;
      } else {
        step *= 0.5;
      }
    }
    best_ = std::max(best_, current);
  }

  const SeminormSpec& spec_;
  const Observable& a_;
  std::uint64_t seed_;
  EngineOptions options_;
  double best_ = 0.0;
};

}  // namespace

double extreme_seminorm(const CommObservable& f, const MetricTable& table) {
  if (f.size() != table.size())
    throw ShapeMismatch("observable and metric table have different sizes");
  double best = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t y = x + 1; y < f.size(); ++y)
      best = std::max(best, std::abs(f[x] - f[y]) / table(x, y));
  return best;
}

double sampled_recovered_seminorm(const SeminormSpec& spec, const Observable& a,
                                  std::size_t samples, std::uint64_t seed,
                                  const EngineOptions& options) {
  if (shape_of(a) != spec.shape()) throw ShapeMismatch("observable does not fit the seminorm");
  // The sandwich L_ρ ≤ L pins constants to 0 without rounding noise.
  if (eval(spec, a) == 0.0) return 0.0;
  RatioSearch search(spec, a, seed, options);
  const Shape shape = spec.shape();
  // Tags 0..samples−1 belong to random pairs; point pairs use the tail.
  std::uint64_t point_tag = std::numeric_limits<std::uint64_t>::max();
  if (shape.flavor == Flavor::kCommutative)
    for (std::size_t x = 0; x < shape.n; ++x)
      for (std::size_t y = x + 1; y < shape.n; ++y)
        search.offer(point_state(shape.n, x), point_state(shape.n, y), point_tag--);
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, i));
    const State mu = random_state(rng, shape);
    const State nu = random_state(rng, shape);
    search.offer(mu, nu, i);
  }
  return search.best();
}

RecoveryReport compare(const SeminormSpec& spec, const std::vector<NamedObservable>& observables,
                       std::size_t samples, std::uint64_t seed, double tol_report,
                       const EngineOptions& options) {
  RecoveryReport report;
  report.seed = seed;
  report.samples = samples;
  report.tol_report = tol_report;
  std::optional<MetricTable> table;
  if (spec.shape().flavor == Flavor::kCommutative && !observables.empty())
    table = metric_table(spec, options);
  for (const NamedObservable& obs : observables) {
    RecoveryRecord rec;
    rec.name = obs.name;
    rec.lipschitz = eval(spec, obs.value);
    if (table) rec.extreme = extreme_seminorm(std::get<CommObservable>(obs.value), *table);
    rec.recovered = sampled_recovered_seminorm(spec, obs.value, samples, seed, options);
    rec.extreme_insufficient = rec.extreme && *rec.extreme < rec.lipschitz - 1e-6;
    rec.recovery_witnessed = rec.recovered >= rec.lipschitz - tol_report;
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace statemetric
