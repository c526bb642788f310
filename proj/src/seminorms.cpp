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


#include "statemetric/seminorms.hpp"

#include <algorithm>
#include <cmath>

#include "statemetric/error.hpp"
#include "statemetric/resistance.hpp"

namespace statemetric {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_shape(const Shape& expected, const Observable& a) {
  if (shape_of(a) != expected)
    throw ShapeMismatch("observable is " + to_string(shape_of(a).flavor) + " of size " +
                        std::to_string(shape_of(a).n) + ", seminorm expects " +
                        to_string(expected.flavor) + " of size " +
                        std::to_string(expected.n));
}

const Vector& values_of(const Observable& a) {
  return std::get<CommObservable>(a).values();
}

// u* H u for u = x + i·y.
double hermitian_quadratic(const HermMatrix& h, std::span<const double> x,
                           std::span<const double> y) {
  const std::size_t n = h.n();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s += h.re()(i, j) * (x[i] * x[j] + y[i] * y[j]) + 2.0 * y[i] * h.im()(i, j) * x[j];
  return s;
}

Vector unit_vector(std::size_t n, std::size_t i, double scale = 1.0) {
  Vector e(n, 0.0);
  e[i] = scale;
  return e;
}

Cut pair_cut(std::size_t n, std::size_t x, std::size_t y, double scale, double bound) {
  Vector c(n, 0.0);
  c[x] = scale;
  c[y] = -scale;
  return {std::move(c), bound};
}

std::vector<Cut> explicit_cuts(const SeminormSpec& spec) {
  std::vector<Cut> cuts;
  std::visit(Overloaded{
                 [&](const GraphLipSeminorm& s) {
                   const std::size_t n = s.graph.size();
                   for (const Edge& e : s.graph.edges()) {
                     cuts.push_back(pair_cut(n, e.a, e.b, 1.0, e.weight));
                     cuts.push_back(pair_cut(n, e.b, e.a, 1.0, e.weight));
                   }
                 },
                 [&](const MetricLipSeminorm& s) {
                   const std::size_t n = s.table.size();
                   for (std::size_t x = 0; x < n; ++x)
                     for (std::size_t y = x + 1; y < n; ++y) {
                       cuts.push_back(pair_cut(n, x, y, 1.0, s.table(x, y)));
                       cuts.push_back(pair_cut(n, y, x, 1.0, s.table(x, y)));
                     }
                 },
                 [&](const QuotientSeminorm& s) {
                   for (std::size_t x = 0; x < s.shape.n; ++x)
                     for (std::size_t y = 0; y < s.shape.n; ++y)
                       if (x != y) cuts.push_back(pair_cut(s.shape.n, x, y, 0.5, 1.0));
                 },
                 [](const auto&) {}},
             spec.variant());
  return cuts;
}

bool same_cut(const Cut& a, const Cut& b) {
  if (std::abs(a.bound - b.bound) > 1e-12) return false;
  double diff = 0.0;
  for (std::size_t k = 0; k < a.coefficients.size(); ++k)
    diff = std::max(diff, std::abs(a.coefficients[k] - b.coefficients[k]));
  return diff <= 1e-10 * (1.0 + norm_inf(a.coefficients));
}

void add_unique(std::vector<Cut>& cuts, Cut cut) {
  for (const Cut& c : cuts)
    if (same_cut(c, cut)) return;
  cuts.push_back(std::move(cut));
}

}  // namespace

// ---------------------------------------------------------------------------

DiracOperator::DiracOperator(Matrix re, Matrix im, std::vector<std::size_t> rep,
                             Shape shape, Adjointness adjointness)
    : re_(std::move(re)),
      im_(std::move(im)),
      rep_(std::move(rep)),
      shape_(shape),
      adjointness_(adjointness) {
  const std::size_t m = re_.rows();
  if (!re_.is_square() || im_.rows() != m || im_.cols() != m || m == 0)
    throw DomainError("Dirac operator must be a nonempty square matrix");
  if (!re_.all_finite() || !im_.all_finite())
    throw DomainError("Dirac operator has non-finite entries");
  const double re_sign = adjointness_ == Adjointness::kSkew ? -1.0 : 1.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (re_(i, j) != re_sign * re_(j, i) || im_(i, j) != -re_sign * im_(j, i))
        throw DomainError(adjointness_ == Adjointness::kSkew
                              ? "Dirac operator is not skew-adjoint"
                              : "Dirac operator is not self-adjoint");

  if (shape_.flavor == Flavor::kCommutative) {
    if (rep_.size() != m)
      throw DomainError("representation must assign a point to every Hilbert index");
    std::vector<bool> hit(shape_.n, false);
    for (std::size_t p : rep_) {
      if (p >= shape_.n) throw DomainError("representation points outside the space");
      hit[p] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
      throw DomainError("representation is not faithful: some point has no Hilbert index");
  } else if (m % shape_.n != 0) {
    throw DomainError("Hilbert dimension must be a multiple of n");
  }

  const std::size_t k = shape_.coordinate_count();
  basis_.reserve(k);
  Matrix image(2 * m * m, k);
  for (std::size_t c = 0; c < k; ++c) {
    basis_.push_back(commutator(from_coordinates(shape_, unit_vector(k, c))));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        image(i * m + j, c) = basis_.back().re()(i, j);
        image(m * m + i * m + j, c) = basis_.back().im()(i, j);
      }
  }
  if (matrix_rank(image) + 1 != k)
    throw DomainError("a non-constant observable commutes with the Dirac operator");
}

DiracOperator DiracOperator::commutative(Matrix re, Matrix im,
                                         std::vector<std::size_t> rep,
                                         std::size_t points, Adjointness adjointness) {
  if (points < 2) throw DomainError("a finite space needs at least two points");
  return DiracOperator(std::move(re), std::move(im), std::move(rep),
                       Shape{Flavor::kCommutative, points}, adjointness);
}

DiracOperator DiracOperator::commutative(Matrix re, Adjointness adjointness) {
  const std::size_t m = re.rows();
  std::vector<std::size_t> rep(m);
  for (std::size_t i = 0; i < m; ++i) rep[i] = i;
  Matrix im(m, m);
  return commutative(std::move(re), std::move(im), std::move(rep), m, adjointness);
}

DiracOperator DiracOperator::matrix(Matrix re, Matrix im, std::size_t n,
                                   Adjointness adjointness) {
  if (n < 2) throw DomainError("matrix algebra needs n ≥ 2");
  return DiracOperator(std::move(re), std::move(im), {}, Shape{Flavor::kMatrix, n},
                       adjointness);
}

HermMatrix DiracOperator::commutator(const Observable& a) const {
  require_shape(shape_, a);
  const std::size_t m = re_.rows();
  Matrix cre(m, m);
  Matrix cim(m, m);
  if (shape_.flavor == Flavor::kCommutative) {
    const Vector& f = values_of(a);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double df = f[rep_[j]] - f[rep_[i]];
        cre(i, j) = re_(i, j) * df;
        cim(i, j) = im_(i, j) * df;
      }
  } else {
    const HermMatrix& h = std::get<MatObservable>(a).matrix();
    const std::size_t k = m / shape_.n;
    Matrix ar(m, m);
    Matrix ai(m, m);
    for (std::size_t i = 0; i < shape_.n; ++i)
      for (std::size_t j = 0; j < shape_.n; ++j)
        for (std::size_t p = 0; p < k; ++p) {
          ar(i * k + p, j * k + p) = h.re()(i, j);
          ai(i * k + p, j * k + p) = h.im()(i, j);
        }
    cre = (re_ * ar - im_ * ai) - (ar * re_ - ai * im_);
    cim = (re_ * ai + im_ * ar) - (ar * im_ + ai * re_);
  }
  if (adjointness_ == Adjointness::kSelf) {
    Matrix neg = cim * -1.0;
    return HermMatrix(std::move(neg), std::move(cre));
  }
  return HermMatrix(std::move(cre), std::move(cim));
}

// ---------------------------------------------------------------------------

SeminormSpec SeminormSpec::quotient(const Shape& shape) {
  if (shape.n < 2) throw DomainError("quotient seminorm needs dimension ≥ 2");
  return SeminormSpec(Variant(QuotientSeminorm{shape}));
}

Shape SeminormSpec::shape() const {
  return std::visit(
      Overloaded{[](const DiracSeminorm& s) { return s.op.shape(); },
                 [](const GraphLipSeminorm& s) {
                   return Shape{Flavor::kCommutative, s.graph.size()};
                 },
                 [](const ResistanceSeminorm& s) {
                   return Shape{Flavor::kCommutative, s.graph.size()};
                 },
                 [](const QuotientSeminorm& s) { return s.shape; },
                 [](const MetricLipSeminorm& s) {
                   return Shape{Flavor::kCommutative, s.table.size()};
                 }},
      v_);
}

std::string SeminormSpec::kind() const {
  return std::visit(Overloaded{[](const DiracSeminorm&) { return "dirac"; },
                               [](const GraphLipSeminorm&) { return "graph-lip"; },
                               [](const ResistanceSeminorm&) { return "resistance"; },
                               [](const QuotientSeminorm&) { return "quotient"; },
                               [](const MetricLipSeminorm&) { return "metric-lip"; }},
                    v_);
}

double eval(const SeminormSpec& spec, const Observable& a) {
  require_shape(spec.shape(), a);
  return std::visit(
      Overloaded{
          [&](const DiracSeminorm& s) { return op_norm(s.op.commutator(a)); },
          [&](const GraphLipSeminorm& s) {
            const Vector& f = values_of(a);
            double best = 0.0;
            for (const Edge& e : s.graph.edges())
              best = std::max(best, std::abs(f[e.a] - f[e.b]) / e.weight);
            return best;
          },
          [&](const ResistanceSeminorm& s) {
            return resistance_seminorm(s.graph, std::get<CommObservable>(a));
          },
          [&](const QuotientSeminorm&) { return quotient_norm(a); },
          [&](const MetricLipSeminorm& s) {
            const Vector& f = values_of(a);
            double best = 0.0;
            for (std::size_t x = 0; x < f.size(); ++x)
              for (std::size_t y = x + 1; y < f.size(); ++y)
                best = std::max(best, std::abs(f[x] - f[y]) / s.table(x, y));
            return best;
          }},
      spec.variant());
}

SignPatternCuts::SignPatternCuts(ConductanceGraph graph) : graph_(std::move(graph)) {
  if (graph_.size() > kSignPatternMaxPoints)
    throw DomainError("sign-pattern enumeration is limited to 20 points; "
                      "use the separation oracle instead");
}

Cut SignPatternCuts::at(std::size_t pattern) const {
  const std::size_t n = graph_.size();
  if (pattern >= size()) throw DomainError("sign pattern out of range");
  Vector s(n);
  for (std::size_t x = 0; x < n; ++x) s[x] = (pattern >> x) & 1U ? -1.0 : 1.0;
  Vector c = apply_laplacian(graph_, s);
  for (double& v : c) v *= 0.5;
  return {std::move(c), 1.0};
}

UnitBall unit_ball_constraints(const SeminormSpec& spec) {
  if (const auto* r = std::get_if<ResistanceSeminorm>(&spec.variant()))
    return SignPatternCuts(r->graph);
  if (spec.is_dirac() || spec.shape().flavor == Flavor::kMatrix)
    return PolyhedralUnavailable{};
  return explicit_cuts(spec);
}

std::vector<Cut> separation_cuts(const SeminormSpec& spec, const Observable& a,
                                 std::size_t limit) {
  require_shape(spec.shape(), a);
  const Shape shape = spec.shape();
  const double threshold = 1.0 + kSeparationSlack;
  std::vector<Cut> cuts;
  if (limit == 0) return cuts;

  if (const auto* d = std::get_if<DiracSeminorm>(&spec.variant())) {
    const HermMatrix h = d->op.commutator(a);
    const EigenSystem es = eigh(h.real_embedding());
    const std::size_t m = h.n();
    std::vector<std::size_t> order(es.values.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return std::abs(es.values[i]) > std::abs(es.values[j]);
    });
    const auto& basis = d->op.commutator_basis();
    for (std::size_t idx : order) {
      if (std::abs(es.values[idx]) <= threshold || cuts.size() >= limit) break;
      const double sign = es.values[idx] > 0.0 ? 1.0 : -1.0;
      Vector x(m);
      Vector y(m);
      for (std::size_t i = 0; i < m; ++i) {
        x[i] = es.vectors(i, idx);
        y[i] = es.vectors(i + m, idx);
      }
      Vector c(basis.size());
      for (std::size_t k = 0; k < basis.size(); ++k)
        c[k] = sign * hermitian_quadratic(basis[k], x, y);
      add_unique(cuts, {std::move(c), 1.0});
    }
    return cuts;
  }

  if (shape.flavor == Flavor::kMatrix) {
    const HermMatrix& h = std::get<MatObservable>(a).matrix();
    const EigenSystem es = eigh(h.real_embedding());
    const std::size_t n = h.n();
    const std::size_t dim = es.values.size();
    auto column = [&](std::size_t idx, Vector& x, Vector& y) {
      x.resize(n);
      y.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = es.vectors(i, idx);
        y[i] = es.vectors(i + n, idx);
      }
    };
    Vector xt, yt, xb, yb;
    for (std::size_t top = dim; top-- > 0 && cuts.size() < limit;) {
      for (std::size_t bottom = 0; bottom < top && cuts.size() < limit; ++bottom) {
        if (0.5 * (es.values[top] - es.values[bottom]) <= threshold) break;
        column(top, xt, yt);
        column(bottom, xb, yb);
        Vector c = quadratic_form_coefficients(shape, xt, yt);
        const Vector cb = quadratic_form_coefficients(shape, xb, yb);
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = 0.5 * (c[k] - cb[k]);
        add_unique(cuts, {std::move(c), 1.0});
      }
      if (0.5 * (es.values[top] - es.values[0]) <= threshold) break;
    }
    return cuts;
  }

  const Vector& f = values_of(a);
  if (const auto* r = std::get_if<ResistanceSeminorm>(&spec.variant())) {
    if (resistance_seminorm(r->graph, std::get<CommObservable>(a)) <= threshold)
      return cuts;
    const Vector lf = apply_laplacian(r->graph, f);
    Vector s(lf.size());
    for (std::size_t x = 0; x < s.size(); ++x) s[x] = lf[x] < 0.0 ? -1.0 : 1.0;
    Vector c = apply_laplacian(r->graph, s);
    for (double& v : c) v *= 0.5;
    cuts.push_back({std::move(c), 1.0});
    return cuts;
  }

  std::vector<Cut> all = explicit_cuts(spec);
  std::vector<std::pair<double, std::size_t>> violated;
  for (std::size_t k = 0; k < all.size(); ++k) {
    // Scale-free violation: the cut reads value/bound ≤ 1.
    const double ratio = all[k].value(f) / all[k].bound;
    if (ratio > threshold) violated.emplace_back(-ratio, k);
  }
  std::stable_sort(violated.begin(), violated.end());
  for (std::size_t k = 0; k < violated.size() && cuts.size() < limit; ++k)
    cuts.push_back(all[violated[k].second]);
  return cuts;
}

std::optional<Cut> separation_oracle(const SeminormSpec& spec, const Observable& a) {
  std::vector<Cut> cuts = separation_cuts(spec, a, 1);
  if (cuts.empty()) return std::nullopt;
  return std::move(cuts.front());
}

DiracOperator dirac_from_cost(const CostGraph& graph) {
  const auto& edges = graph.edges();
  const std::size_t m = 2 * edges.size();
  Matrix d(m, m);
  std::vector<std::size_t> rep(m);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    d(2 * k, 2 * k + 1) = 1.0 / edges[k].weight;
    d(2 * k + 1, 2 * k) = 1.0 / edges[k].weight;
    rep[2 * k] = edges[k].a;
    rep[2 * k + 1] = edges[k].b;
  }
  return DiracOperator::commutative(std::move(d), Matrix(m, m), std::move(rep),
                                    graph.size(), DiracOperator::Adjointness::kSelf);
}

CommObservable lattice_join(const CommObservable& f, const CommObservable& g) {
  if (f.size() != g.size()) throw ShapeMismatch("lattice join of different sizes");
  Vector out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(f[i], g[i]);
  return CommObservable(std::move(out));
}

Vector quadratic_form_coefficients(const Shape& shape, std::span<const double> x,
                                   std::span<const double> y) {
  const std::size_t n = shape.n;
  if (x.size() != n || y.size() != n) throw ShapeMismatch("vector length mismatch");
  Vector c;
  c.reserve(shape.coordinate_count());
  for (std::size_t i = 0; i < n; ++i) c.push_back(x[i] * x[i] + y[i] * y[i]);
  if (shape.flavor == Flavor::kCommutative) return c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c.push_back(2.0 * (x[i] * x[j] + y[i] * y[j]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c.push_back(2.0 * (y[i] * x[j] - y[j] * x[i]));
  return c;
}

}  // namespace statemetric
