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


#include "statemetric/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "statemetric/error.hpp"

namespace statemetric {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      throw DomainError("matrix rows have unequal lengths");
    }
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * c);
  }
  return m;
}

Matrix Matrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double x) { return std::isfinite(x); });
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    out[i].assign(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw ShapeMismatch("matrix sum with mismatched shapes");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw ShapeMismatch("matrix difference with mismatched shapes");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols_ != x.size()) throw ShapeMismatch("matrix-vector shape mismatch");
  Vector y(a.rows_, 0.0);
  for (std::size_t i = 0; i < a.rows_; ++i) y[i] = dot(a.row(i), x);
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeMismatch("dot product length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

double norm_1(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += std::abs(x);
  return s;
}

double sum(std::span<const double> a) {
  return std::accumulate(a.begin(), a.end(), 0.0);
}

SymMatrix::SymMatrix(Matrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw DomainError("symmetric matrix must be square");
  if (!m_.all_finite()) throw DomainError("matrix has non-finite entries");
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = i + 1; j < m_.cols(); ++j) {
      const double s = 0.5 * (m_(i, j) + m_(j, i));
      m_(i, j) = s;
      m_(j, i) = s;
    }
}

HermMatrix::HermMatrix(Matrix re, Matrix im)
    : re_(std::move(re)), im_(std::move(im)) {
  if (!re_.is_square() || re_.rows() != im_.rows() ||
      re_.cols() != im_.cols()) {
    throw DomainError("Hermitian matrix parts must be square and equal-sized");
  }
  if (!re_.all_finite() || !im_.all_finite())
    throw DomainError("matrix has non-finite entries");
  const std::size_t n = re_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    im_(i, i) = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = 0.5 * (re_(i, j) + re_(j, i));
      re_(i, j) = s;
      re_(j, i) = s;
      const double a = 0.5 * (im_(i, j) - im_(j, i));
      im_(i, j) = a;
      im_(j, i) = -a;
    }
  }
}

HermMatrix::HermMatrix(const SymMatrix& re)
    : re_(re.matrix()), im_(re.n(), re.n()) {}

HermMatrix HermMatrix::zero(std::size_t n) {
  return HermMatrix(Matrix(n, n), Matrix(n, n));
}

HermMatrix HermMatrix::diagonal(std::span<const double> values) {
  return HermMatrix(Matrix::diagonal(values),
                    Matrix(values.size(), values.size()));
}

double HermMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n(); ++i) t += re_(i, i);
  return t;
}

SymMatrix HermMatrix::real_embedding() const {
  const std::size_t k = n();
  Matrix e(2 * k, 2 * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      e(i, j) = re_(i, j);
      e(i + k, j + k) = re_(i, j);
      e(i, j + k) = -im_(i, j);
      e(i + k, j) = im_(i, j);
    }
  return SymMatrix(std::move(e));
}

HermMatrix& HermMatrix::operator+=(const HermMatrix& other) {
  re_ += other.re_;
  im_ += other.im_;
  return *this;
}

HermMatrix& HermMatrix::operator-=(const HermMatrix& other) {
  re_ -= other.re_;
  im_ -= other.im_;
  return *this;
}

HermMatrix& HermMatrix::operator*=(double s) {
  re_ *= s;
  im_ *= s;
  return *this;
}

double trace_product(const HermMatrix& a, const HermMatrix& b) {
  if (a.n() != b.n()) throw ShapeMismatch("trace pairing dimension mismatch");
  // Re tr((Ar + iAi)(Br + iBi)) = tr(Ar Br) - tr(Ai Bi); Br symmetric and
  // Bi antisymmetric turn both into entrywise sums.
  double t = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j)
      t += a.re()(i, j) * b.re()(i, j) + a.im()(i, j) * b.im()(i, j);
  return t;
}

HermMatrix jordan_product(const HermMatrix& a, const HermMatrix& b) {
  if (a.n() != b.n()) throw ShapeMismatch("product dimension mismatch");
  const Matrix& ar = a.re();
  const Matrix& ai = a.im();
  const Matrix& br = b.re();
  const Matrix& bi = b.im();
  Matrix re = ar * br + br * ar - ai * bi - bi * ai;
  Matrix im = ar * bi + ai * br + br * ai + bi * ar;
  return HermMatrix(re * 0.5, im * 0.5);
}

EigenSystem eigh(const SymMatrix& sym) {
  const std::size_t n = sym.n();
  Matrix a = sym.matrix();
  Matrix v = Matrix::identity(n);
  const double scale = a.frobenius();

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal() <= kJacobiTolerance * scale) {
      converged = true;
      break;
    }
    if (sweep == kJacobiMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    throw SolverFailure("Jacobi eigensolver did not converge in " +
                        std::to_string(kJacobiMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i) < a(j, j);
  });
  EigenSystem out{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Vector eigenvalues(const HermMatrix& a) {
  // The embedding repeats each eigenvalue; after sorting the copies are
  // adjacent, so every other entry is one copy of the spectrum.
  const EigenSystem es = eigh(a.real_embedding());
  Vector out(a.n());
  for (std::size_t k = 0; k < a.n(); ++k)
    out[k] = 0.5 * (es.values[2 * k] + es.values[2 * k + 1]);
  return out;
}

namespace {

HermEigenpair pair_from_column(const EigenSystem& es, std::size_t col,
                               std::size_t n) {
  HermEigenpair p;
  p.value = es.values[col];
  p.x.resize(n);
  p.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.x[i] = es.vectors(i, col);
    p.y[i] = es.vectors(i + n, col);
  }
  return p;
}

}  // namespace

HermEigenpair top_eigenpair(const HermMatrix& a) {
  const EigenSystem es = eigh(a.real_embedding());
  const std::size_t last = es.values.size() - 1;
  const std::size_t col =
      std::abs(es.values.front()) > std::abs(es.values[last]) ? 0 : last;
  return pair_from_column(es, col, a.n());
}

std::pair<HermEigenpair, HermEigenpair> extreme_eigenpairs(const HermMatrix& a) {
  const EigenSystem es = eigh(a.real_embedding());
  return {pair_from_column(es, 0, a.n()),
          pair_from_column(es, es.values.size() - 1, a.n())};
}

HermMatrix spectral_apply(const HermMatrix& a,
                          const std::function<double(double)>& g) {
  const std::size_t n = a.n();
  const EigenSystem es = eigh(a.real_embedding());
  const std::size_t m = 2 * n;
  Matrix e(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    const double gk = g(es.values[k]);
    if (gk == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) {
      const double vik = es.vectors(i, k) * gk;
      for (std::size_t j = 0; j < m; ++j) e(i, j) += vik * es.vectors(j, k);
    }
  }
  Matrix re(n, n);
  Matrix im(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      re(i, j) = 0.5 * (e(i, j) + e(i + n, j + n));
      im(i, j) = 0.5 * (e(i + n, j) - e(i, j + n));
    }
  return HermMatrix(std::move(re), std::move(im));
}

std::size_t matrix_rank(Matrix a, double rel_tol) {
  const double threshold = rel_tol * a.max_abs();
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<bool> row_done(rows, false);
  std::vector<bool> col_done(cols, false);
  std::size_t rank = 0;
  while (rank < std::min(rows, cols)) {
    std::size_t pr = rows;
    std::size_t pc = cols;
    double best = threshold;
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_done[i]) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (col_done[j]) continue;
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    row_done[pr] = true;
    col_done[pc] = true;
    ++rank;
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_done[i]) continue;
      const double f = a(i, pc) / a(pr, pc);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(pr, j);
    }
  }
  return rank;
}

double op_norm(const SymMatrix& a) {
  if (a.n() == 0) return 0.0;
  const EigenSystem es = eigh(a);
  return std::max(std::abs(es.values.front()), std::abs(es.values.back()));
}

double op_norm(const HermMatrix& a) { return op_norm(a.real_embedding()); }

double trace_norm(const HermMatrix& a) {
  const EigenSystem es = eigh(a.real_embedding());
  return 0.5 * norm_1(es.values);
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kPivotTolerance = kRankTolerance;
constexpr double kCostTolerance = 1e-10;
constexpr long kMaxPivots = 200000;
constexpr double kHarrisAllowance = 1e-11;

// Dense tableau over the standard form
//   [A, -A, I] (x+, x-, s) = b,  (x+, x-, s) ≥ 0
// with an artificial column per row whose right-hand side is negative.
class Tableau {
 public:
  Tableau(const std::vector<LinearConstraint>& rows, std::size_t n)
      : n_(n), m_(rows.size()) {
    std::size_t artificial = 0;
    for (const auto& r : rows) artificial += r.bound < 0.0 ? 1 : 0;
    width_ = 2 * n_ + m_ + artificial;
    t_.assign(m_ * (width_ + 1), 0.0);
    basis_.resize(m_);
    first_artificial_ = 2 * n_ + m_;
    std::size_t next_art = first_artificial_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = rows[i].bound < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) {
        at(i, j) = sign * rows[i].coefficients[j];
        at(i, n_ + j) = -sign * rows[i].coefficients[j];
      }
      at(i, 2 * n_ + i) = sign;
      rhs(i) = sign * rows[i].bound;
      if (sign < 0.0) {
        at(i, next_art) = 1.0;
        basis_[i] = next_art++;
      } else {
        basis_[i] = 2 * n_ + i;
      }
    }
  }

  bool has_artificials() const { return width_ > first_artificial_; }
  bool is_artificial(std::size_t j) const { return j >= first_artificial_; }

  // Returns false when the objective is unbounded; the entering column is
  // then left in unbounded_column().
  bool optimize(const Vector& cost, bool allow_artificial) {
    cost_ = cost;
    reduced_.assign(width_, 0.0);
    for (std::size_t j = 0; j < width_; ++j) {
      double r = cost_[j];
      for (std::size_t i = 0; i < m_; ++i) r -= cost_[basis_[i]] * at(i, j);
      reduced_[j] = r;
    }
    for (long iter = 0; iter < kMaxPivots; ++iter) {
      std::size_t enter = width_;
      for (std::size_t j = 0; j < width_; ++j) {
        if (!allow_artificial && is_artificial(j)) continue;
        if (reduced_[j] > kCostTolerance) {
          enter = j;
          break;
        }
      }
      if (enter == width_) return true;

      // Harris two-pass ratio test: bound the step with a small feasibility
      // allowance, then take the largest pivot among rows within it.
      double theta = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a > kPivotTolerance)
          theta = std::min(theta, (std::max(rhs(i), 0.0) + kHarrisAllowance) / a);
      }
      std::size_t leave = m_;
      double best_pivot = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotTolerance || std::max(rhs(i), 0.0) / a > theta) continue;
        if (a > best_pivot || (a == best_pivot && basis_[i] < basis_[leave])) {
          leave = i;
          best_pivot = a;
        }
      }
      if (leave == m_) {
        unbounded_column_ = enter;
        return false;
      }
      pivot(leave, enter);
    }
    throw SolverFailure("simplex pivot limit exceeded");
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = at(row, col);
    if (std::abs(p) < 1e-14) throw SolverFailure("numerically singular basis");
    const std::size_t w = width_ + 1;
    double* pr = &t_[row * w];
    for (std::size_t j = 0; j < w; ++j) pr[j] /= p;
    pr[col] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      double* ri = &t_[i * w];
      const double f = ri[col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w; ++j) ri[j] -= f * pr[j];
      ri[col] = 0.0;
    }
    const double f = reduced_.empty() ? 0.0 : reduced_[col];
    if (f != 0.0) {
      for (std::size_t j = 0; j < width_; ++j) reduced_[j] -= f * pr[j];
      reduced_[col] = 0.0;
    }
    basis_[row] = col;
  }

  // After phase one: pivot zero-level artificials out of the basis where a
  // structural column allows it. Rows where none does are redundant.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (std::abs(at(i, j)) > kPivotTolerance) {
          reduced_.clear();
          pivot(i, j);
          break;
        }
      }
    }
  }

  Vector standard_solution() const {
    Vector y(width_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) y[basis_[i]] = rhs(i);
    return y;
  }

  Vector unbounded_ray() const {
    Vector d(width_, 0.0);
    d[unbounded_column_] = 1.0;
    for (std::size_t i = 0; i < m_; ++i)
      d[basis_[i]] -= at(i, unbounded_column_);
    return d;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  std::size_t width() const { return width_; }
  std::size_t first_artificial() const { return first_artificial_; }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * (width_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const {
    return t_[i * (width_ + 1) + j];
  }
  double& rhs(std::size_t i) { return t_[i * (width_ + 1) + width_]; }
  double rhs(std::size_t i) const { return t_[i * (width_ + 1) + width_]; }

  std::size_t n_;
  std::size_t m_;
  std::size_t width_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  Vector cost_;
  Vector reduced_;
  std::size_t unbounded_column_ = 0;
};

// Recomputes the basic solution from the original rows by Gaussian
// elimination with partial pivoting; used when the tableau drifted.
Vector resolve_basis(const std::vector<LinearConstraint>& rows, std::size_t n,
                     const std::vector<std::size_t>& basis) {
  const std::size_t m = rows.size();
  auto column_entry = [&](std::size_t i, std::size_t j) -> double {
    if (j < n) return rows[i].coefficients[j];
    if (j < 2 * n) return -rows[i].coefficients[j - n];
    if (j < 2 * n + m) return j - 2 * n == i ? 1.0 : 0.0;
    return 0.0;  // artificial at zero level
  };
  Matrix b(m, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) b(i, k) = column_entry(i, basis[k]);
    b(i, m) = rows[i].bound;
  }
  std::vector<bool> usable(m, true);
  for (std::size_t k = 0; k < m; ++k)
    if (basis[k] >= 2 * n + m) usable[k] = false;
  Vector sol(m, 0.0);
  std::vector<std::size_t> pivot_row(m, m);
  std::vector<bool> row_used(m, false);
  for (std::size_t k = 0; k < m; ++k) {
    if (!usable[k]) continue;
    std::size_t best = m;
    double best_abs = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (row_used[i]) continue;
      if (std::abs(b(i, k)) > best_abs) {
        best_abs = std::abs(b(i, k));
        best = i;
      }
    }
    if (best == m || best_abs < 1e-14)
      throw SolverFailure("numerically singular basis");
    row_used[best] = true;
    pivot_row[k] = best;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == best) continue;
      const double f = b(i, k) / b(best, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= m; ++j) b(i, j) -= f * b(best, j);
    }
  }
  for (std::size_t k = 0; k < m; ++k)
    if (usable[k]) sol[k] = b(pivot_row[k], m) / b(pivot_row[k], k);
  Vector x(n, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    if (basis[k] < n) x[basis[k]] += sol[k];
    else if (basis[k] < 2 * n) x[basis[k] - n] -= sol[k];
  }
  return x;
}

LpOutcome outcome(LpStatus status) {
  LpOutcome out;
  out.status = status;
  return out;
}

double worst_violation(const std::vector<LinearConstraint>& rows,
                       const Vector& x) {
  double worst = 0.0;
  for (const auto& r : rows)
    worst = std::max(worst, dot(r.coefficients, x) - r.bound);
  return worst;
}

}  // namespace

LpOutcome solve_lp(const LinearProgram& program) {
  const std::size_t n = program.variable_count();
  for (const auto& c : program.constraints) {
    if (c.coefficients.size() != n)
      throw DomainError("constraint row length differs from objective length");
    if (!std::isfinite(c.bound) || !std::all_of(c.coefficients.begin(),
                                                c.coefficients.end(),
                                                [](double v) {
                                                  return std::isfinite(v);
                                                })) {
      throw DomainError("linear program has non-finite data");
    }
  }

  // Rows are scaled to unit max-norm; zero rows are either vacuous or
  // certify infeasibility on their own.
  std::vector<LinearConstraint> rows;
  rows.reserve(program.constraints.size());
  for (const auto& c : program.constraints) {
    const double scale = norm_inf(c.coefficients);
    if (scale == 0.0) {
      if (c.bound < -kFeasibilityTolerance) return outcome(LpStatus::kInfeasible);
      continue;
    }
    LinearConstraint r{c.coefficients, c.bound / scale};
    for (double& v : r.coefficients) v /= scale;
    rows.push_back(std::move(r));
  }
  const double cscale = std::max(norm_inf(program.objective), 1e-300);

  Tableau tab(rows, n);
  const std::size_t w = tab.width();

  if (tab.has_artificials()) {
    Vector phase1(w, 0.0);
    for (std::size_t j = tab.first_artificial(); j < w; ++j) phase1[j] = -1.0;
    tab.optimize(phase1, true);
    const Vector y = tab.standard_solution();
    double infeasibility = 0.0;
    for (std::size_t j = tab.first_artificial(); j < w; ++j)
      infeasibility += y[j];
    if (infeasibility > kFeasibilityTolerance) return outcome(LpStatus::kInfeasible);
    tab.expel_artificials();
  }

  Vector cost(w, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = program.objective[j] / cscale;
    cost[n + j] = -program.objective[j] / cscale;
  }
  if (!tab.optimize(cost, false)) {
    const Vector d = tab.unbounded_ray();
    LpOutcome out = outcome(LpStatus::kUnbounded);
    out.ray.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.ray[j] = d[j] - d[n + j];
    const double s = norm_inf(out.ray);
    if (s > 0.0)
      for (double& v : out.ray) v /= s;
    return out;
  }

  const Vector y = tab.standard_solution();
  LpOutcome out = outcome(LpStatus::kOptimal);
  out.point.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.point[j] = y[j] - y[n + j];
  if (worst_violation(rows, out.point) > kFeasibilityTolerance) {
    out.point = resolve_basis(rows, n, tab.basis());
    if (worst_violation(rows, out.point) > kFeasibilityTolerance)
      throw SolverFailure("simplex optimum violates constraints");
  }
  out.value = dot(program.objective, out.point);
  return out;
}

// ---------------------------------------------------------------------------

Vector laplacian_solve(const SymMatrix& laplacian,
                       std::span<const double> rhs) {
  const std::size_t n = laplacian.n();
  if (rhs.size() != n) throw ShapeMismatch("Laplacian solve length mismatch");
  if (std::abs(sum(rhs)) > 1e-12 * std::max(1.0, norm_1(rhs)))
    throw DomainError("Laplacian right-hand side must sum to zero");

  const EigenSystem es = eigh(laplacian);
  const double top = std::max(std::abs(es.values.back()),
                              std::abs(es.values.front()));
  const double cutoff = 1e-10 * top;
  std::size_t kernel = 0;
  for (double v : es.values)
    if (v < cutoff) ++kernel;
  if (kernel > 1)
    throw DisconnectedGraph("Laplacian kernel is larger than the constants");
  if (kernel == 0)
    throw DomainError("matrix is not a Laplacian: constants are not in its kernel");

  Vector f(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (es.values[k] < cutoff) continue;
    double proj = 0.0;
    for (std::size_t i = 0; i < n; ++i) proj += es.vectors(i, k) * rhs[i];
    proj /= es.values[k];
    for (std::size_t i = 0; i < n; ++i) f[i] += proj * es.vectors(i, k);
  }
  const double mean = sum(f) / static_cast<double>(n);
  for (double& v : f) v -= mean;
  return f;
}

}  // namespace statemetric
