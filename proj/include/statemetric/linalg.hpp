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

// Dense numerical kernels: a small row-major matrix type, symmetric and
// Hermitian wrappers, a cyclic Jacobi eigensolver, spectral norms, a dense
// simplex solver and a pseudo-inverse Laplacian solve.

#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace statemetric {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  // Throws DomainError on ragged input.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }

  Matrix transpose() const;
  Vector column(std::size_t j) const;
  double max_abs() const;
  double frobenius() const;
  bool all_finite() const;
  std::vector<std::vector<double>> to_rows() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, std::span<const double> x);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm_inf(std::span<const double> a);
double norm_1(std::span<const double> a);
double sum(std::span<const double> a);

// Real symmetric matrix. Construction symmetrizes (A + Aᵀ)/2 so that
// entries(i,j) == entries(j,i) holds bit-for-bit.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix m);

  std::size_t n() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

// Complex Hermitian H = re + i·im with re symmetric and im antisymmetric,
// both enforced at construction.
class HermMatrix {
 public:
  HermMatrix() = default;
  HermMatrix(Matrix re, Matrix im);
  explicit HermMatrix(const SymMatrix& re);

  static HermMatrix zero(std::size_t n);
  static HermMatrix diagonal(std::span<const double> values);

  std::size_t n() const { return re_.rows(); }
  const Matrix& re() const { return re_; }
  const Matrix& im() const { return im_; }

  double trace() const;
  // [[re, -im], [im, re]]: the spectrum of H, each eigenvalue twice.
  SymMatrix real_embedding() const;

  HermMatrix& operator+=(const HermMatrix& other);
  HermMatrix& operator-=(const HermMatrix& other);
  HermMatrix& operator*=(double s);
  friend HermMatrix operator+(HermMatrix a, const HermMatrix& b) {
    return a += b;
  }
  friend HermMatrix operator-(HermMatrix a, const HermMatrix& b) {
    return a -= b;
  }
  friend HermMatrix operator*(HermMatrix a, double s) { return a *= s; }
  friend HermMatrix operator*(double s, HermMatrix a) { return a *= s; }
  friend bool operator==(const HermMatrix&, const HermMatrix&) = default;

 private:
  Matrix re_;
  Matrix im_;
};

// Re trace(a·b) for Hermitian a, b (the trace of a product of two Hermitian
// matrices is real).
double trace_product(const HermMatrix& a, const HermMatrix& b);

// (ab + ba)/2, which stays Hermitian.
HermMatrix jordan_product(const HermMatrix& a, const HermMatrix& b);

struct EigenSystem {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns, vectors.column(k) ↔ values[k]
};

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiTolerance = 1e-12;

// Cyclic Jacobi. Throws SolverFailure if the off-diagonal mass has not
// dropped below kJacobiTolerance·‖A‖_F after kJacobiMaxSweeps sweeps.
EigenSystem eigh(const SymMatrix& a);

// Spectrum of a Hermitian matrix, ascending, one copy per eigenvalue.
Vector eigenvalues(const HermMatrix& a);

// A unit eigenvector u = x + i·y for the eigenvalue of largest magnitude,
// returned together with that eigenvalue.
struct HermEigenpair {
  double value = 0.0;
  Vector x;
  Vector y;
};
HermEigenpair top_eigenpair(const HermMatrix& a);
// Eigenpairs for the smallest and the largest eigenvalue.
std::pair<HermEigenpair, HermEigenpair> extreme_eigenpairs(const HermMatrix& a);

// g(H) through the spectral decomposition of the real embedding.
HermMatrix spectral_apply(const HermMatrix& a,
                          const std::function<double(double)>& g);

// Rank by Gaussian elimination with complete pivoting; pivots below
// rel_tol·max|entry| count as zero.
std::size_t matrix_rank(Matrix a, double rel_tol = 1e-10);

double op_norm(const SymMatrix& a);
double op_norm(const HermMatrix& a);
double trace_norm(const HermMatrix& a);

// ---------------------------------------------------------------------------
// Linear programming: maximize objective·x subject to rows·x ≤ bound, x free.

inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kRankTolerance = 1e-10;

struct LinearConstraint {
  Vector coefficients;
  double bound = 0.0;
};

struct LinearProgram {
  Vector objective;
  std::vector<LinearConstraint> constraints;

  std::size_t variable_count() const { return objective.size(); }
  void add(Vector coefficients, double bound) {
    constraints.push_back({std::move(coefficients), bound});
  }
};

enum class LpStatus { kOptimal, kUnbounded, kInfeasible };

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  Vector point;   // kOptimal only
  double value = 0.0;  // kOptimal only
  Vector ray;     // kUnbounded only: rows·ray ≤ 0 and objective·ray > 0
};

// Two-phase dense tableau simplex with Bland's rule. Throws DomainError on
// ragged rows and SolverFailure when the final basis is numerically
// singular.
LpOutcome solve_lp(const LinearProgram& program);

// ---------------------------------------------------------------------------

// Solves Δf = λ for a connected-graph Laplacian Δ, returning the zero-sum
// solution. Throws DomainError if Σλ ≠ 0 and DisconnectedGraph if the
// kernel of Δ is larger than the constants.
Vector laplacian_solve(const SymMatrix& laplacian, std::span<const double> rhs);

}  // namespace statemetric
