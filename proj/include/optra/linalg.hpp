// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

// Dense real linear algebra used throughout the library: symmetric matrices,
// agent-stacked multivectors and a cyclic Jacobi eigensolver. Sizes are small
// (agents m <= a few hundred, dimension d <= a few thousand), so everything is
// dense, row-major and double precision.

#ifndef OPTRA_LINALG_HPP
#define OPTRA_LINALG_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace optra {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Rectangular row-major matrix (local data blocks such as A_i or U_i).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  /// y = M x
  Vector multiply(std::span<const double> x) const;
  /// y = M^T x
  Vector multiply_transposed(std::span<const double> x) const;

  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Symmetric n x n matrix. Symmetry is checked exactly on construction from
/// raw entries; mutation goes through set() which writes both triangles.
class DenseSym {
 public:
  DenseSym() = default;
  explicit DenseSym(std::size_t n);
  /// Throws InvalidMatrix unless entries are finite and exactly symmetric.
  DenseSym(std::size_t n, std::vector<double> entries);

  static DenseSym identity(std::size_t n);
  /// J = (1/n) 1 1^T, the orthogonal projector onto the consensus direction.
  static DenseSym averaging(std::size_t n);
  /// M^T M for a rectangular M.
  static DenseSym gram(const Matrix& m);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value);

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  DenseSym scaled(double s) const;
  /// a * this + b * other
  DenseSym combined(double a, const DenseSym& other, double b) const;
  /// this * other; the product of commuting symmetric matrices (polynomials in
  /// one matrix) is symmetric, anything else is symmetrized and checked.
  DenseSym multiply(const DenseSym& other) const;

  Vector multiply(std::span<const double> x) const;

  double inf_norm() const;
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// m x d stack of per-agent row vectors x = [x_1; ...; x_m].
class MultiVector {
 public:
  MultiVector() = default;
  MultiVector(std::size_t agents, std::size_t dim, double fill = 0.0);

  /// Every row equal to v.
  static MultiVector consensus(std::size_t agents, std::span<const double> v);

  std::size_t agents() const noexcept { return m_; }
  std::size_t dim() const noexcept { return d_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * d_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * d_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * d_, d_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * d_, d_}; }

  /// Row mean (1/m) sum_i x_i.
  Vector mean() const;
  /// (I - J) x: every row minus the row mean.
  MultiVector centered() const;
  /// Column sums 1^T x.
  Vector column_sums() const;

  MultiVector& operator+=(const MultiVector& o);
  MultiVector& operator-=(const MultiVector& o);
  MultiVector& operator*=(double s);
  /// this += a * o
  MultiVector& axpy(double a, const MultiVector& o);

  bool same_shape(const MultiVector& o) const noexcept { return m_ == o.m_ && d_ == o.d_; }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t m_ = 0;
  std::size_t d_ = 0;
  std::vector<double> data_;
};

MultiVector operator+(MultiVector a, const MultiVector& b);
MultiVector operator-(MultiVector a, const MultiVector& b);
MultiVector operator*(double s, MultiVector a);

/// Row i of the result is sum_j M(i, j) * X.row(j). Throws ShapeError.
MultiVector apply(const DenseSym& m, const MultiVector& x);

double frobenius_inner(const MultiVector& x, const MultiVector& y);
double frobenius_norm(const MultiVector& x);

struct EigenDecomposition {
  Vector values;    // ascending
  Matrix vectors;   // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass is <= tol.
/// tol <= 0 selects 1e-12 * n * ||M||_inf. Throws InvalidMatrix on non-finite
/// input and when the sweep budget is exhausted.
EigenDecomposition jacobi_eigen(const DenseSym& m, double tol = 0.0);

/// Q f(Lambda) Q^T for a scalar function applied to the spectrum.
template <class F>
DenseSym spectral_function(const EigenDecomposition& eig, F&& f) {
  const std::size_t n = eig.values.size();
  std::vector<double> fv(n);
  for (std::size_t k = 0; k < n; ++k) fv[k] = f(eig.values[k]);
  DenseSym out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += eig.vectors(i, k) * fv[k] * eig.vectors(j, k);
      out.set(i, j, s);
    }
  }
  return out;
}

/// Minimum-norm solution of H x = b for symmetric PSD H, discarding
/// eigenvalues below rel_cutoff * max eigenvalue.
Vector pseudo_solve(const DenseSym& h, std::span<const double> b, double rel_cutoff = 1e-12);

/// Cholesky solve for symmetric positive definite H. Returns false if a pivot
/// is not positive (x untouched).
bool cholesky_solve(const DenseSym& h, std::span<const double> b, Vector& x);

}  // namespace optra

#endif  // OPTRA_LINALG_HPP
