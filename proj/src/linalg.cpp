// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#include "optra/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "optra/error.hpp"

namespace optra {

double dot(std::span<const double> a, std::span<const double> b) {
  const double* pa = a.data();
  const double* pb = b.data();
  const std::size_t n = a.size();
  double s = 0.0;
#pragma omp simd reduction(+ : s)
  for (std::size_t i = 0; i < n; ++i) s += pa[i] * pb[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Vector Matrix::multiply(std::span<const double> x) const {
  if (x.size() != cols_) fail(ErrorCode::kShapeError, "Matrix::multiply: length mismatch");
  Vector y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) y[i] = dot(row(i), x);
  return y;
}

Vector Matrix::multiply_transposed(std::span<const double> x) const {
  if (x.size() != rows_) {
    fail(ErrorCode::kShapeError, "Matrix::multiply_transposed: length mismatch");
  }
  Vector y(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* r = data_.data() + i * cols_;
    double* py = y.data();
#pragma omp simd
    for (std::size_t j = 0; j < cols_; ++j) py[j] += xi * r[j];
  }
  return y;
}

// ---------------------------------------------------------------------------
// DenseSym

DenseSym::DenseSym(std::size_t n) : n_(n), data_(n * n, 0.0) {}

DenseSym::DenseSym(std::size_t n, std::vector<double> entries) : n_(n), data_(std::move(entries)) {
  if (data_.size() != n * n) fail(ErrorCode::kShapeError, "DenseSym: expected n*n entries");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = data_[i * n + j];
      if (!std::isfinite(v)) fail(ErrorCode::kInvalidMatrix, "DenseSym: non-finite entry");
      if (j > i && v != data_[j * n + i]) {
        fail(ErrorCode::kInvalidMatrix, "DenseSym: entries (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") not symmetric");
      }
    }
  }
}

DenseSym DenseSym::identity(std::size_t n) {
  DenseSym out(n);
  for (std::size_t i = 0; i < n; ++i) out.data_[i * n + i] = 1.0;
  return out;
}

DenseSym DenseSym::averaging(std::size_t n) {
  DenseSym out(n);
  std::fill(out.data_.begin(), out.data_.end(), 1.0 / static_cast<double>(n));
  return out;
}

DenseSym DenseSym::gram(const Matrix& m) {
  const std::size_t n = m.cols();
  DenseSym out(n);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t i = 0; i < n; ++i) {
      const double ri = row[i];
      if (ri == 0.0) continue;
      for (std::size_t j = i; j < n; ++j) out.data_[i * n + j] += ri * row[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) out.data_[i * n + j] = out.data_[j * n + i];
  }
  return out;
}

void DenseSym::set(std::size_t i, std::size_t j, double value) {
  data_[i * n_ + j] = value;
  data_[j * n_ + i] = value;
}

DenseSym DenseSym::scaled(double s) const {
  DenseSym out = *this;
  for (double& v : out.data_) v *= s;
  return out;
}

DenseSym DenseSym::combined(double a, const DenseSym& other, double b) const {
  if (other.n_ != n_) fail(ErrorCode::kShapeError, "DenseSym::combined: size mismatch");
  DenseSym out(n_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = a * data_[k] + b * other.data_[k];
  return out;
}

DenseSym DenseSym::multiply(const DenseSym& other) const {
  if (other.n_ != n_) fail(ErrorCode::kShapeError, "DenseSym::multiply: size mismatch");
  DenseSym out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      double s1 = 0.0;
      double s2 = 0.0;
      for (std::size_t k = 0; k < n_; ++k) {
        s1 += (*this)(i, k) * other(k, j);
        s2 += (*this)(j, k) * other(k, i);
      }
      out.set(i, j, 0.5 * (s1 + s2));
    }
  }
  return out;
}

Vector DenseSym::multiply(std::span<const double> x) const {
  if (x.size() != n_) fail(ErrorCode::kShapeError, "DenseSym::multiply: length mismatch");
  Vector y(n_);
  for (std::size_t i = 0; i < n_; ++i) y[i] = dot(row(i), x);
  return y;
}

double DenseSym::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (double v : row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

// ---------------------------------------------------------------------------
// MultiVector

MultiVector::MultiVector(std::size_t agents, std::size_t dim, double fill)
    : m_(agents), d_(dim), data_(agents * dim, fill) {}

MultiVector MultiVector::consensus(std::size_t agents, std::span<const double> v) {
  MultiVector out(agents, v.size());
  for (std::size_t i = 0; i < agents; ++i) std::copy(v.begin(), v.end(), out.row(i).begin());
  return out;
}

Vector MultiVector::mean() const {
  Vector out = column_sums();
  if (m_ > 0) {
    for (double& v : out) v /= static_cast<double>(m_);
  }
  return out;
}

MultiVector MultiVector::centered() const {
  const Vector mu = mean();
  MultiVector out = *this;
  for (std::size_t i = 0; i < m_; ++i) {
    auto r = out.row(i);
    for (std::size_t j = 0; j < d_; ++j) r[j] -= mu[j];
  }
  return out;
}

Vector MultiVector::column_sums() const {
  Vector out(d_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    auto r = row(i);
    for (std::size_t j = 0; j < d_; ++j) out[j] += r[j];
  }
  return out;
}

MultiVector& MultiVector::operator+=(const MultiVector& o) { return axpy(1.0, o); }

MultiVector& MultiVector::operator-=(const MultiVector& o) { return axpy(-1.0, o); }

MultiVector& MultiVector::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

MultiVector& MultiVector::axpy(double a, const MultiVector& o) {
  if (!same_shape(o)) fail(ErrorCode::kShapeError, "MultiVector: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += a * o.data_[k];
  return *this;
}

MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
MultiVector operator*(double s, MultiVector a) { return a *= s; }

MultiVector apply(const DenseSym& m, const MultiVector& x) {
  if (m.size() != x.agents()) {
    fail(ErrorCode::kShapeError, "apply: matrix size " + std::to_string(m.size()) +
                                     " does not match agent count " +
                                     std::to_string(x.agents()));
  }
  const std::size_t n = m.size();
  const std::size_t d = x.dim();
  MultiVector out(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto dst = out.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double w = m(i, j);
      if (w == 0.0) continue;
      const double* src = x.row(j).data();
      double* pd = dst.data();
#pragma omp simd
      for (std::size_t c = 0; c < d; ++c) pd[c] += w * src[c];
    }
  }
  return out;
}

double frobenius_inner(const MultiVector& x, const MultiVector& y) {
  if (!x.same_shape(y)) fail(ErrorCode::kShapeError, "frobenius_inner: shape mismatch");
  return dot(x.data(), y.data());
}

double frobenius_norm(const MultiVector& x) { return std::sqrt(frobenius_inner(x, x)); }

// ---------------------------------------------------------------------------
// Eigensolver

namespace {

double off_diagonal_mass(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
  }
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition jacobi_eigen(const DenseSym& m, double tol) {
  const std::size_t n = m.size();
  if (n == 0) fail(ErrorCode::kInvalidMatrix, "jacobi_eigen: empty matrix");
  std::vector<double> a = m.data();
  for (double v : a) {
    if (!std::isfinite(v)) fail(ErrorCode::kInvalidMatrix, "jacobi_eigen: non-finite entry");
  }
  if (tol <= 0.0) tol = 1e-12 * static_cast<double>(n) * m.inf_norm();

  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  while (off_diagonal_mass(a, n) > tol) {
    if (++sweep > kMaxSweeps) {
      fail(ErrorCode::kInvalidMatrix, "jacobi_eigen: no convergence after 100 sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        // Symmetric Schur decomposition of the 2x2 block (p, q).
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a[order[k] * n + order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Vector pseudo_solve(const DenseSym& h, std::span<const double> b, double rel_cutoff) {
  const std::size_t n = h.size();
  if (b.size() != n) fail(ErrorCode::kShapeError, "pseudo_solve: length mismatch");
  const EigenDecomposition eig = jacobi_eigen(h);
  const double top = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  Vector x(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (lam <= rel_cutoff * top) continue;
    double proj = 0.0;
    for (std::size_t i = 0; i < n; ++i) proj += eig.vectors(i, k) * b[i];
    proj /= lam;
    for (std::size_t i = 0; i < n; ++i) x[i] += proj * eig.vectors(i, k);
  }
  return x;
}

bool cholesky_solve(const DenseSym& h, std::span<const double> b, Vector& x) {
  const std::size_t n = h.size();
  if (b.size() != n) fail(ErrorCode::kShapeError, "cholesky_solve: length mismatch");
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = h(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l[j * n + k] * l[j * n + k];
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = h(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / ljj;
    }
  }
  Vector z(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * z[k];
    z[i] = s / l[i * n + i];
  }
  x.assign(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = z[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l[k * n + ii] * x[k];
    x[ii] = s / l[ii * n + ii];
  }
  return true;
}

}  // namespace optra
