#pragma once

// Exact dense linear algebra over Q and Q(i).

#include "superlie/errors.hpp"
#include "superlie/gauss.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace superlie {

template <class F>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<F> row(std::size_t r) const {
    return std::vector<F>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  void append_row(const std::vector<F>& values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw Error(ErrorCode::dimension_mismatch, "row length mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  DenseMatrix transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!superlie::is_zero(v)) return false;
    return true;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::dimension_mismatch, "matrix product shape mismatch");
    DenseMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (superlie::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::dimension_mismatch, "matrix sum shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::dimension_mismatch, "matrix difference shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<F>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

using RatMatrix = DenseMatrix<Rational>;
using GaussMatrix = DenseMatrix<Gauss>;

/// Row-reduces in place to reduced row echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> rref_in_place(DenseMatrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pr = row;
    while (pr < m.rows() && is_zero(m(pr, col))) ++pr;
    if (pr == m.rows()) continue;
    if (pr != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pr, c), m(row, c));
    F inv = F(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      F f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t rank(DenseMatrix<F> m) {
  return rref_in_place(m).size();
}

/// Basis of {x : m x = 0}, one vector per free column.
template <class F>
std::vector<std::vector<F>> nullspace(DenseMatrix<F> m) {
  auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(m.cols());
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of m x = rhs, or nullopt when inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const DenseMatrix<F>& m, const std::vector<F>& rhs) {
  if (rhs.size() != m.rows()) throw Error(ErrorCode::dimension_mismatch, "rhs length mismatch");
  DenseMatrix<F> aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<F> x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

template <class F>
std::optional<DenseMatrix<F>> inverse(const DenseMatrix<F>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::dimension_mismatch, "inverse of non-square matrix");
  std::size_t n = m.rows();
  DenseMatrix<F> aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = F(1);
  }
  auto pivots = rref_in_place(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  DenseMatrix<F> inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

/// True iff the symmetric rational matrix is negative definite, by exact
/// elimination without pivoting (all pivots must be negative).
bool is_negative_definite(RatMatrix m);

/// Real and imaginary parts stacked: a complex n-vector becomes a rational 2n-vector.
std::vector<Rational> realify(const std::vector<Gauss>& v);
std::vector<Gauss> complexify(const std::vector<Rational>& v);

}  // namespace superlie
