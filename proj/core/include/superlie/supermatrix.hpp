#pragma once

#include "superlie/grassmann.hpp"
#include "superlie/linalg.hpp"

#include <nlohmann/json.hpp>

#include <vector>

namespace superlie {

/// Rectangular matrix with Grassmann entries; the ungraded workhorse behind
/// SuperMatrix and its blocks. Products keep entry order (left factor first).
class GrMatrix {
 public:
  GrMatrix() = default;
  GrMatrix(std::size_t rows, std::size_t cols, int q);

  static GrMatrix identity(std::size_t n, int q);
  static GrMatrix from_scalar(const GaussMatrix& m, int q);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int q() const { return q_; }

  Grassmann& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Grassmann& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  GaussMatrix body() const;
  bool is_zero() const;
  GrMatrix transposed() const;
  GrMatrix conj() const;
  GrMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t r0, std::size_t c0, const GrMatrix& b);

  /// Exact inverse; requires the body matrix to be invertible over Q(i).
  GrMatrix inverse() const;
  /// Leibniz-style determinant; meaningful when entries commute (even entries).
  Grassmann determinant() const;
  Grassmann trace() const;

  GrMatrix operator-() const;
  friend GrMatrix operator+(GrMatrix a, const GrMatrix& b);
  friend GrMatrix operator-(GrMatrix a, const GrMatrix& b);
  friend GrMatrix operator*(const GrMatrix& a, const GrMatrix& b);
  /// Left scalar multiplication: (c M)_ij = c * M_ij.
  friend GrMatrix operator*(const Grassmann& c, const GrMatrix& m);
  friend GrMatrix operator*(const GrMatrix& m, const Grassmann& c);
  friend bool operator==(const GrMatrix& a, const GrMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.q_ == b.q_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int q_ = 0;
  std::vector<Grassmann> data_;
};

/// (m|n)-graded square matrix over Lambda_q (x) Q(i). Rows/columns 0..m-1 are
/// even, m..m+n-1 odd. Blocks are named a (even-even), beta (even-odd),
/// gamma (odd-even), d (odd-odd).
class SuperMatrix {
 public:
  SuperMatrix() = default;
  SuperMatrix(int m, int n, int q);
  SuperMatrix(int m, int n, GrMatrix entries);

  static SuperMatrix identity(int m, int n, int q);
  static SuperMatrix from_scalar(int m, int n, const GaussMatrix& entries, int q);
  static SuperMatrix from_blocks(const GrMatrix& a, const GrMatrix& beta, const GrMatrix& gamma,
                                 const GrMatrix& d);

  int m() const { return m_; }
  int n() const { return n_; }
  int q() const { return entries_.q(); }
  std::size_t size() const { return entries_.rows(); }
  int index_parity(std::size_t i) const { return static_cast<int>(i) < m_ ? 0 : 1; }

  Grassmann& operator()(std::size_t r, std::size_t c) { return entries_(r, c); }
  const Grassmann& operator()(std::size_t r, std::size_t c) const { return entries_(r, c); }
  const GrMatrix& entries() const { return entries_; }

  GrMatrix a() const { return entries_.block(0, 0, m_, m_); }
  GrMatrix beta() const { return entries_.block(0, m_, m_, n_); }
  GrMatrix gamma() const { return entries_.block(m_, 0, n_, m_); }
  GrMatrix d() const { return entries_.block(m_, m_, n_, n_); }

  /// Even: diagonal blocks even, off-diagonal blocks odd. Odd: reversed.
  bool is_even() const;
  bool is_odd() const;
  /// Entrywise projection onto the even (resp. odd) matrix component.
  SuperMatrix even_part() const;
  SuperMatrix odd_part() const;

  GaussMatrix body() const { return entries_.body(); }
  bool is_invertible() const;
  SuperMatrix conj() const;
  SuperMatrix transposed() const;

  SuperMatrix operator-() const;
  friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b);
  friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b);
  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b);
  friend SuperMatrix operator*(const Grassmann& c, const SuperMatrix& m);
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  int m_ = 0;
  int n_ = 0;
  GrMatrix entries_;
};

SuperMatrix sm_mul(const SuperMatrix& a, const SuperMatrix& b);
SuperMatrix sm_inv(const SuperMatrix& a);
/// det(a - beta d^{-1} gamma) det(d)^{-1}; requires an even matrix with invertible d.
Grassmann sm_berezinian(const SuperMatrix& a);
/// Exact exponential of a nilpotent matrix; rejects anything else.
SuperMatrix sm_exp_nilpotent(const SuperMatrix& m);
/// Power index at which m vanishes, or -1 when m is not nilpotent.
int nilpotency_index(const SuperMatrix& m);

/// str A = tr a - (-1)^{|A|} tr d, extended linearly over the parity split.
Grassmann sm_supertrace(const SuperMatrix& a);

/// Supertranspose, convention (st A)_ij = (-1)^{(p(i)+|A|)(p(i)+p(j))} A_ji on
/// homogeneous A, extended linearly. On even A this reads
///   st (a beta; gamma d) = (a^t  gamma^t; -beta^t  d^t),
/// an antiautomorphism of the even matrices with st^2 = parity conjugation
/// and st^4 = id. Other references put the sign on the other off-diagonal block.
SuperMatrix sm_supertranspose(const SuperMatrix& a);

/// Graded conjugate transpose: (A^dag)_ji = phi(i,j) * conj(A_ij), with
/// phi = 1 on diagonal blocks and phi = i on off-diagonal blocks. An
/// involutive antiautomorphism of the even matrices: (AB)^dag = B^dag A^dag.
SuperMatrix sm_super_adjoint(const SuperMatrix& a);

nlohmann::json to_json(const SuperMatrix& a);
SuperMatrix supermatrix_from_json(const nlohmann::json& j, int q);

}  // namespace superlie
