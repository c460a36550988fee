#include "superlie/supermatrix.hpp"

#include "superlie/errors.hpp"

#include <numeric>

namespace superlie {

// ---------------------------------------------------------------------------
// GrMatrix

GrMatrix::GrMatrix(std::size_t rows, std::size_t cols, int q)
    : rows_(rows), cols_(cols), q_(q), data_(rows * cols, Grassmann(q)) {}

GrMatrix GrMatrix::identity(std::size_t n, int q) {
  GrMatrix m(n, n, q);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = Grassmann::one(q);
  return m;
}

GrMatrix GrMatrix::from_scalar(const GaussMatrix& s, int q) {
  GrMatrix m(s.rows(), s.cols(), q);
  for (std::size_t r = 0; r < s.rows(); ++r)
    for (std::size_t c = 0; c < s.cols(); ++c) m(r, c) = Grassmann(q, s(r, c));
  return m;
}

GaussMatrix GrMatrix::body() const {
  GaussMatrix b(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) b(r, c) = (*this)(r, c).body();
  return b;
}

bool GrMatrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

GrMatrix GrMatrix::transposed() const {
  GrMatrix t(cols_, rows_, q_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

GrMatrix GrMatrix::conj() const {
  GrMatrix t(*this);
  for (auto& e : t.data_) e = e.conj();
  return t;
}

GrMatrix GrMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_) throw Error(ErrorCode::dimension_mismatch, "block out of range");
  GrMatrix b(rows, cols, q_);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void GrMatrix::set_block(std::size_t r0, std::size_t c0, const GrMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error(ErrorCode::dimension_mismatch, "block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

GrMatrix GrMatrix::inverse() const {
  if (rows_ != cols_) throw Error(ErrorCode::dimension_mismatch, "inverse of a non-square matrix");
  auto body_inv = superlie::inverse(body());
  if (!body_inv) throw Error(ErrorCode::not_invertible, "body matrix is singular");
  // A = B (1 + B^{-1} N) with N the soul part, so A^{-1} = sum_k (-B^{-1} N)^k B^{-1}.
  GrMatrix binv = from_scalar(*body_inv, q_);
  GrMatrix soul(rows_, cols_, q_);
  for (std::size_t k = 0; k < data_.size(); ++k) soul.data_[k] = data_[k].soul();
  GrMatrix step = -(binv * soul);
  GrMatrix sum = identity(rows_, q_);
  GrMatrix power = identity(rows_, q_);
  for (int k = 1; k <= q_; ++k) {
    power = power * step;
    if (power.is_zero()) break;
    sum = sum + power;
  }
  return sum * binv;
}

namespace {

Grassmann det_expand(const GrMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  const int q = m.q();
  if (row == m.rows()) return Grassmann::one(q);
  Grassmann total(q);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::size_t c = cols[k];
    if (m(row, c).is_zero()) continue;
    cols.erase(cols.begin() + static_cast<long>(k));
    Grassmann minor = det_expand(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<long>(k), c);
    Grassmann term = m(row, c) * minor;
    if (k % 2) total -= term;
    else total += term;
  }
  return total;
}

}  // namespace

Grassmann GrMatrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorCode::dimension_mismatch, "determinant of a non-square matrix");
  std::vector<std::size_t> cols(cols_);
  std::iota(cols.begin(), cols.end(), 0);
  return det_expand(*this, cols, 0);
}

Grassmann GrMatrix::trace() const {
  if (rows_ != cols_) throw Error(ErrorCode::dimension_mismatch, "trace of a non-square matrix");
  Grassmann t(q_);
  for (std::size_t k = 0; k < rows_; ++k) t += (*this)(k, k);
  return t;
}

GrMatrix GrMatrix::operator-() const {
  GrMatrix r(*this);
  for (auto& e : r.data_) e = -e;
  return r;
}

GrMatrix operator+(GrMatrix a, const GrMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::dimension_mismatch, "matrix sum shape mismatch");
  for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
  return a;
}

GrMatrix operator-(GrMatrix a, const GrMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::dimension_mismatch, "matrix difference shape mismatch");
  for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
  return a;
}

GrMatrix operator*(const GrMatrix& a, const GrMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::dimension_mismatch, "matrix product shape mismatch");
  if (a.q_ != b.q_) throw Error(ErrorCode::dimension_mismatch, "Grassmann generator counts differ");
  GrMatrix r(a.rows_, b.cols_, a.q_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Grassmann& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Grassmann& bkj = b(k, j);
        if (!bkj.is_zero()) r(i, j) += aik * bkj;
      }
    }
  return r;
}

GrMatrix operator*(const Grassmann& c, const GrMatrix& m) {
  GrMatrix r(m);
  for (auto& e : r.data_) e = c * e;
  return r;
}

GrMatrix operator*(const GrMatrix& m, const Grassmann& c) {
  GrMatrix r(m);
  for (auto& e : r.data_) e = e * c;
  return r;
}

// ---------------------------------------------------------------------------
// SuperMatrix

namespace {

void check_dims(int m, int n) {
  if (m < 0 || n < 0 || m + n == 0)
    throw Error(ErrorCode::invalid_parameter, "supermatrix needs m, n >= 0 and m + n > 0");
}

void require_same_shape(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.m() != b.m() || a.n() != b.n())
    throw Error(ErrorCode::dimension_mismatch,
                "supermatrix block dimensions differ: (" + std::to_string(a.m()) + "|" +
                    std::to_string(a.n()) + ") vs (" + std::to_string(b.m()) + "|" +
                    std::to_string(b.n()) + ")");
  if (a.q() != b.q()) throw Error(ErrorCode::dimension_mismatch, "Grassmann generator counts differ");
}

}  // namespace

SuperMatrix::SuperMatrix(int m, int n, int q)
    : m_(m), n_(n), entries_(static_cast<std::size_t>(m + n), static_cast<std::size_t>(m + n), q) {
  check_dims(m, n);
}

SuperMatrix::SuperMatrix(int m, int n, GrMatrix entries) : m_(m), n_(n), entries_(std::move(entries)) {
  check_dims(m, n);
  if (entries_.rows() != static_cast<std::size_t>(m + n) || entries_.cols() != entries_.rows())
    throw Error(ErrorCode::dimension_mismatch, "entry array does not match (m|n)");
}

SuperMatrix SuperMatrix::identity(int m, int n, int q) {
  check_dims(m, n);
  return SuperMatrix(m, n, GrMatrix::identity(static_cast<std::size_t>(m + n), q));
}

SuperMatrix SuperMatrix::from_scalar(int m, int n, const GaussMatrix& entries, int q) {
  return SuperMatrix(m, n, GrMatrix::from_scalar(entries, q));
}

SuperMatrix SuperMatrix::from_blocks(const GrMatrix& a, const GrMatrix& beta, const GrMatrix& gamma,
                                     const GrMatrix& d) {
  const std::size_t m = a.rows(), n = d.rows();
  if (a.cols() != m || d.cols() != n || beta.rows() != m || beta.cols() != n || gamma.rows() != n ||
      gamma.cols() != m)
    throw Error(ErrorCode::dimension_mismatch, "inconsistent block shapes");
  GrMatrix e(m + n, m + n, a.q());
  e.set_block(0, 0, a);
  e.set_block(0, m, beta);
  e.set_block(m, 0, gamma);
  e.set_block(m, m, d);
  return SuperMatrix(static_cast<int>(m), static_cast<int>(n), std::move(e));
}

bool SuperMatrix::is_even() const {
  for (std::size_t r = 0; r < size(); ++r)
    for (std::size_t c = 0; c < size(); ++c) {
      bool odd_block = index_parity(r) != index_parity(c);
      if (odd_block ? !entries_(r, c).is_odd() : !entries_(r, c).is_even()) return false;
    }
  return true;
}

bool SuperMatrix::is_odd() const {
  for (std::size_t r = 0; r < size(); ++r)
    for (std::size_t c = 0; c < size(); ++c) {
      bool odd_block = index_parity(r) != index_parity(c);
      if (odd_block ? !entries_(r, c).is_even() : !entries_(r, c).is_odd()) return false;
    }
  return true;
}

namespace {

Grassmann parity_component(const Grassmann& g, int parity) {
  std::vector<Grassmann::Term> terms;
  for (const auto& t : g.terms())
    if (monomial_degree(t.first) % 2 == parity) terms.push_back(t);
  return Grassmann::from_terms(g.q(), std::move(terms));
}

}  // namespace

SuperMatrix SuperMatrix::even_part() const {
  SuperMatrix r(*this);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      r(i, j) = parity_component((*this)(i, j), (index_parity(i) + index_parity(j)) % 2);
  return r;
}

SuperMatrix SuperMatrix::odd_part() const {
  SuperMatrix r(*this);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      r(i, j) = parity_component((*this)(i, j), (index_parity(i) + index_parity(j) + 1) % 2);
  return r;
}

bool SuperMatrix::is_invertible() const { return superlie::inverse(body()).has_value(); }

SuperMatrix SuperMatrix::conj() const { return SuperMatrix(m_, n_, entries_.conj()); }

SuperMatrix SuperMatrix::transposed() const { return SuperMatrix(m_, n_, entries_.transposed()); }

SuperMatrix SuperMatrix::operator-() const { return SuperMatrix(m_, n_, -entries_); }

SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
  require_same_shape(a, b);
  return SuperMatrix(a.m_, a.n_, a.entries_ + b.entries_);
}

SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
  require_same_shape(a, b);
  return SuperMatrix(a.m_, a.n_, a.entries_ - b.entries_);
}

SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
  require_same_shape(a, b);
  return SuperMatrix(a.m_, a.n_, a.entries_ * b.entries_);
}

SuperMatrix operator*(const Grassmann& c, const SuperMatrix& m) {
  return SuperMatrix(m.m_, m.n_, c * m.entries_);
}

SuperMatrix sm_mul(const SuperMatrix& a, const SuperMatrix& b) { return a * b; }

SuperMatrix sm_inv(const SuperMatrix& a) {
  try {
    return SuperMatrix(a.m(), a.n(), a.entries().inverse());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::not_invertible)
      throw Error(ErrorCode::not_invertible, "supermatrix body is singular", to_json(a));
    throw;
  }
}

Grassmann sm_berezinian(const SuperMatrix& x) {
  if (!x.is_even()) throw Error(ErrorCode::domain_error, "Berezinian needs an even supermatrix");
  const int q = x.q();
  if (x.n() == 0) return x.a().determinant();
  GrMatrix d = x.d();
  if (!superlie::inverse(d.body()))
    throw Error(ErrorCode::not_invertible, "odd-odd block has singular body");
  GrMatrix dinv = d.inverse();
  Grassmann det_d_inv = d.determinant().inverse();
  if (x.m() == 0) return det_d_inv;
  GrMatrix schur = x.a() - x.beta() * dinv * x.gamma();
  (void)q;
  return schur.determinant() * det_d_inv;
}

int nilpotency_index(const SuperMatrix& x) {
  // Body nilpotent of index <= N and soul products of length > q vanish,
  // so x^{(q+1) N} = 0 whenever x is nilpotent at all.
  const int bound = (x.q() + 1) * static_cast<int>(x.size());
  GrMatrix power = x.entries();
  for (int k = 1; k <= bound; ++k) {
    if (power.is_zero()) return k;
    power = power * x.entries();
  }
  return power.is_zero() ? bound + 1 : -1;
}

SuperMatrix sm_exp_nilpotent(const SuperMatrix& x) {
  int index = nilpotency_index(x);
  if (index < 0) throw Error(ErrorCode::not_nilpotent, "exponential requires a nilpotent argument", to_json(x));
  const int q = x.q();
  GrMatrix sum = GrMatrix::identity(x.size(), q);
  GrMatrix term = GrMatrix::identity(x.size(), q);
  for (int k = 1; k < index; ++k) {
    term = term * x.entries();
    term = term * Grassmann(q, Gauss(Rational(1, k)));
    sum = sum + term;
  }
  return SuperMatrix(x.m(), x.n(), std::move(sum));
}

Grassmann sm_supertrace(const SuperMatrix& x) {
  SuperMatrix ev = x.even_part(), od = x.odd_part();
  return ev.a().trace() - ev.d().trace() + od.a().trace() + od.d().trace();
}

namespace {

SuperMatrix supertranspose_homogeneous(const SuperMatrix& x, int parity) {
  SuperMatrix r(x.m(), x.n(), x.q());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      int pi = x.index_parity(i), pj = x.index_parity(j);
      bool negate = ((pi + parity) * (pi + pj)) % 2 == 1;
      r(i, j) = negate ? -x(j, i) : x(j, i);
    }
  return r;
}

}  // namespace

SuperMatrix sm_supertranspose(const SuperMatrix& x) {
  return supertranspose_homogeneous(x.even_part(), 0) + supertranspose_homogeneous(x.odd_part(), 1);
}

SuperMatrix sm_super_adjoint(const SuperMatrix& x) {
  SuperMatrix r(x.m(), x.n(), x.q());
  const Gauss i = Gauss::i();
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < x.size(); ++b) {
      Grassmann v = x(a, b).conj();
      if (x.index_parity(a) != x.index_parity(b)) v *= i;
      r(b, a) = std::move(v);
    }
  return r;
}

nlohmann::json to_json(const SuperMatrix& x) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < x.size(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < x.size(); ++c) row.push_back(to_json(x(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"m", x.m()}, {"n", x.n()}, {"q", x.q()}, {"entries", std::move(rows)}};
}

SuperMatrix supermatrix_from_json(const nlohmann::json& j, int q) {
  if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("entries"))
    throw Error(ErrorCode::parse_error, "supermatrix JSON needs m, n and entries");
  int m = j.at("m").get<int>(), n = j.at("n").get<int>();
  if (j.contains("q")) q = j.at("q").get<int>();
  SuperMatrix x(m, n, q);
  const auto& rows = j.at("entries");
  if (!rows.is_array() || rows.size() != x.size())
    throw Error(ErrorCode::parse_error, "entries must be an (m+n) x (m+n) array");
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != x.size())
      throw Error(ErrorCode::parse_error, "entries must be an (m+n) x (m+n) array");
    for (std::size_t c = 0; c < x.size(); ++c) x(r, c) = grassmann_from_json(rows[r][c], q);
  }
  return x;
}

}  // namespace superlie
