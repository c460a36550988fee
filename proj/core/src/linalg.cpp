#include "superlie/linalg.hpp"

namespace superlie {

bool is_negative_definite(RatMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::dimension_mismatch, "definiteness test needs a square matrix");
  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(m(k, k)) >= 0) return false;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (sgn(m(r, k)) == 0) continue;
      Rational f = m(r, k) / m(k, k);
      for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
    }
  }
  return true;
}

std::vector<Rational> realify(const std::vector<Gauss>& v) {
  std::vector<Rational> out(2 * v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    out[k] = v[k].re();
    out[v.size() + k] = v[k].im();
  }
  return out;
}

std::vector<Gauss> complexify(const std::vector<Rational>& v) {
  if (v.size() % 2) throw Error(ErrorCode::dimension_mismatch, "realified vector has odd length");
  const std::size_t n = v.size() / 2;
  std::vector<Gauss> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = Gauss(v[k], v[n + k]);
  return out;
}

}  // namespace superlie
