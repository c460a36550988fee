#include "superlie/enveloping.hpp"

#include "superlie/errors.hpp"

#include <algorithm>
#include <functional>

namespace superlie {

namespace {

Rational binomial(long n, long k) {
  if (k < 0 || n < k) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(out);
}

/// Non-decreasing basis words of length `len` with no repeated odd letter.
void enumerate(const LieSuperalgebra& g, std::size_t len, PbwWord& cur, std::vector<PbwWord>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  std::size_t start = cur.empty() ? 0 : cur.back();
  for (std::size_t k = start; k < g.dim(); ++k) {
    if (!cur.empty() && cur.back() == k && g.parity(k)) continue;
    cur.push_back(static_cast<std::uint16_t>(k));
    enumerate(g, len, cur, out);
    cur.pop_back();
  }
}

/// Realified s: x = a + ib goes to (M_r a + M_i b) + i(M_i a - M_r b).
RatMatrix realified_map(const GaussMatrix& m) {
  const std::size_t n = m.rows();
  RatMatrix r(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Gauss& z = m(i, j);
      r(i, j) = z.re();
      r(i, n + j) = z.im();
      r(n + i, j) = z.im();
      r(n + i, n + j) = -z.re();
    }
  return r;
}

RatMatrix columns(const std::vector<std::vector<Rational>>& cols, std::size_t rows) {
  RatMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

}  // namespace

std::size_t pbw_dimension(std::size_t even, std::size_t odd, int d) {
  Rational total = 0;
  for (long j = 0; j <= d; ++j)
    for (long o = 0; o <= std::min<long>(j, long(odd)); ++o) {
      long e = j - o;
      // Degree-e monomials in `even` commuting letters.
      Rational sym = even == 0 ? Rational(e == 0 ? 1 : 0) : binomial(long(even) + e - 1, e);
      total += binomial(long(odd), o) * sym;
    }
  return total.get_num().get_ui();
}

TruncatedUEA::TruncatedUEA(const LieSuperalgebra& g, int d) : g_(&g), d_(d) {
  if (d < 0) throw Error(ErrorCode::invalid_parameter, "degree cap must be non-negative");
  if (d > kMaxUeaDegree)
    throw Error(ErrorCode::cap_exceeded, "degree cap " + std::to_string(d) + " exceeds " + std::to_string(kMaxUeaDegree));
  if (g.dim() > 0xffff) throw Error(ErrorCode::cap_exceeded, "algebra too large for PBW words");
  for (int len = 0; len <= d; ++len) {
    PbwWord cur;
    enumerate(g, std::size_t(len), cur, basis_);
  }
  for (std::size_t k = 0; k < basis_.size(); ++k) index_[basis_[k]] = k;
}

std::optional<std::size_t> TruncatedUEA::index(const PbwWord& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string TruncatedUEA::label(std::size_t k) const {
  const PbwWord& w = basis_[k];
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t a = 0; a < w.size();) {
    std::size_t b = a;
    while (b < w.size() && w[b] == w[a]) ++b;
    if (!out.empty()) out += "·";
    out += g_->label(w[a]);
    if (b - a > 1) out += "^" + std::to_string(b - a);
    a = b;
  }
  return out;
}

int TruncatedUEA::parity(std::size_t k) const {
  int p = 0;
  for (auto x : basis_[k]) p ^= g_->parity(x);
  return p;
}

const TruncatedUEA::Sparse& TruncatedUEA::normal_form(const PbwWord& w) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(w);
    if (it != memo_.end()) return *it->second;
  }
  Sparse out;
  auto add = [&out](const Sparse& part, const Gauss& f) {
    for (const auto& [word, c] : part) {
      Gauss& slot = out[word];
      slot += c * f;
      if (slot.is_zero()) out.erase(word);
    }
  };
  std::size_t i = 0;
  for (; i + 1 < w.size(); ++i)
    if (w[i] > w[i + 1] || (w[i] == w[i + 1] && g_->parity(w[i]))) break;
  if (i + 1 >= w.size()) {
    out[w] = Gauss(1);
  } else {
    const std::size_t x = w[i], y = w[i + 1];
    // Replace the pair by its bracket: [x,y] = sum_k c_k e_k.
    auto bracket_terms = [&](const Gauss& f) {
      for (const auto& [k, c] : g_->table().at(x, y)) {
        PbwWord shorter(w.begin(), w.begin() + i);
        shorter.push_back(static_cast<std::uint16_t>(k));
        shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
        add(normal_form(shorter), c * f);
      }
    };
    if (x == y) {
      // Odd square: x x = (1/2)[x, x].
      bracket_terms(Gauss(Rational(1, 2)));
    } else {
      // x y = (-1)^{|x||y|} y x + [x, y].
      PbwWord swapped = w;
      std::swap(swapped[i], swapped[i + 1]);
      add(normal_form(swapped), (g_->parity(x) && g_->parity(y)) ? Gauss(-1) : Gauss(1));
      bracket_terms(Gauss(1));
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = memo_.emplace(w, std::make_unique<Sparse>(std::move(out)));
  return *it->second;
}

Vector TruncatedUEA::truncate(const Sparse& s) const {
  Vector v(dim());
  for (const auto& [word, c] : s) {
    if (int(word.size()) > d_) continue;
    v[index_.at(word)] += c;
  }
  return v;
}

Vector TruncatedUEA::straighten(const PbwWord& w) const {
  for (auto x : w)
    if (x >= g_->dim()) throw Error(ErrorCode::invalid_parameter, "word letter outside the algebra basis");
  return truncate(normal_form(w));
}

Vector TruncatedUEA::unit(std::size_t k) const {
  Vector v(dim());
  v.at(k) = Gauss(1);
  return v;
}

Vector TruncatedUEA::multiply(const Vector& u, const Vector& v) const {
  if (u.size() != dim() || v.size() != dim()) throw Error(ErrorCode::dimension_mismatch, "element size mismatch");
  Vector out(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    if (u[a].is_zero()) continue;
    for (std::size_t b = 0; b < dim(); ++b) {
      if (v[b].is_zero()) continue;
      PbwWord w = basis_[a];
      w.insert(w.end(), basis_[b].begin(), basis_[b].end());
      Gauss f = u[a] * v[b];
      Vector nf = truncate(normal_form(w));
      for (std::size_t k = 0; k < dim(); ++k)
        if (!nf[k].is_zero()) out[k] += f * nf[k];
    }
  }
  return out;
}

Vector TruncatedUEA::product(const std::vector<Vector>& factors) const {
  Sparse acc{{PbwWord{}, Gauss(1)}};
  for (const auto& x : factors) {
    if (x.size() != g_->dim()) throw Error(ErrorCode::dimension_mismatch, "factor is not a Lie element");
    Sparse next;
    for (const auto& [word, c] : acc)
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k].is_zero()) continue;
        PbwWord w = word;
        w.push_back(static_cast<std::uint16_t>(k));
        next[w] += c * x[k];
      }
    acc = std::move(next);
  }
  Vector out(dim());
  for (const auto& [word, c] : acc) {
    if (c.is_zero()) continue;
    Vector nf = truncate(normal_form(word));
    for (std::size_t k = 0; k < dim(); ++k)
      if (!nf[k].is_zero()) out[k] += c * nf[k];
  }
  return out;
}

TruncatedUEA pbw_basis(const LieSuperalgebra& g, int d) { return TruncatedUEA(g, d); }

SemilinearMap extend_involution(const SemilinearMap& s, const TruncatedUEA& u) {
  const LieSuperalgebra& g = u.algebra();
  if (s.matrix.rows() != g.dim()) throw Error(ErrorCode::dimension_mismatch, "involution does not match the algebra");
  std::vector<Vector> images;
  for (std::size_t k = 0; k < g.dim(); ++k) images.push_back(s.apply(g.unit(k)));
  SemilinearMap out;
  out.convention = s.convention;
  out.matrix = GaussMatrix(u.dim(), u.dim());
  for (std::size_t c = 0; c < u.dim(); ++c) {
    std::vector<Vector> factors;
    for (auto x : u.basis()[c]) factors.push_back(images[x]);
    Vector col = u.product(factors);
    for (std::size_t r = 0; r < u.dim(); ++r) out.matrix(r, c) = col[r];
  }
  return out;
}

bool is_algebra_map(const SemilinearMap& su, const TruncatedUEA& u) {
  for (std::size_t a = 0; a < u.dim(); ++a)
    for (std::size_t b = 0; b < u.dim(); ++b) {
      if (int(u.basis()[a].size() + u.basis()[b].size()) > u.degree()) continue;
      Vector lhs = su.apply(u.multiply(u.unit(a), u.unit(b)));
      Vector rhs = u.multiply(su.apply(u.unit(a)), su.apply(u.unit(b)));
      if (lhs != rhs) return false;
    }
  return true;
}

UeaReport invariants_dim_compare(const LieSuperalgebra& g, const SemilinearMap& s, const RealFormBasis& k, int d) {
  TruncatedUEA u(g, d);
  UeaReport rep;
  rep.algebra = g.name();
  rep.degree = d;
  rep.dim_complex = u.dim();

  SemilinearMap su = extend_involution(s, u);
  rep.involutive = is_involution(su);
  const std::size_t n = u.dim(), rn = 2 * n;
  RatMatrix rs = realified_map(su.matrix);
  RatMatrix id = RatMatrix::identity(rn);
  RatMatrix shifted = rs - id;
  auto fixed = nullspace(shifted);
  rep.dim_fixed = fixed.size();

  // U(k)_{<=d}: ordered k-monomials, odd letters at most once.
  std::vector<std::vector<Rational>> uk;
  for (int len = 0; len <= d; ++len) {
    std::vector<std::size_t> cur;
    std::function<void()> rec = [&] {
      if (int(cur.size()) == len) {
        std::vector<Vector> factors;
        for (auto a : cur) factors.push_back(k.vectors[a]);
        uk.push_back(realify(u.product(factors)));
        return;
      }
      std::size_t start = cur.empty() ? 0 : cur.back();
      for (std::size_t a = start; a < k.vectors.size(); ++a) {
        if (!cur.empty() && cur.back() == a && k.parity[a]) continue;
        cur.push_back(a);
        rec();
        cur.pop_back();
      }
    };
    rec();
  }
  rep.uk_monomials = uk.size();
  RatMatrix ukm = columns(uk, rn);
  rep.dim_uk = rank(ukm);
  rep.injective = rep.dim_uk == rep.uk_monomials;
  rep.uk_fixed = (shifted * ukm).is_zero();
  // Spans agree when U(k) sits in the fixed space and has the same dimension.
  rep.surjective = rep.uk_fixed && rep.dim_uk == rep.dim_fixed;
  rep.equal = rep.surjective;

  // P = (1 + s)/2.
  RatMatrix p = rs + id;
  for (std::size_t r = 0; r < rn; ++r)
    for (std::size_t c = 0; c < rn; ++c) p(r, c) /= 2;
  rep.projector_idempotent = p * p == p;
  rep.projector_image_fixed = (shifted * p).is_zero() && rank(p) == rep.dim_fixed;
  return rep;
}

UeaReport invariants_dim_compare(const LieSuperalgebra& g, Convention c, int d) {
  auto s = involution_s(g, c);
  auto k = compact_form_basis(g, s);
  return invariants_dim_compare(g, s, k, d);
}

nlohmann::json to_json(const UeaReport& r) {
  return {{"algebra", r.algebra},
          {"degree", r.degree},
          {"dim_complex", r.dim_complex},
          {"dim_fixed", r.dim_fixed},
          {"dim_uk", r.dim_uk},
          {"uk_monomials", r.uk_monomials},
          {"equal", r.equal},
          {"injective", r.injective},
          {"surjective", r.surjective},
          {"involutive", r.involutive},
          {"projector_idempotent", r.projector_idempotent},
          {"projector_image_fixed", r.projector_image_fixed}};
}

}  // namespace superlie
