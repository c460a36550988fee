#include "superlie/supergroup.hpp"

#include "superlie/errors.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <regex>
#include <set>

namespace superlie {

namespace {

bool odd_or_zero(const Grassmann& x) { return x.is_zero() || x.is_odd(); }

std::string kind_name(LetterKind k) { return to_string(k); }

/// Integer exponents k_a with h_j(t) = diag(t^{k_a}).
std::vector<long> torus_exponents(const LieSuperalgebra& g, std::size_t j) {
  const GaussMatrix& h = g.basis(j);
  std::vector<long> k(h.rows());
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.cols(); ++c) {
      const Gauss& z = h(r, c);
      if (r != c) {
        if (!z.is_zero()) throw Error(ErrorCode::domain_error, "Cartan element H" + std::to_string(j + 1) + " is not diagonal");
        continue;
      }
      if (!z.is_real() || z.re().get_den() != 1)
        throw Error(ErrorCode::domain_error,
                    "Cartan element H" + std::to_string(j + 1) + " has a non-integral diagonal; no one-parameter torus");
      k[r] = z.re().get_num().get_si();
    }
  return k;
}

Grassmann power(const Grassmann& t, long k) {
  Grassmann base = k < 0 ? t.inverse() : t;
  Grassmann out = Grassmann::one(t.q());
  for (long e = 0; e < std::labs(k); ++e) out *= base;
  return out;
}

SuperMatrix scalar_matrix(const LieSuperalgebra& g, const GaussMatrix& x, int q) {
  return SuperMatrix::from_scalar(g.rep_m(), g.rep_n(), x, q);
}

GrMatrix zero_block(std::size_t r, std::size_t c, int q) { return GrMatrix(r, c, q); }

std::vector<Monomial> masks_of_degree(int q, int k) {
  std::vector<Monomial> out;
  for (Monomial m = 0; m < (Monomial(1) << q); ++m)
    if (monomial_degree(m) == k) out.push_back(m);
  return out;
}

/// Seeded exact draws for the sampler and the example suites.
class Draw {
 public:
  explicit Draw(std::mt19937_64& rng) : rng_(rng) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  Rational rational(long span = 3, long den = 3) {
    Rational r(uniform(-span, span), uniform(1, den));
    r.canonicalize();
    return r;
  }
  Gauss gauss() { return Gauss(rational(), rational()); }
  Gauss nonzero_gauss() {
    for (;;) {
      Gauss z = gauss();
      if (!z.is_zero()) return z;
    }
  }

  /// Random nilpotent element of the given parity; never zero when q allows it.
  Grassmann soul(int q, int parity) {
    std::vector<Monomial> pool;
    for (Monomial m = 1; m < (Monomial(1) << q); ++m)
      if (monomial_degree(m) % 2 == parity) pool.push_back(m);
    if (pool.empty()) return Grassmann(q);
    std::vector<Grassmann::Term> terms;
    const bool dense = pool.size() <= 16;
    for (;;) {
      terms.clear();
      if (dense) {
        for (Monomial m : pool)
          if (coin()) terms.emplace_back(m, nonzero_gauss());
      } else {
        for (int k = 0; k < 4; ++k) terms.emplace_back(pool[uniform(0, long(pool.size()) - 1)], nonzero_gauss());
      }
      Grassmann x = Grassmann::from_terms(q, terms);
      if (!x.is_zero()) return x;
    }
  }
  Grassmann even(int q) { return Grassmann(q, nonzero_gauss()) + soul(q, 0); }
  Grassmann any_even(int q) { return Grassmann(q, gauss()) + soul(q, 0); }
  Grassmann odd(int q) { return soul(q, 1); }

  /// Cayley transform (I - K)(I + K)^{-1} of a skew-Hermitian K: a rational unitary.
  GaussMatrix unitary(std::size_t n) {
    GaussMatrix k(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      k(r, r) = Gauss(0, rational());
      for (std::size_t c = r + 1; c < n; ++c) {
        k(r, c) = gauss();
        k(c, r) = -k(r, c).conj();
      }
    }
    GaussMatrix id = GaussMatrix::identity(n);
    auto inv = inverse(id + k);
    if (!inv) throw Error(ErrorCode::model_inconsistency, "I + K singular for skew-Hermitian K");
    return (id - k) * *inv;
  }

 private:
  std::mt19937_64& rng_;
};

Gauss det_of(const GaussMatrix& m) {
  GrMatrix g = GrMatrix::from_scalar(m, 0);
  return g.determinant().body();
}

void require_a_series(const LieSuperalgebra& g, const char* what) {
  if (!g.a_series())
    throw Error(ErrorCode::unsupported_family, std::string(what) + " is implemented for the gl/sl models only, not " + g.name());
}

void require_shape(const LieSuperalgebra& g, const SuperMatrix& m) {
  if (m.m() != g.rep_m() || m.n() != g.rep_n())
    throw Error(ErrorCode::dimension_mismatch, "matrix layout does not match the representation of " + g.name());
}

}  // namespace

std::string to_string(LetterKind k) {
  switch (k) {
    case LetterKind::x_even: return "x_even";
    case LetterKind::x_odd: return "x_odd";
    case LetterKind::x_mixed: return "x_mixed";
    case LetterKind::torus: return "torus";
  }
  return "?";
}

Letter make_letter(const LieSuperalgebra& g, LetterKind kind, const std::vector<Rational>& root, std::size_t torus_index,
                   const Grassmann& t, const Grassmann& theta) {
  if (t.q() != theta.q()) throw Error(ErrorCode::dimension_mismatch, "letter parameters use different Grassmann algebras");
  const int q = t.q();
  Letter l;
  l.kind = kind;
  if (kind == LetterKind::torus) {
    if (torus_index >= g.rank())
      throw Error(ErrorCode::invalid_parameter, "torus index " + std::to_string(torus_index) + " out of range for " + g.name());
    if (!t.is_even()) throw Error(ErrorCode::parity_violation, "even parameter expected", {{"parameter", to_json(t)}});
    if (t.body().is_zero())
      throw Error(ErrorCode::not_invertible, "torus parameter has zero body", {{"parameter", to_json(t)}});
    (void)torus_exponents(g, torus_index);
    l.index = torus_index;
    l.t = t;
    l.theta = Grassmann(q);
    return l;
  }
  auto idx = g.find_root(root);
  if (!idx) throw Error(ErrorCode::invalid_parameter, "not a root of " + g.name(), {{"root", rational_vector_json(root)}});
  const Root& r = g.roots()[*idx];
  l.root = root;
  l.index = *idx;
  switch (kind) {
    case LetterKind::x_even:
      if (r.parity) throw Error(ErrorCode::parity_violation, "x_even needs an even root");
      if (!t.is_even()) throw Error(ErrorCode::parity_violation, "even parameter expected", {{"parameter", to_json(t)}});
      l.t = t;
      l.theta = Grassmann(q);
      break;
    case LetterKind::x_odd:
      if (!r.parity) throw Error(ErrorCode::parity_violation, "x_odd needs an odd root");
      if (!odd_or_zero(theta))
        throw Error(ErrorCode::parity_violation, "odd parameter expected", {{"parameter", to_json(theta)}});
      l.t = Grassmann(q);
      l.theta = theta;
      break;
    case LetterKind::x_mixed: {
      if (!r.parity) throw Error(ErrorCode::parity_violation, "x_mixed needs an odd root");
      if (!t.is_even()) throw Error(ErrorCode::parity_violation, "even parameter expected", {{"parameter", to_json(t)}});
      if (!odd_or_zero(theta))
        throw Error(ErrorCode::parity_violation, "odd parameter expected", {{"parameter", to_json(theta)}});
      Vector x = g.unit(r.vector_index);
      Vector sq = g.bracket(x, x);
      if (std::all_of(sq.begin(), sq.end(), [](const Gauss& z) { return z.is_zero(); }))
        throw Error(ErrorCode::domain_error, "x_mixed needs a root with [X,X] != 0", {{"root", rational_vector_json(root)}});
      l.t = t;
      l.theta = theta;
      break;
    }
    case LetterKind::torus: break;
  }
  return l;
}

Letter make_even(const LieSuperalgebra& g, const std::vector<Rational>& root, const Grassmann& t) {
  return make_letter(g, LetterKind::x_even, root, 0, t, Grassmann(t.q()));
}

Letter make_odd(const LieSuperalgebra& g, const std::vector<Rational>& root, const Grassmann& theta) {
  return make_letter(g, LetterKind::x_odd, root, 0, Grassmann(theta.q()), theta);
}

Letter make_mixed(const LieSuperalgebra& g, const std::vector<Rational>& root, const Grassmann& t, const Grassmann& theta) {
  return make_letter(g, LetterKind::x_mixed, root, 0, t, theta);
}

Letter make_torus(const LieSuperalgebra& g, std::size_t index, const Grassmann& t) {
  return make_letter(g, LetterKind::torus, {}, index, t, Grassmann(t.q()));
}

SuperMatrix evaluate(const LieSuperalgebra& g, const Letter& l, int q) {
  if (l.t.q() != q || l.theta.q() != q)
    throw Error(ErrorCode::dimension_mismatch, "letter parameters do not live in Lambda_" + std::to_string(q));
  const int m = g.rep_m(), n = g.rep_n();
  switch (l.kind) {
    case LetterKind::x_even:
      return sm_exp_nilpotent(l.t * scalar_matrix(g, g.basis(g.roots()[l.index].vector_index), q));
    case LetterKind::x_odd:
      return SuperMatrix::identity(m, n, q) + l.theta * scalar_matrix(g, g.basis(g.roots()[l.index].vector_index), q);
    case LetterKind::x_mixed: {
      const GaussMatrix& x = g.basis(g.roots()[l.index].vector_index);
      SuperMatrix first = SuperMatrix::identity(m, n, q) + l.theta * scalar_matrix(g, x, q);
      return first * sm_exp_nilpotent(l.t * scalar_matrix(g, x * x, q));
    }
    case LetterKind::torus: {
      auto k = torus_exponents(g, l.index);
      SuperMatrix out(m, n, q);
      for (std::size_t a = 0; a < k.size(); ++a) out(a, a) = power(l.t, k[a]);
      return out;
    }
  }
  throw Error(ErrorCode::invalid_parameter, "unknown letter kind");
}

SuperMatrix evaluate(const LieSuperalgebra& g, const GeneratorWord& word) {
  SuperMatrix out = SuperMatrix::identity(g.rep_m(), g.rep_n(), word.q);
  for (const auto& l : word.letters) out = out * evaluate(g, l, word.q);
  return out;
}

Letter sigma_letter(const LieSuperalgebra& g, const Letter& l, Convention c) {
  Letter out = l;
  if (l.kind == LetterKind::torus) {
    out.t = l.t.conj().inverse();
    return out;
  }
  if (l.kind == LetterKind::x_mixed)
    throw Error(ErrorCode::unsupported_family, "sigma has no image for x_mixed letters (root with [X,X] != 0)");
  const Root& r = g.roots()[l.index];
  if (!r.has_negative) throw Error(ErrorCode::unsupported_family, "root has no negative in " + g.name());
  out.index = r.negative;
  out.root = g.roots()[r.negative].coords;
  if (l.kind == LetterKind::x_even) {
    out.t = -l.t.conj();
  } else {
    out.theta = c == Convention::graded ? l.theta.conj() * (-Gauss::i()) : -l.theta.conj();
  }
  return out;
}

GeneratorWord sigma_word(const LieSuperalgebra& g, const GeneratorWord& word, Convention c) {
  GeneratorWord out = word;
  for (auto& l : out.letters) l = sigma_letter(g, l, c);
  return out;
}

SuperMatrix sigma_matrix(const LieSuperalgebra& g, const SuperMatrix& m, Convention c) {
  require_a_series(g, "sigma_matrix");
  require_shape(g, m);
  if (!m.is_even()) throw Error(ErrorCode::domain_error, "sigma_matrix needs an even matrix");
  if (!m.is_invertible()) throw Error(ErrorCode::not_invertible, "sigma_matrix needs an invertible matrix");
  if (c == Convention::graded) return sm_inv(sm_super_adjoint(m));

  const std::size_t mm = m.m(), nn = m.n();
  const int q = m.q();
  GrMatrix a = m.a();
  if (!inverse(a.body()))
    throw Error(ErrorCode::domain_error, "literal sigma needs an invertible even-even block (big cell)");
  GrMatrix a_image = a.conj().inverse().transposed();
  if (nn == 0) return SuperMatrix(int(mm), 0, a_image);
  GrMatrix ainv = a.inverse();
  GrMatrix theta = m.gamma() * ainv;
  GrMatrix eta = ainv * m.beta();
  GrMatrix s = m.d() - m.gamma() * ainv * m.beta();
  GrMatrix s_image = s.conj().inverse().transposed();
  SuperMatrix upper = SuperMatrix::from_blocks(GrMatrix::identity(mm, q), -theta.conj().transposed(),
                                               zero_block(nn, mm, q), GrMatrix::identity(nn, q));
  SuperMatrix diag = SuperMatrix::from_blocks(a_image, zero_block(mm, nn, q), zero_block(nn, mm, q), s_image);
  SuperMatrix lower = SuperMatrix::from_blocks(GrMatrix::identity(mm, q), zero_block(mm, nn, q),
                                               -eta.conj().transposed(), GrMatrix::identity(nn, q));
  return upper * diag * lower;
}

void check_sigma_agreement(const LieSuperalgebra& g, const Letter& letter, int q, Convention c) {
  SuperMatrix via_matrix = sigma_matrix(g, evaluate(g, letter, q), c);
  SuperMatrix via_word = evaluate(g, sigma_letter(g, letter, c), q);
  if (via_matrix != via_word)
    throw Error(ErrorCode::convention_mismatch,
                "matrix sigma disagrees with word sigma on a generator (" + to_string(c) + " convention)",
                {{"letter", to_json(letter)}, {"matrix_route", to_json(via_matrix)}, {"word_route", to_json(via_word)}});
}

namespace {

/// Agreement on every generator letter with fixed parameters, once per
/// (algebra, convention, q).
void validate_sigma_matrix(const LieSuperalgebra& g, Convention c, int q) {
  static std::mutex mu;
  static std::set<std::string> done;
  const std::string key = g.name() + "/" + to_string(c) + "/" + std::to_string(q);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (done.count(key)) return;
  }
  Grassmann theta(q);
  if (q >= 1) theta = Grassmann::generator(q, 1);
  if (q >= 2) theta += Grassmann::generator(q, 2) * Gauss::i();
  Grassmann t(q, Gauss(2, 1));
  if (q >= 2) t += Grassmann::generator(q, 1) * Grassmann::generator(q, 2);
  for (const auto& r : g.roots()) {
    Letter l = r.parity ? make_odd(g, r.coords, theta) : make_even(g, r.coords, t);
    check_sigma_agreement(g, l, q, c);
  }
  for (std::size_t j = 0; j < g.rank(); ++j) check_sigma_agreement(g, make_torus(g, j, t), q, c);
  std::lock_guard<std::mutex> lock(mu);
  done.insert(key);
}

bool is_special(const LieSuperalgebra& g) { return g.spec().kind == FamilyKind::sl; }

}  // namespace

bool k_membership(const LieSuperalgebra& g, const SuperMatrix& m, Convention c) {
  require_a_series(g, "k_membership");
  require_shape(g, m);
  if (!m.is_even()) throw Error(ErrorCode::domain_error, "not a group element: matrix is not even");
  if (!m.is_invertible()) throw Error(ErrorCode::domain_error, "not a group element: matrix is not invertible");
  if (is_special(g) && sm_berezinian(m) != Grassmann::one(m.q()))
    throw Error(ErrorCode::domain_error, "not a group element: Berezinian is not 1",
                {{"berezinian", to_json(sm_berezinian(m))}});
  validate_sigma_matrix(g, c, m.q());
  return sigma_matrix(g, m, c) == m;
}

namespace {

/// Degree-by-degree solver for sigma(x) = x (and Ber x = 1 on sl) over a
/// fixed unitary body. The degree-k linearization depends only on the body,
/// so each system is built once and reused while backtracking.
class FixedPointSolver {
 public:
  FixedPointSolver(const LieSuperalgebra& g, Convention c, int q, const SuperMatrix& body, Draw& draw)
      : g_(g), c_(c), q_(q), body_(body), draw_(draw), special_(is_special(g)) {
    const std::size_t mm = body.m(), nn = body.n();
    linear_.resize(q + 1);
    for (int k = 1; k <= q; ++k) {
      Level& lv = linear_[k];
      lv.masks = masks_of_degree(q, k);
      for (std::size_t r = 0; r < mm + nn; ++r)
        for (std::size_t col = 0; col < mm + nn; ++col)
          if ((parity(r) + parity(col)) % 2 == k % 2)
            for (Monomial mask : lv.masks) {
              lv.slots.push_back({r, col, mask, Gauss(1)});
              lv.slots.push_back({r, col, mask, Gauss::i()});
            }
      if (lv.slots.empty()) continue;
      SuperMatrix sb = sigma_matrix(g_, body_, c_);
      Grassmann ber_b = special_ ? sm_berezinian(body_) : Grassmann(q);
      std::vector<std::vector<Rational>> cols;
      for (const auto& s : lv.slots) {
        SuperMatrix e = unit(s);
        Grassmann dber = special_ ? sm_berezinian(body_ + e) - ber_b : Grassmann(q);
        cols.push_back(coords(lv, sigma_matrix(g_, body_ + e, c_) - sb - e, dber));
      }
      lv.system = RatMatrix(cols[0].size(), cols.size());
      for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t r = 0; r < cols[j].size(); ++r) lv.system(r, j) = cols[j][r];
      lv.kernel = nullspace(lv.system);
    }
  }

  std::optional<SuperMatrix> run() {
    budget_ = 64;
    return descend(1, body_);
  }

 private:
  struct Slot {
    std::size_t r, c;
    Monomial mask;
    Gauss unit;
  };
  struct Level {
    std::vector<Monomial> masks;
    std::vector<Slot> slots;
    RatMatrix system;
    std::vector<std::vector<Rational>> kernel;
  };

  int parity(std::size_t r) const { return int(r) < body_.m() ? 0 : 1; }

  SuperMatrix unit(const Slot& s) const {
    SuperMatrix e(body_.m(), body_.n(), q_);
    e(s.r, s.c) = Grassmann::monomial(q_, s.mask, s.unit);
    return e;
  }

  /// Real coordinates of the degree-k parts of all entries, then of Ber.
  std::vector<Rational> coords(const Level& lv, const SuperMatrix& x, const Grassmann& ber) const {
    std::vector<Rational> out;
    const std::size_t size = x.size();
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t col = 0; col < size; ++col)
        for (Monomial mask : lv.masks) {
          Gauss z = x(r, col).coeff(mask);
          out.push_back(z.re());
          out.push_back(z.im());
        }
    if (special_)
      for (Monomial mask : lv.masks) {
        Gauss z = ber.coeff(mask);
        out.push_back(z.re());
        out.push_back(z.im());
      }
    return out;
  }

  /// Kernel combination for try number t: dense, then sparse, then none.
  std::vector<Rational> combination(const Level& lv, int t) {
    std::vector<Rational> f(lv.kernel.size());
    if (t == 0) {
      for (auto& x : f) x = draw_.rational(2, 2);
    } else if (t < 4 && !f.empty()) {
      f[draw_.uniform(0, long(f.size()) - 1)] = draw_.rational(2, 2);
    }
    return f;
  }

  std::optional<SuperMatrix> descend(int k, const SuperMatrix& x) {
    if (budget_-- <= 0) return std::nullopt;
    if (k > q_) {
      if (sigma_matrix(g_, x, c_) != x) return std::nullopt;
      if (special_ && sm_berezinian(x) != Grassmann::one(q_)) return std::nullopt;
      return x;
    }
    const Level& lv = linear_[k];
    if (lv.slots.empty()) return descend(k + 1, x);
    Grassmann gap = special_ ? Grassmann::one(q_) - sm_berezinian(x) : Grassmann(q_);
    auto rhs = coords(lv, x - sigma_matrix(g_, x, c_), gap);
    auto sol = solve(lv.system, rhs);
    if (!sol) return std::nullopt;
    const int tries = lv.kernel.empty() ? 1 : 5;
    for (int t = 0; t < tries; ++t) {
      std::vector<Rational> v = *sol;
      auto f = combination(lv, t);
      for (std::size_t b = 0; b < f.size(); ++b)
        if (sgn(f[b]) != 0)
          for (std::size_t j = 0; j < v.size(); ++j) v[j] += f[b] * lv.kernel[b][j];
      SuperMatrix y = x;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (sgn(v[j]) != 0) {
          const Slot& s = lv.slots[j];
          y(s.r, s.c) += Grassmann::monomial(q_, s.mask, s.unit * Gauss(v[j]));
        }
      if (auto out = descend(k + 1, y)) return out;
      if (budget_ <= 0) break;
    }
    return std::nullopt;
  }

  const LieSuperalgebra& g_;
  Convention c_;
  int q_;
  SuperMatrix body_;
  Draw& draw_;
  bool special_;
  std::vector<Level> linear_;
  int budget_ = 0;
};

}  // namespace

std::optional<SuperMatrix> sample_fixed_point(const LieSuperalgebra& g, Convention c, int q, std::mt19937_64& rng,
                                              int attempts) {
  require_a_series(g, "sample_fixed_point");
  Draw draw(rng);
  const std::size_t mm = g.rep_m(), nn = g.rep_n();
  for (int attempt = 0; attempt < attempts; ++attempt) {
    GaussMatrix ua = draw.unitary(mm), ud = draw.unitary(nn);
    if (is_special(g) && mm > 0) {
      Gauss lambda = (nn == 0 ? Gauss(1) : det_of(ud)) / det_of(ua);
      for (std::size_t col = 0; col < mm; ++col) ua(0, col) *= lambda;
    }
    GaussMatrix body(mm + nn, mm + nn);
    for (std::size_t r = 0; r < mm; ++r)
      for (std::size_t col = 0; col < mm; ++col) body(r, col) = ua(r, col);
    for (std::size_t r = 0; r < nn; ++r)
      for (std::size_t col = 0; col < nn; ++col) body(mm + r, mm + col) = ud(r, col);
    FixedPointSolver solver(g, c, q, SuperMatrix::from_scalar(int(mm), int(nn), body, q), draw);
    if (auto x = solver.run()) return x;
  }
  return std::nullopt;
}

SuperMatrix exp_element(const LieSuperalgebra& g, const Vector& x, const Grassmann& tau) {
  return sm_exp_nilpotent(tau * scalar_matrix(g, g.element(x), tau.q()));
}

// ---------------------------------------------------------------------------
// Example suites

namespace {

struct FamilyPlan {
  std::string family;   // canonical family label
  std::string algebra;  // matrix model
  int m = 0, n = 0;
  enum class Shape { sl2, gl11, sl11, slm1 } shape = Shape::sl2;
};

FamilyPlan plan_family(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += char(std::toupper(static_cast<unsigned char>(ch)));
  FamilyPlan p;
  std::smatch mt;
  if (s == "SL(2)" || s == "SL2") {
    p = {"SL(2)", "sl(2)", 2, 0, FamilyPlan::Shape::sl2};
  } else if (s == "GL(1|1)") {
    p = {"GL(1|1)", "gl(1|1)", 1, 1, FamilyPlan::Shape::gl11};
  } else if (s == "SL(1|1)") {
    p = {"SL(1|1)", "sl(1|1)", 1, 1, FamilyPlan::Shape::sl11};
  } else if (std::regex_match(s, mt, std::regex(R"(SL\((\d+)\|(\d+)\))"))) {
    int m = std::stoi(mt[1]), n = std::stoi(mt[2]);
    if (n != 1 || m < 2 || m > 3)
      throw Error(ErrorCode::unsupported_family, "example suite covers SL(m|1) with m in {2, 3}, not " + text);
    p = {"SL(" + std::to_string(m) + "|1)", "sl(" + std::to_string(m) + "|1)", m, 1, FamilyPlan::Shape::slm1};
  } else {
    throw Error(ErrorCode::unsupported_family,
                "example families are SL(2), GL(1|1), SL(1|1) and SL(m|1); got '" + text + "'");
  }
  return p;
}

std::vector<Rational> coords_at(const LieSuperalgebra& g, std::size_t r, std::size_t c) {
  std::vector<Rational> v(g.rep_m() + g.rep_n());
  v[r] = 1;
  v[c] = -1;
  return v;
}

GrMatrix unit_block(std::size_t n, int q) { return GrMatrix::identity(n, q); }

/// Big-cell parameters: g = (1 0; theta 1)(t 0; 0 s)(1 eta; 0 1) with
/// t = L diag(dg) U.
struct BigCell {
  GrMatrix lower, upper;     // unitriangular parts of t
  std::vector<Grassmann> dg; // diagonal of t
  GrMatrix t, theta, eta, s;
  GeneratorWord word;
};

BigCell draw_big_cell(const LieSuperalgebra& g, const FamilyPlan& p, int q, Draw& draw) {
  BigCell b;
  const std::size_t m = p.m, n = p.n;
  b.lower = unit_block(m, q);
  b.upper = unit_block(m, q);
  b.theta = GrMatrix(n, m, q);
  b.eta = GrMatrix(m, n, q);
  for (std::size_t k = 0; k < m; ++k) b.dg.push_back(draw.even(q));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      if (r > c) b.lower(r, c) = draw.any_even(q);
      if (r < c) b.upper(r, c) = draw.any_even(q);
    }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      b.theta(r, c) = draw.odd(q);
      b.eta(c, r) = draw.odd(q);
    }
  GrMatrix diag(m, m, q);
  for (std::size_t k = 0; k < m; ++k) diag(k, k) = b.dg[k];
  b.t = b.lower * diag * b.upper;

  b.word.algebra = g.name();
  b.word.q = q;
  auto& w = b.word.letters;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m; ++c) w.push_back(make_odd(g, coords_at(g, m + r, c), b.theta(r, c)));
  // Row-ascending lower and row-descending upper orders make all cross terms vanish.
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < r; ++c) w.push_back(make_even(g, coords_at(g, r, c), b.lower(r, c)));
  switch (p.shape) {
    case FamilyPlan::Shape::sl2:
      w.push_back(make_torus(g, 0, b.dg[0]));
      b.dg[1] = b.dg[0].inverse();
      break;
    case FamilyPlan::Shape::gl11: {
      Grassmann s = draw.even(q);
      w.push_back(make_torus(g, 0, b.dg[0]));
      w.push_back(make_torus(g, 1, s));
      b.s = GrMatrix(1, 1, q);
      b.s(0, 0) = s;
      break;
    }
    case FamilyPlan::Shape::sl11:
      w.push_back(make_torus(g, 0, b.dg[0]));
      b.s = GrMatrix(1, 1, q);
      b.s(0, 0) = b.dg[0];
      break;
    case FamilyPlan::Shape::slm1: {
      // h_j = E_jj - E_{j+1,j+1} (j < m-1) and h_{m-1} = E_{m-1,m-1} + E_mm, so
      // prod_j h_j(d_0...d_j) = diag(d_0, ..., d_{m-1} | d_0...d_{m-1}).
      Grassmann acc = Grassmann::one(q);
      for (std::size_t j = 0; j < m; ++j) {
        acc *= b.dg[j];
        w.push_back(make_torus(g, j, acc));
      }
      b.s = GrMatrix(1, 1, q);
      b.s(0, 0) = acc;
      break;
    }
  }
  if (p.shape == FamilyPlan::Shape::sl2) {
    GrMatrix d2(m, m, q);
    for (std::size_t k = 0; k < m; ++k) d2(k, k) = b.dg[k];
    b.t = b.lower * d2 * b.upper;
  }
  for (std::size_t r = m; r-- > 0;)
    for (std::size_t c = m; c-- > r + 1;) w.push_back(make_even(g, coords_at(g, r, c), b.upper(r, c)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m; ++c) w.push_back(make_odd(g, coords_at(g, c, m + r), b.eta(c, r)));
  return b;
}

SuperMatrix scalar22(const Grassmann& a, const Grassmann& b, const Grassmann& c, const Grassmann& d, int m, int n) {
  GrMatrix e(2, 2, a.q());
  e(0, 0) = a;
  e(0, 1) = b;
  e(1, 0) = c;
  e(1, 1) = d;
  return SuperMatrix(m, n, e);
}

/// Closed-form g from the parameters, as displayed for each family.
SuperMatrix display_g(const FamilyPlan& p, const BigCell& b) {
  if (p.shape == FamilyPlan::Shape::sl2) {
    const Grassmann &t = b.dg[0], &u = b.upper(0, 1), &v = b.lower(1, 0);
    return scalar22(t, t * u, v * t, u * t * v + t.inverse(), 2, 0);
  }
  if (p.shape != FamilyPlan::Shape::slm1) {
    const Grassmann &t = b.dg[0], &th = b.theta(0, 0), &et = b.eta(0, 0), &s = b.s(0, 0);
    return scalar22(t, t * et, t * th, th * t * et + s, 1, 1);
  }
  return SuperMatrix::from_blocks(b.t, b.t * b.eta, b.theta * b.t, b.theta * b.t * b.eta + b.s);
}

/// Closed-form sigma(g) as displayed; `printed` reproduces the top-right block
/// exactly as typeset in the SL(m|n) display (no bar on theta).
SuperMatrix display_sigma(const FamilyPlan& p, const BigCell& b, bool printed = false) {
  if (p.shape == FamilyPlan::Shape::sl2) {
    const Grassmann tb = b.dg[0].conj(), ub = b.upper(0, 1).conj(), vb = b.lower(1, 0).conj();
    return scalar22(tb.inverse() + ub * tb * vb, -vb * tb, -tb * ub, tb, 2, 0);
  }
  if (p.shape != FamilyPlan::Shape::slm1) {
    const Grassmann tbi = b.dg[0].conj().inverse(), thb = b.theta(0, 0).conj(), etb = b.eta(0, 0).conj();
    const Grassmann sbi = b.s(0, 0).conj().inverse();
    return scalar22(tbi + thb * sbi * etb, -sbi * thb, -sbi * etb, sbi, 1, 1);
  }
  GrMatrix ti = b.t.conj().inverse().transposed();
  GrMatrix si = b.s.conj().inverse().transposed();
  GrMatrix thb = b.theta.conj().transposed(), etb = b.eta.conj().transposed();
  GrMatrix top_right = printed ? GrMatrix(-(b.theta.transposed() * si)) : GrMatrix(-(thb * si));
  return SuperMatrix::from_blocks(ti + thb * si * etb, top_right, -(si * etb), si);
}

struct Condition {
  std::string name;
  std::function<bool(const SuperMatrix&)> holds;
};

std::vector<Condition> conditions_for(const FamilyPlan& p) {
  using S = SuperMatrix;
  switch (p.shape) {
    case FamilyPlan::Shape::sl2:
      return {
          {"c=-b̄", [](const S& x) { return x(1, 0) == -x(0, 1).conj(); }},
          {"d=ā", [](const S& x) { return x(1, 1) == x(0, 0).conj(); }},
          {"aā+bb̄=1",
           [](const S& x) {
             return x(0, 0) * x(0, 0).conj() + x(0, 1) * x(0, 1).conj() == Grassmann::one(x.q());
           }},
      };
    case FamilyPlan::Shape::gl11:
      return {
          {"a=ā⁻¹+βd⁻¹γ",
           [](const S& x) { return x(0, 0) == x(0, 0).conj().inverse() + x(0, 1) * x(1, 1).inverse() * x(1, 0); }},
          {"d⁻¹=d̄+β̄ā⁻¹γ̄",
           [](const S& x) {
             return x(1, 1).inverse() == x(1, 1).conj() + x(0, 1).conj() * x(0, 0).conj().inverse() * x(1, 0).conj();
           }},
          {"β=-ā⁻¹γ̄d", [](const S& x) { return x(0, 1) == -(x(0, 0).conj().inverse() * x(1, 0).conj() * x(1, 1)); }},
          {"γ=-dβ̄ā⁻¹", [](const S& x) { return x(1, 0) == -(x(1, 1) * x(0, 1).conj() * x(0, 0).conj().inverse()); }},
      };
    case FamilyPlan::Shape::sl11:
      return {
          {"d=ā⁻¹", [](const S& x) { return x(1, 1) == x(0, 0).conj().inverse(); }},
          {"γ=-β̄", [](const S& x) { return x(1, 0) == -x(0, 1).conj(); }},
          {"ā(a+βāβ̄)=1",
           [](const S& x) {
             const Grassmann ab = x(0, 0).conj();
             return ab * (x(0, 0) + x(0, 1) * ab * x(0, 1).conj()) == Grassmann::one(x.q());
           }},
      };
    case FamilyPlan::Shape::slm1:
      return {
          {"a=(ā⁻¹)ᵗ+βd⁻¹γ",
           [](const S& x) {
             return x.a() == x.a().conj().inverse().transposed() + x.beta() * x.d().inverse() * x.gamma();
           }},
          {"β=-(ā⁻¹)ᵗγ̄ᵗd",
           [](const S& x) {
             return x.beta() == -(x.a().conj().inverse().transposed() * x.gamma().conj().transposed() * x.d());
           }},
          {"γ=-dβ̄ᵗ(ā⁻¹)ᵗ",
           [](const S& x) {
             return x.gamma() == -(x.d() * x.beta().conj().transposed() * x.a().conj().inverse().transposed());
           }},
          {"d=(d̄⁻¹)ᵗ+γa⁻¹β",
           [](const S& x) {
             return x.d() == x.d().conj().inverse().transposed() + x.gamma() * x.a().inverse() * x.beta();
           }},
      };
  }
  return {};
}

/// Name of the first failing condition, or empty when all hold.
std::string first_failing(const std::vector<Condition>& conds, const SuperMatrix& x) {
  for (const auto& c : conds)
    if (!c.holds(x)) return c.name;
  return {};
}

ExampleCheck named_check(std::string name) {
  ExampleCheck c;
  c.name = std::move(name);
  return c;
}

void record(ExampleCheck& chk, bool ok, nlohmann::json detail) {
  ++chk.total;
  if (ok) return;
  if (chk.failures++ == 0) chk.first_failure = std::move(detail);
}

/// Rational points of the unit 3-sphere: n/(1+|x|^2) for x in Q^3.
std::vector<std::pair<Gauss, Gauss>> unit_quaternion_points(Draw& draw, int count) {
  std::vector<std::pair<Gauss, Gauss>> out{{Gauss(Rational(3, 5), Rational(4, 5)), Gauss(0)}};
  while (int(out.size()) < count) {
    Rational x1 = draw.rational(), x2 = draw.rational(), x3 = draw.rational();
    Rational nrm = x1 * x1 + x2 * x2 + x3 * x3, den = 1 + nrm;
    Gauss a(Rational(2 * x1 / den), Rational(2 * x2 / den));
    Gauss b(Rational(2 * x3 / den), Rational((nrm - 1) / den));
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace

bool ExampleReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ExampleCheck& c) { return c.diagnostic || c.pass(); });
}

ExampleReport verify_example_conditions(const std::string& family, int samples, int q, std::uint64_t seed,
                                        Convention c) {
  if (samples < 1) throw Error(ErrorCode::invalid_parameter, "sample count must be positive");
  if (q < 0 || q > kMaxGenerators) throw Error(ErrorCode::invalid_parameter, "q out of range");
  FamilyPlan plan = plan_family(family);
  if (plan.n > 0 && q < 1) throw Error(ErrorCode::invalid_parameter, "odd parameters need q >= 1");
  auto g = LieSuperalgebra::build(plan.algebra);
  std::mt19937_64 rng(seed);
  Draw draw(rng);

  ExampleReport rep;
  rep.family = plan.family;
  rep.algebra = g.name();
  rep.convention = c;
  rep.q = q;
  rep.samples = samples;
  rep.seed = seed;
  const auto conds = conditions_for(plan);
  for (const auto& cd : conds) rep.conditions.push_back(cd.name);

  ExampleCheck product = named_check("big_cell_product"), display = named_check("sigma_display");
  ExampleCheck printed = named_check("sigma_display_as_printed"), agree = named_check("sigma_matrix_agrees");
  // The displays are written for the literal sign rule.
  display.diagnostic = c == Convention::graded && plan.n > 0;
  printed.diagnostic = true;

  std::vector<SuperMatrix> big_cells;
  for (int k = 0; k < samples; ++k) {
    BigCell b = draw_big_cell(g, plan, q, draw);
    SuperMatrix x = evaluate(g, b.word);
    SuperMatrix sx = evaluate(g, sigma_word(g, b.word, c));
    record(product, x == display_g(plan, b), {{"sample", k}, {"word", to_json(b.word)}});
    record(display, sx == display_sigma(plan, b), {{"sample", k}, {"word", to_json(b.word)}});
    if (plan.shape == FamilyPlan::Shape::slm1) record(printed, sx == display_sigma(plan, b, true), {{"sample", k}});
    SuperMatrix via_matrix = sigma_matrix(g, x, c);
    record(agree, via_matrix == sx, {{"sample", k}, {"word", to_json(b.word)}});
    big_cells.push_back(std::move(x));
  }
  rep.checks.push_back(product);
  rep.checks.push_back(display);
  if (printed.total) rep.checks.push_back(printed);
  rep.checks.push_back(agree);

  ExampleCheck sampler = named_check("fixed_point_sampler"), on_fixed = named_check("conditions_on_fixed");
  ExampleCheck member_fixed = named_check("membership_on_fixed");
  // How many fixed samples carry odd entries; the literal fixed locus is thin.
  ExampleCheck odd_fixed = named_check("fixed_with_odd_part");
  odd_fixed.diagnostic = true;
  // Per-condition breakdown of conditions_on_fixed.
  std::vector<ExampleCheck> each;
  for (const auto& cd : conds) {
    each.push_back(named_check("condition " + cd.name));
    each.back().diagnostic = true;
  }
  std::vector<SuperMatrix> fixed;
  for (int k = 0; k < samples; ++k) {
    auto x = sample_fixed_point(g, c, q, rng);
    record(sampler, x.has_value(), {{"sample", k}});
    if (!x) continue;
    std::string bad = first_failing(conds, *x);
    record(on_fixed, bad.empty(), {{"sample", k}, {"condition", bad}, {"matrix", to_json(*x)}});
    for (std::size_t i = 0; i < conds.size(); ++i) record(each[i], conds[i].holds(*x), {{"sample", k}});
    record(member_fixed, k_membership(g, *x, c), {{"sample", k}});
    if (plan.n > 0) record(odd_fixed, !x->beta().is_zero() || !x->gamma().is_zero(), {{"sample", k}});
    fixed.push_back(std::move(*x));
  }
  rep.checks.push_back(sampler);
  rep.checks.push_back(on_fixed);
  rep.checks.insert(rep.checks.end(), each.begin(), each.end());
  rep.checks.push_back(member_fixed);
  if (odd_fixed.total) rep.checks.push_back(odd_fixed);

  // Both directions over fixed points, perturbed fixed points and raw big cells.
  ExampleCheck iff = named_check("conditions_iff_membership");
  std::vector<SuperMatrix> pool = fixed;
  for (const auto& x : fixed) {
    SuperMatrix bump = big_cells[pool.size() % big_cells.size()];
    pool.push_back(x * bump);
  }
  pool.insert(pool.end(), big_cells.begin(), big_cells.end());
  for (std::size_t k = 0; k < pool.size(); ++k) {
    bool cond = first_failing(conds, pool[k]).empty();
    bool mem = k_membership(g, pool[k], c);
    record(iff, cond == mem, {{"pool_index", k}, {"conditions", cond}, {"membership", mem}});
  }
  rep.checks.push_back(iff);

  if (plan.shape == FamilyPlan::Shape::sl2) {
    ExampleCheck su2 = named_check("su2_rational_points");
    for (const auto& [a, b] : unit_quaternion_points(draw, samples)) {
      SuperMatrix x = scalar22(Grassmann(q, a), Grassmann(q, b), Grassmann(q, -b.conj()), Grassmann(q, a.conj()), 2, 0);
      bool ok = first_failing(conds, x).empty() && k_membership(g, x, c);
      record(su2, ok, {{"a", a.to_string()}, {"b", b.to_string()}});
    }
    rep.checks.push_back(su2);
  }
  if (plan.shape == FamilyPlan::Shape::sl11) {
    ExampleCheck unit = named_check("beta_zero_unitary");
    for (const auto& [a, b] : unit_quaternion_points(draw, samples)) {
      (void)b;
      if (a.is_zero()) continue;
      // a / conj(a) is a rational unit when |a| != 1.
      Gauss u = a.norm() == 1 ? a : a / a.conj();
      SuperMatrix x = scalar22(Grassmann(q, u), Grassmann(q), Grassmann(q), Grassmann(q, u), 1, 1);
      bool ok = first_failing(conds, x).empty() && k_membership(g, x, c);
      record(unit, ok, {{"a", u.to_string()}});
    }
    rep.checks.push_back(unit);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const Letter& l) {
  nlohmann::json j{{"kind", kind_name(l.kind)}};
  if (l.kind == LetterKind::torus) {
    j["index"] = l.index;
    j["t"] = to_json(l.t);
    return j;
  }
  j["root"] = rational_vector_json(l.root);
  if (l.kind == LetterKind::x_even || l.kind == LetterKind::x_mixed) j["t"] = to_json(l.t);
  if (l.kind == LetterKind::x_odd || l.kind == LetterKind::x_mixed) j["theta"] = to_json(l.theta);
  return j;
}

nlohmann::json to_json(const GeneratorWord& w) {
  nlohmann::json letters = nlohmann::json::array();
  for (const auto& l : w.letters) letters.push_back(to_json(l));
  return {{"algebra", w.algebra}, {"q", w.q}, {"letters", letters}};
}

GeneratorWord word_from_json(const LieSuperalgebra& g, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("q") || !j["q"].is_number_integer() || !j.contains("letters") ||
      !j["letters"].is_array())
    throw Error(ErrorCode::parse_error, "word needs integer 'q' and array 'letters'");
  GeneratorWord w;
  w.q = j["q"].get<int>();
  if (w.q < 0 || w.q > kMaxGenerators) throw Error(ErrorCode::parse_error, "q out of range");
  w.algebra = g.name();
  if (j.contains("algebra")) {
    if (!j["algebra"].is_string()) throw Error(ErrorCode::parse_error, "'algebra' must be a string");
    if (parse_family(j["algebra"].get<std::string>()).label != g.name())
      throw Error(ErrorCode::invalid_parameter, "word is over " + j["algebra"].get<std::string>() + ", not " + g.name());
  }
  const Grassmann zero(w.q);
  auto param = [&](const nlohmann::json& l, const char* key) {
    return l.contains(key) ? grassmann_from_json(l[key], w.q) : zero;
  };
  for (const auto& l : j["letters"]) {
    if (!l.is_object() || !l.contains("kind") || !l["kind"].is_string())
      throw Error(ErrorCode::parse_error, "letter needs a string 'kind'");
    const std::string kind = l["kind"];
    if (kind == "torus") {
      if (!l.contains("index") || !l["index"].is_number_unsigned() || !l.contains("t"))
        throw Error(ErrorCode::parse_error, "torus letter needs 'index' and 't'");
      w.letters.push_back(make_torus(g, l["index"].get<std::size_t>(), param(l, "t")));
      continue;
    }
    if (!l.contains("root")) throw Error(ErrorCode::parse_error, "letter needs 'root'");
    auto root = rational_vector_from_json(l["root"]);
    if (kind == "x_even") {
      w.letters.push_back(make_even(g, root, param(l, "t")));
    } else if (kind == "x_odd") {
      w.letters.push_back(make_odd(g, root, param(l, "theta")));
    } else if (kind == "x_mixed") {
      w.letters.push_back(make_mixed(g, root, param(l, "t"), param(l, "theta")));
    } else {
      throw Error(ErrorCode::parse_error, "unknown letter kind '" + kind + "'");
    }
  }
  return w;
}

nlohmann::json to_json(const ExampleReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json e{{"name", c.name},   {"total", c.total},           {"failures", c.failures},
                     {"pass", c.pass()}, {"diagnostic", c.diagnostic}};
    if (c.failures) e["first_failure"] = c.first_failure;
    checks.push_back(std::move(e));
  }
  return {{"family", r.family},
          {"algebra", r.algebra},
          {"convention", to_string(r.convention)},
          {"q", r.q},
          {"samples", r.samples},
          {"seed", r.seed},
          {"conditions", r.conditions},
          {"pass", r.pass()},
          {"checks", checks}};
}

}  // namespace superlie
