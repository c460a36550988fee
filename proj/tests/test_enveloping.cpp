#include <doctest.h>

#include "superlie/enveloping.hpp"
#include "superlie/errors.hpp"
#include "support/random.hpp"

#include <functional>

using namespace superlie;

namespace {

// Independent count: exponent vectors with even entries >= 0, odd entries in
// {0,1}, total degree <= d.
std::size_t brute_count(const LieSuperalgebra& g, int d) {
  std::size_t count = 0;
  std::vector<int> e(g.dim(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == g.dim()) {
      ++count;
      return;
    }
    int top = g.parity(k) ? std::min(1, left) : left;
    for (int x = 0; x <= top; ++x) rec(k + 1, left - x);
  };
  rec(0, d);
  return count;
}

// Every word of length <= d in the algebra letters.
std::vector<PbwWord> all_words(const LieSuperalgebra& g, int d) {
  std::vector<PbwWord> out{{}};
  std::vector<PbwWord> layer{{}};
  for (int len = 1; len <= d; ++len) {
    std::vector<PbwWord> next;
    for (const auto& w : layer)
      for (std::size_t k = 0; k < g.dim(); ++k) {
        PbwWord x = w;
        x.push_back(static_cast<std::uint16_t>(k));
        next.push_back(x);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

GaussMatrix rep_of_word(const LieSuperalgebra& g, const PbwWord& w) {
  const std::size_t n = g.element(g.unit(0)).rows();
  GaussMatrix out = GaussMatrix::identity(n);
  for (auto x : w) out = out * g.element(g.unit(x));
  return out;
}

// Matrix image of a U element through the defining representation.
GaussMatrix rep_of(const LieSuperalgebra& g, const TruncatedUEA& u, const Vector& v) {
  const std::size_t n = g.element(g.unit(0)).rows();
  GaussMatrix out(n, n);
  for (std::size_t k = 0; k < u.dim(); ++k) {
    if (v[k].is_zero()) continue;
    GaussMatrix m = rep_of_word(g, u.basis()[k]);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) out(r, c) += v[k] * m(r, c);
  }
  return out;
}

std::size_t rank_of_columns(const std::vector<std::vector<Rational>>& cols, std::size_t rows) {
  RatMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return rank(m);
}

}  // namespace

TEST_CASE("gl(1|1) truncations have the expected bases") {
  auto g = LieSuperalgebra::build("gl(1|1)");
  TruncatedUEA u0(g, 0);
  REQUIRE(u0.dim() == 1);
  CHECK(u0.basis()[0].empty());
  CHECK(u0.label(0) == "1");

  TruncatedUEA u1(g, 1);
  CHECK(u1.dim() == 5);
  for (std::size_t k = 0; k < g.dim(); ++k) {
    auto idx = u1.index(PbwWord{static_cast<std::uint16_t>(k)});
    REQUIRE(idx.has_value());
    CHECK(u1.label(*idx) == g.label(k));
  }

  TruncatedUEA u2(g, 2);
  CHECK(u2.dim() == brute_count(g, 2));
  CHECK(u2.dim() == pbw_dimension(g.dim_even(), g.dim_odd(), 2));
  CHECK(u2.dim() == 13);
}

TEST_CASE("PBW count agrees with brute-force straightening") {
  for (const char* name : {"gl(1|1)", "sl(1|1)", "sl(2|1)"}) {
    auto g = LieSuperalgebra::build(name);
    for (int d = 0; d <= 3; ++d) {
      if (std::string(name) == "sl(2|1)" && d == 3) continue;  // 12^3 words, covered by the count below
      INFO(name << " d=" << d);
      TruncatedUEA u(g, d);
      CHECK(u.dim() == brute_count(g, d));
      CHECK(u.dim() == pbw_dimension(g.dim_even(), g.dim_odd(), d));
      auto words = all_words(g, d);
      GaussMatrix cols(u.dim(), words.size());
      for (std::size_t c = 0; c < words.size(); ++c) {
        Vector v = u.straighten(words[c]);
        for (std::size_t r = 0; r < u.dim(); ++r) cols(r, c) = v[r];
      }
      // Straightened words span the truncation.
      CHECK(rank(cols) == u.dim());
    }
    TruncatedUEA u3(g, 3);
    CHECK(u3.dim() == brute_count(g, 3));
  }
}

TEST_CASE("straightening matches the defining representation") {
  for (const char* name : {"gl(1|1)", "sl(2|1)", "osp(1|2)"}) {
    auto g = LieSuperalgebra::build(name);
    TruncatedUEA u(g, 3);
    testgen::Gen gen(11);
    for (int trial = 0; trial < 150; ++trial) {
      PbwWord w;
      int len = gen.uniform(0, 3);
      for (int k = 0; k < len; ++k) w.push_back(static_cast<std::uint16_t>(gen.uniform(0, int(g.dim()) - 1)));
      INFO(name << " trial " << trial);
      CHECK(rep_of(g, u, u.straighten(w)) == rep_of_word(g, w));
    }
  }
}

TEST_CASE("multiplication is associative and respects the grading") {
  auto g = LieSuperalgebra::build("sl(2|1)");
  TruncatedUEA u(g, 3);
  testgen::Gen gen(5);
  auto small = [&] {
    Vector v(u.dim());
    for (int k = 0; k < 3; ++k) {
      std::size_t idx = std::size_t(gen.uniform(0, int(u.dim()) - 1));
      if (u.basis()[idx].size() <= 1) v[idx] = gen.gauss();
    }
    return v;
  };
  for (int trial = 0; trial < 30; ++trial) {
    Vector a = small(), b = small(), c = small();
    CHECK(u.multiply(u.multiply(a, b), c) == u.multiply(a, u.multiply(b, c)));
  }
  for (std::size_t x = 0; x < g.dim(); ++x)
    for (std::size_t y = 0; y < g.dim(); ++y) {
      // xy - (-1)^{|x||y|} yx = [x,y] in U.
      Vector xy = u.product({g.unit(x), g.unit(y)});
      Vector yx = u.product({g.unit(y), g.unit(x)});
      Gauss sign = (g.parity(x) && g.parity(y)) ? Gauss(-1) : Gauss(1);
      Vector lhs(u.dim());
      for (std::size_t k = 0; k < u.dim(); ++k) lhs[k] = xy[k] - sign * yx[k];
      Vector rhs = u.product({g.bracket(g.unit(x), g.unit(y))});
      CHECK(lhs == rhs);
    }
}

TEST_CASE("degree cap guards") {
  auto g = LieSuperalgebra::build("gl(1|1)");
  CHECK_NOTHROW(TruncatedUEA(g, kMaxUeaDegree));
  try {
    TruncatedUEA u(g, 5);
    FAIL("expected cap_exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::cap_exceeded);
  }
  CHECK_THROWS_AS(TruncatedUEA(g, -1), Error);
  TruncatedUEA u(g, 2);
  CHECK_THROWS_AS(u.straighten(PbwWord{static_cast<std::uint16_t>(g.dim())}), Error);
}

TEST_CASE("extended s restricts to s and is semilinear") {
  for (const char* name : {"gl(1|1)", "sl(2|1)"}) {
    auto g = LieSuperalgebra::build(name);
    auto s = involution_s(g, Convention::graded);
    TruncatedUEA u(g, 2);
    auto su = extend_involution(s, u);
    for (std::size_t k = 0; k < g.dim(); ++k) {
      Vector image = su.apply(u.unit(*u.index(PbwWord{static_cast<std::uint16_t>(k)})));
      Vector lie = s.apply(g.unit(k));
      Vector lifted(u.dim());
      for (std::size_t j = 0; j < g.dim(); ++j) lifted[*u.index(PbwWord{static_cast<std::uint16_t>(j)})] = lie[j];
      CHECK(image == lifted);
    }
    Vector i1(u.dim());
    i1[0] = Gauss(0, 1);
    Vector expect(u.dim());
    expect[0] = Gauss(0, -1);
    CHECK(su.apply(i1) == expect);
  }
}

TEST_CASE("extended s is an involutive algebra map") {
  auto g = LieSuperalgebra::build("sl(1|1)");
  auto s = involution_s(g, Convention::graded);
  TruncatedUEA u(g, 3);
  auto su = extend_involution(s, u);
  // Matrix square of the semilinear map: M conj(M) = I.
  GaussMatrix conj_m(u.dim(), u.dim());
  for (std::size_t r = 0; r < u.dim(); ++r)
    for (std::size_t c = 0; c < u.dim(); ++c) conj_m(r, c) = su.matrix(r, c).conj();
  CHECK(su.matrix * conj_m == GaussMatrix::identity(u.dim()));
  CHECK(is_algebra_map(su, u));

  auto g2 = LieSuperalgebra::build("sl(2|1)");
  TruncatedUEA u2(g2, 2);
  auto su2 = extend_involution(involution_s(g2, Convention::graded), u2);
  CHECK(is_involution(su2));
  CHECK(is_algebra_map(su2, u2));
}

TEST_CASE("literal odd rule does not extend to an algebra map") {
  auto g = LieSuperalgebra::build("gl(1|1)");
  TruncatedUEA u(g, 2);
  auto su = extend_involution(involution_s(g, Convention::literal), u);
  CHECK_FALSE(is_algebra_map(su, u));
  auto rep = invariants_dim_compare(g, Convention::literal, 2);
  CHECK_FALSE(rep.equal);
}

TEST_CASE("fixed space of s equals span U(k)") {
  struct Case {
    const char* name;
    int max_d;
  };
  for (auto [name, max_d] : {Case{"gl(1|1)", 3}, Case{"sl(1|1)", 3}, Case{"sl(2|1)", 2}}) {
    auto g = LieSuperalgebra::build(name);
    auto s = involution_s(g, Convention::graded);
    auto k = compact_form_basis(g, s);
    for (int d = 0; d <= max_d; ++d) {
      INFO(name << " d=" << d);
      auto rep = invariants_dim_compare(g, s, k, d);
      CHECK(rep.dim_complex == pbw_dimension(g.dim_even(), g.dim_odd(), d));
      CHECK(rep.dim_fixed == rep.dim_complex);
      CHECK(rep.dim_uk == rep.dim_fixed);
      CHECK(rep.equal);
      CHECK(rep.injective);
      CHECK(rep.surjective);
      CHECK(rep.involutive);
      CHECK(rep.projector_idempotent);
      CHECK(rep.projector_image_fixed);

      // Oracle: every k-monomial is fixed in complex arithmetic, and the
      // realified span of monomials plus averaged basis vectors has the same rank.
      TruncatedUEA u(g, d);
      auto su = extend_involution(s, u);
      std::vector<std::vector<Rational>> mono, joint;
      std::vector<std::size_t> cur;
      std::function<void(int)> rec = [&](int len) {
        if (int(cur.size()) == len) {
          std::vector<Vector> factors;
          for (auto a : cur) factors.push_back(k.vectors[a]);
          Vector m = u.product(factors);
          CHECK(su.apply(m) == m);
          mono.push_back(realify(m));
          return;
        }
        for (std::size_t a = cur.empty() ? 0 : cur.back(); a < k.vectors.size(); ++a) {
          if (!cur.empty() && cur.back() == a && k.parity[a]) continue;
          cur.push_back(a);
          rec(len);
          cur.pop_back();
        }
      };
      for (int len = 0; len <= d; ++len) rec(len);
      joint = mono;
      for (std::size_t b = 0; b < u.dim(); ++b)
        for (Gauss z : {Gauss(1), Gauss(0, 1)}) {
          Vector e(u.dim());
          e[b] = z;
          Vector se = su.apply(e);
          for (std::size_t j = 0; j < u.dim(); ++j) se[j] = (se[j] + e[j]) * Gauss(Rational(1, 2));
          CHECK(su.apply(se) == se);
          joint.push_back(realify(se));
        }
      std::size_t rn = 2 * u.dim();
      CHECK(rank_of_columns(mono, rn) == rep.dim_uk);
      CHECK(rank_of_columns(joint, rn) == rep.dim_uk);
    }
  }
}

TEST_CASE("degree zero and obstruction paths") {
  auto g = LieSuperalgebra::build("sl(2|1)");
  auto rep = invariants_dim_compare(g, Convention::graded, 0);
  CHECK(rep.dim_complex == 1);
  CHECK(rep.dim_fixed == 1);
  CHECK(rep.dim_uk == 1);
  CHECK(rep.equal);
  auto j = to_json(rep);
  for (const char* key : {"algebra", "degree", "dim_fixed", "dim_uk", "equal", "projector_idempotent"})
    CHECK(j.contains(key));

  auto osp = LieSuperalgebra::build("osp(1|2)");
  try {
    invariants_dim_compare(osp, Convention::graded, 1);
    FAIL("expected obstruction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::obstruction);
  }
  auto gl = LieSuperalgebra::build("gl(1|1)");
  try {
    invariants_dim_compare(gl, Convention::graded, 5);
    FAIL("expected cap_exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::cap_exceeded);
  }
}
