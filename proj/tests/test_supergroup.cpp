#include <doctest.h>

#include "superlie/errors.hpp"
#include "superlie/supergroup.hpp"
#include "support/random.hpp"

#include <algorithm>
#include <functional>

using namespace superlie;
using testgen::xi;

namespace {

/// Root coordinates e_r - e_c of the elementary matrix E_rc.
std::vector<Rational> rc(const LieSuperalgebra& g, int r, int c) {
  std::vector<Rational> v(g.rep_m() + g.rep_n());
  v[r] = 1;
  v[c] = -1;
  return v;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::parse_error;
}

Grassmann cst(int q, Gauss c) { return Grassmann(q, std::move(c)); }

SuperMatrix mat22(const Grassmann& a, const Grassmann& b, const Grassmann& c, const Grassmann& d, int m, int n) {
  SuperMatrix x(m, n, a.q());
  x(0, 0) = a;
  x(0, 1) = b;
  x(1, 0) = c;
  x(1, 1) = d;
  return x;
}

Letter random_letter(const LieSuperalgebra& g, testgen::Gen& gen, int q) {
  const auto& roots = g.roots();
  int pick = gen.uniform(0, int(roots.size() + g.rank()) - 1);
  if (pick >= int(roots.size())) return make_torus(g, pick - roots.size(), gen.invertible_even(q));
  const Root& r = roots[pick];
  return r.parity ? make_odd(g, r.coords, gen.grassmann(q, 1)) : make_even(g, r.coords, gen.grassmann(q, 0));
}

GeneratorWord random_word(const LieSuperalgebra& g, testgen::Gen& gen, int q, int max_len = 6) {
  GeneratorWord w{g.name(), q, {}};
  int len = gen.uniform(0, max_len);
  for (int k = 0; k < len; ++k) w.letters.push_back(random_letter(g, gen, q));
  return w;
}

GeneratorWord concat(GeneratorWord a, const GeneratorWord& b) {
  a.letters.insert(a.letters.end(), b.letters.begin(), b.letters.end());
  return a;
}

}  // namespace

TEST_CASE("letter validation") {
  auto g = LieSuperalgebra::build("sl(2|1)");
  const int q = 4;
  auto beta = rc(g, 0, 2);
  CHECK_NOTHROW(make_odd(g, beta, xi(q, 1) + xi(q, 2) * Gauss::i()));
  CHECK(code_of([&] { make_odd(g, beta, cst(q, 1) + xi(q, 1) * xi(q, 2)); }) == ErrorCode::parity_violation);
  CHECK(code_of([&] { make_torus(g, 0, xi(q, 1) * xi(q, 2)); }) == ErrorCode::not_invertible);
  CHECK(code_of([&] { make_torus(g, 5, cst(q, 2)); }) == ErrorCode::invalid_parameter);
  CHECK(code_of([&] { make_torus(g, 0, xi(q, 1)); }) == ErrorCode::parity_violation);
  CHECK(code_of([&] { make_even(g, beta, cst(q, 1)); }) == ErrorCode::parity_violation);
  CHECK(code_of([&] { make_odd(g, rc(g, 0, 1), xi(q, 1)); }) == ErrorCode::parity_violation);
  CHECK(code_of([&] { make_even(g, {1, 1, 0}, cst(q, 1)); }) == ErrorCode::invalid_parameter);
  // Square-zero root: no mixed letter.
  CHECK(code_of([&] { make_mixed(g, beta, cst(q, 1), xi(q, 1)); }) == ErrorCode::domain_error);
  auto o = LieSuperalgebra::build("osp(1|2)");
  auto odd = std::find_if(o.roots().begin(), o.roots().end(), [](const Root& r) { return r.parity == 1; });
  REQUIRE(odd != o.roots().end());
  CHECK_NOTHROW(make_mixed(o, odd->coords, xi(q, 1) * xi(q, 2), xi(q, 3)));
}

TEST_CASE("evaluate: big cell, empty word, additivity") {
  auto g = LieSuperalgebra::build("gl(1|1)");
  const int q = 4;
  Grassmann t = cst(q, 2) + xi(q, 1) * xi(q, 2), s = cst(q, Gauss(1, 1)) + xi(q, 3) * xi(q, 4);
  Grassmann th = xi(q, 1) + xi(q, 3) * Gauss(0, 2), et = xi(q, 2) - xi(q, 4);
  GeneratorWord w{g.name(), q,
                  {make_odd(g, rc(g, 1, 0), th), make_torus(g, 0, t), make_torus(g, 1, s), make_odd(g, rc(g, 0, 1), et)}};
  CHECK(evaluate(g, w) == mat22(t, t * et, t * th, th * t * et + s, 1, 1));

  CHECK(evaluate(g, GeneratorWord{g.name(), q, {}}) == SuperMatrix::identity(1, 1, q));

  // (I + theta X)(I + eta X) = I + (theta + eta) X since X^2 = 0.
  GeneratorWord two{g.name(), q, {make_odd(g, rc(g, 0, 1), th), make_odd(g, rc(g, 0, 1), et)}};
  CHECK(evaluate(g, two) == evaluate(g, make_odd(g, rc(g, 0, 1), th + et), q));
  SuperMatrix expect = SuperMatrix::identity(1, 1, q);
  expect(0, 1) = th + et;
  CHECK(evaluate(g, two) == expect);
}

TEST_CASE("evaluate: mixed letter against its series") {
  auto o = LieSuperalgebra::build("osp(1|2)");
  const int q = 4;
  auto odd = std::find_if(o.roots().begin(), o.roots().end(), [](const Root& r) { return r.parity == 1; });
  Grassmann t = xi(q, 1) * xi(q, 2) + cst(q, 3), th = xi(q, 3);
  SuperMatrix x = SuperMatrix::from_scalar(o.rep_m(), o.rep_n(), o.basis(odd->vector_index), q);
  SuperMatrix x2 = x * x;
  // exp(t X^2) summed by hand until the powers vanish.
  SuperMatrix series = SuperMatrix::identity(o.rep_m(), o.rep_n(), q), term = series;
  for (int k = 1; k < 8; ++k) {
    term = (t * term) * x2;
    term = Grassmann(q, Gauss(Rational(1, k))) * term;
    series = series + term;
  }
  SuperMatrix expect = (SuperMatrix::identity(o.rep_m(), o.rep_n(), q) + th * x) * series;
  CHECK(evaluate(o, make_mixed(o, odd->coords, t, th), q) == expect);
  CHECK(code_of([&] { sigma_letter(o, make_mixed(o, odd->coords, t, th), Convention::literal); }) ==
        ErrorCode::unsupported_family);
}

TEST_CASE("property: evaluate is a monoid morphism") {
  auto g = LieSuperalgebra::build("sl(2|1)");
  testgen::Gen gen(501);
  for (int trial = 0; trial < 100; ++trial) {
    auto w1 = random_word(g, gen, 4), w2 = random_word(g, gen, 4);
    CHECK(evaluate(g, concat(w1, w2)) == evaluate(g, w1) * evaluate(g, w2));
  }
}

TEST_CASE("sigma on words") {
  auto g = LieSuperalgebra::build("sl(2|1)");
  const int q = 4;
  GeneratorWord w{g.name(), q, {make_odd(g, rc(g, 0, 2), xi(q, 1) + xi(q, 2) * Gauss::i())}};
  auto lit = sigma_word(g, w, Convention::literal);
  REQUIRE(lit.letters.size() == 1);
  CHECK(lit.letters[0].root == rc(g, 2, 0));
  CHECK(lit.letters[0].theta == -xi(q, 1) + xi(q, 2) * Gauss::i());
  auto gr = sigma_word(g, w, Convention::graded);
  CHECK(gr.letters[0].theta == xi(q, 1) * Gauss(0, -1) - xi(q, 2));

  GeneratorWord empty{g.name(), q, {}};
  CHECK(sigma_word(g, empty) == empty);

  Grassmann t = cst(q, Gauss(2, 1)) + xi(q, 1) * xi(q, 3);
  auto tor = sigma_letter(g, make_torus(g, 1, t), Convention::literal);
  CHECK(tor.t * t.conj() == Grassmann::one(q));
  auto ev = sigma_letter(g, make_even(g, rc(g, 0, 1), t), Convention::graded);
  CHECK(ev.root == rc(g, 1, 0));
  CHECK(ev.t == -t.conj());
}

TEST_CASE("property: sigma is involutive on 1000 random words") {
  auto g = LieSuperalgebra::build("sl(2|1)");
  testgen::Gen gen(502);
  for (Convention c : {Convention::literal, Convention::graded}) {
    for (int trial = 0; trial < 1000; ++trial) {
      auto w = random_word(g, gen, 4);
      auto back = sigma_word(g, sigma_word(g, w, c), c);
      CHECK(back == w);
      CHECK(evaluate(g, back) == evaluate(g, w));
    }
  }
}

TEST_CASE("sigma respects relations") {
  auto g = LieSuperalgebra::build("sl(2|1)");
  const int q = 4;
  testgen::Gen gen(503);
  auto same_under = [&](const GeneratorWord& a, const GeneratorWord& b, Convention c) {
    return evaluate(g, sigma_word(g, a, c)) == evaluate(g, sigma_word(g, b, c));
  };
  for (int trial = 0; trial < 20; ++trial) {
    Grassmann s = gen.grassmann(q, 0), t = gen.grassmann(q, 0);
    Grassmann th = gen.grassmann(q, 1), et = gen.grassmann(q, 1);
    Grassmann h = gen.invertible_even(q);

    // One-parameter additivity, even and odd.
    GeneratorWord a1{g.name(), q, {make_even(g, rc(g, 0, 1), s), make_even(g, rc(g, 0, 1), t)}};
    GeneratorWord a2{g.name(), q, {make_even(g, rc(g, 0, 1), s + t)}};
    GeneratorWord b1{g.name(), q, {make_odd(g, rc(g, 2, 1), th), make_odd(g, rc(g, 2, 1), et)}};
    GeneratorWord b2{g.name(), q, {make_odd(g, rc(g, 2, 1), th + et)}};
    REQUIRE(evaluate(g, a1) == evaluate(g, a2));
    REQUIRE(evaluate(g, b1) == evaluate(g, b2));

    // Torus conjugation: h_j(t) x_beta(theta) h_j(t)^{-1} = x_beta(t^k theta), k = H_j(r) - H_j(c).
    const GaussMatrix& hj = g.basis(1);
    long k = (hj(0, 0) - hj(2, 2)).re().get_num().get_si();
    Grassmann scale = Grassmann::one(q);
    for (long e = 0; e < std::labs(k); ++e) scale *= k > 0 ? h : h.inverse();
    GeneratorWord c1{g.name(), q, {make_torus(g, 1, h), make_odd(g, rc(g, 0, 2), th), make_torus(g, 1, h.inverse())}};
    GeneratorWord c2{g.name(), q, {make_odd(g, rc(g, 0, 2), scale * th)}};
    REQUIRE(evaluate(g, c1) == evaluate(g, c2));

    // Odd commutator: (1 + theta E02)(1 + eta E21) = (1 + eta E21)(1 + theta E02)(1 + theta eta E01).
    GeneratorWord d1{g.name(), q, {make_odd(g, rc(g, 0, 2), th), make_odd(g, rc(g, 2, 1), et)}};
    GeneratorWord d2{g.name(), q,
                     {make_odd(g, rc(g, 2, 1), et), make_odd(g, rc(g, 0, 2), th), make_even(g, rc(g, 0, 1), th * et)}};
    REQUIRE(evaluate(g, d1) == evaluate(g, d2));

    // Even commutator in the sl(2) block with the odd root: E01 and E12 give E02.
    GeneratorWord e1{g.name(), q, {make_even(g, rc(g, 0, 1), s), make_odd(g, rc(g, 1, 2), th)}};
    GeneratorWord e2{g.name(), q,
                     {make_odd(g, rc(g, 1, 2), th), make_even(g, rc(g, 0, 1), s), make_odd(g, rc(g, 0, 2), s * th)}};
    REQUIRE(evaluate(g, e1) == evaluate(g, e2));

    CHECK(same_under(a1, a2, Convention::graded));
    CHECK(same_under(b1, b2, Convention::graded));
    CHECK(same_under(c1, c2, Convention::graded));
    CHECK(same_under(d1, d2, Convention::graded));
    CHECK(same_under(e1, e2, Convention::graded));
    // The literal rule breaks the odd-odd commutator whenever theta*eta != 0.
    CHECK(same_under(a1, a2, Convention::literal));
    CHECK(same_under(c1, c2, Convention::literal));
    CHECK(same_under(e1, e2, Convention::literal));
    if (!(th * et).is_zero()) CHECK_FALSE(same_under(d1, d2, Convention::literal));
  }
}

TEST_CASE("sigma_matrix on SL2 generators") {
  auto g = LieSuperalgebra::build("sl(2)");
  const int q = 2;
  Grassmann v = cst(q, Gauss(1, 2)) + xi(q, 1) * xi(q, 2), t = cst(q, 3) + xi(q, 1) * xi(q, 2) * Gauss::i();
  for (Convention c : {Convention::literal, Convention::graded}) {
    SuperMatrix low = evaluate(g, make_even(g, rc(g, 1, 0), v), q);
    CHECK(low == mat22(Grassmann::one(q), Grassmann(q), v, Grassmann::one(q), 2, 0));
    CHECK(sigma_matrix(g, low, c) == mat22(Grassmann::one(q), -v.conj(), Grassmann(q), Grassmann::one(q), 2, 0));
    SuperMatrix tor = evaluate(g, make_torus(g, 0, t), q);
    CHECK(tor == mat22(t, Grassmann(q), Grassmann(q), t.inverse(), 2, 0));
    CHECK(sigma_matrix(g, tor, c) == mat22(t.conj().inverse(), Grassmann(q), Grassmann(q), t.conj(), 2, 0));
    CHECK(sigma_matrix(g, SuperMatrix::identity(2, 0, q), c) == SuperMatrix::identity(2, 0, q));
  }
}

TEST_CASE("property: matrix and word sigma agree on generators, 500 draws") {
  auto g = LieSuperalgebra::build("sl(2|1)");
  testgen::Gen gen(504);
  for (Convention c : {Convention::literal, Convention::graded})
    for (int trial = 0; trial < 500; ++trial) {
      Letter l = random_letter(g, gen, 4);
      CHECK_NOTHROW(check_sigma_agreement(g, l, 4, c));
    }
}

TEST_CASE("graded matrix sigma is a homomorphism, literal is not") {
  auto g = LieSuperalgebra::build("sl(2|1)");
  testgen::Gen gen(505);
  bool literal_breaks = false;
  for (int trial = 0; trial < 30; ++trial) {
    SuperMatrix x = evaluate(g, random_word(g, gen, 4)), y = evaluate(g, random_word(g, gen, 4));
    CHECK(sigma_matrix(g, x * y, Convention::graded) ==
          sigma_matrix(g, x, Convention::graded) * sigma_matrix(g, y, Convention::graded));
    if (sigma_matrix(g, x * y, Convention::literal) !=
        sigma_matrix(g, x, Convention::literal) * sigma_matrix(g, y, Convention::literal))
      literal_breaks = true;
  }
  CHECK(literal_breaks);
  CHECK(code_of([&] { sigma_matrix(LieSuperalgebra::build("osp(1|2)"), SuperMatrix::identity(1, 2, 1)); }) ==
        ErrorCode::unsupported_family);
}

TEST_CASE("membership") {
  const int q = 4;
  auto sl2 = LieSuperalgebra::build("sl(2)");
  Gauss a(Rational(3, 5), Rational(4, 5));
  SuperMatrix su2 = mat22(cst(q, a), Grassmann(q), Grassmann(q), cst(q, a.conj()), 2, 0);
  for (Convention c : {Convention::literal, Convention::graded}) {
    CHECK(k_membership(sl2, SuperMatrix::identity(2, 0, q), c));
    CHECK(k_membership(sl2, su2, c));
  }
  // A body-2 torus parameter: sigma puts 1/2 in the corner, so not fixed.
  auto g = LieSuperalgebra::build("sl(1|1)");
  Grassmann t = cst(q, 2) + xi(q, 1) * xi(q, 2);
  GeneratorWord w{g.name(), q, {make_odd(g, rc(g, 1, 0), xi(q, 3)), make_torus(g, 0, t), make_odd(g, rc(g, 0, 1), xi(q, 4))}};
  SuperMatrix x = evaluate(g, w);
  CHECK(sigma_matrix(g, x)(0, 0).body() == Gauss(Rational(1, 2)));
  CHECK_FALSE(k_membership(g, x));
  CHECK_FALSE(k_membership(g, x, Convention::graded));

  SuperMatrix odd(1, 1, q);
  odd(0, 1) = cst(q, 1);
  odd(1, 0) = cst(q, 1);
  CHECK(code_of([&] { k_membership(g, odd); }) == ErrorCode::domain_error);
  SuperMatrix ber2 = SuperMatrix::identity(1, 1, q);
  ber2(0, 0) = cst(q, 2);
  CHECK(code_of([&] { k_membership(g, ber2); }) == ErrorCode::domain_error);
  auto gl = LieSuperalgebra::build("gl(1|1)");
  CHECK_FALSE(k_membership(gl, ber2));
}

TEST_CASE("fixed-point sampler") {
  std::mt19937_64 rng(7);
  for (const char* name : {"sl(2|1)", "gl(1|1)", "sl(1|1)", "sl(2)", "gl(2|1)"})
    for (Convention c : {Convention::literal, Convention::graded}) {
      CAPTURE(name);
      auto g = LieSuperalgebra::build(name);
      for (int k = 0; k < 3; ++k) {
        auto x = sample_fixed_point(g, c, 4, rng);
        REQUIRE(x.has_value());
        CHECK(sigma_matrix(g, *x, c) == *x);
        if (g.spec().kind == FamilyKind::sl) CHECK(sm_berezinian(*x) == Grassmann::one(4));
        if (g.rep_n() > 0) CHECK_FALSE((x->beta().is_zero() && x->gamma().is_zero()));
      }
    }
}

TEST_CASE("K(A) is closed under product and inverse") {
  std::mt19937_64 rng(8);
  for (const char* name : {"sl(2|1)", "gl(1|1)", "sl(1|1)"}) {
    CAPTURE(name);
    auto g = LieSuperalgebra::build(name);
    std::vector<SuperMatrix> fixed;
    for (int k = 0; k < 6; ++k) fixed.push_back(*sample_fixed_point(g, Convention::graded, 4, rng));
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      CHECK(k_membership(g, sm_inv(fixed[i]), Convention::graded));
      for (std::size_t j = 0; j < fixed.size(); ++j) CHECK(k_membership(g, fixed[i] * fixed[j], Convention::graded));
    }
  }
}

TEST_CASE("tangent vectors of k exponentiate into K(A)") {
  const int q = 4;
  for (const char* name : {"sl(2|1)", "gl(1|1)", "sl(1|1)"}) {
    CAPTURE(name);
    auto g = LieSuperalgebra::build(name);
    auto k = compact_form_basis(g, involution_s(g, Convention::graded));
    for (std::size_t a = 0; a < k.vectors.size(); ++a) {
      Grassmann tau = k.parity[a] ? xi(q, 1) : xi(q, 1) * xi(q, 2);
      SuperMatrix e = exp_element(g, k.vectors[a], tau);
      CHECK(sigma_matrix(g, e, Convention::graded) == e);
    }
    // A non-k direction is not fixed.
    SuperMatrix e = exp_element(g, g.unit(0), xi(q, 1) * xi(q, 2));
    CHECK(sigma_matrix(g, e, Convention::graded) != e);
  }
}

TEST_CASE("example suites") {
  auto gl = verify_example_conditions("GL(1|1)", 100, 4);
  CHECK(gl.pass());
  CHECK(gl.conditions.size() == 4);
  auto sl2 = verify_example_conditions("SL(2)", 50, 4);
  CHECK(sl2.pass());
  auto sl21 = verify_example_conditions("SL(2|1)", 50, 4);
  CHECK(sl21.pass());
  auto printed = std::find_if(sl21.checks.begin(), sl21.checks.end(),
                              [](const ExampleCheck& c) { return c.name == "sigma_display_as_printed"; });
  REQUIRE(printed != sl21.checks.end());
  CHECK(printed->diagnostic);
  CHECK(printed->failures == printed->total);

  auto j = to_json(verify_example_conditions("SL(1|1)", 20, 4));
  CHECK(j["conditions"][2] == "ā(a+βāβ̄)=1");
  CHECK(j["family"] == "SL(1|1)");
  CHECK(code_of([] { verify_example_conditions("osp(1|2)", 5, 4); }) == ErrorCode::unsupported_family);
}

TEST_CASE("SL(1|1) literal fixed points satisfy gamma = -conj(a)^{-2} conj(beta)") {
  // From sigma(g) = g on the big cell (t, t eta; t theta, theta t eta + t):
  // t eta = -conj(theta)/conj(t) and t theta = -conj(eta)/conj(t), hence
  // gamma = -conj(t)^{-2} conj(beta), which differs from -conj(beta) once beta != 0.
  auto g = LieSuperalgebra::build("sl(1|1)");
  std::mt19937_64 rng(9);
  int differs = 0;
  for (int k = 0; k < 20; ++k) {
    auto x = sample_fixed_point(g, Convention::literal, 4, rng);
    REQUIRE(x.has_value());
    Grassmann abar_inv = (*x)(0, 0).conj().inverse();
    CHECK((*x)(1, 0) == -(abar_inv * abar_inv * (*x)(0, 1).conj()));
    if ((*x)(1, 0) != -(*x)(0, 1).conj()) ++differs;
  }
  CHECK(differs > 0);
}

TEST_CASE("word json round trip") {
  auto g = LieSuperalgebra::build("sl(2|1)");
  testgen::Gen gen(506);
  for (int trial = 0; trial < 20; ++trial) {
    auto w = random_word(g, gen, 4);
    CHECK(word_from_json(g, nlohmann::json::parse(to_json(w).dump())) == w);
  }
  CHECK(code_of([&] { word_from_json(g, nlohmann::json{{"q", 2}}); }) == ErrorCode::parse_error);
  CHECK(code_of([&] {
          word_from_json(g, nlohmann::json::parse(R"({"q":2,"letters":[{"kind":"x_weird","root":[1,-1,0]}]})"));
        }) == ErrorCode::parse_error);
  CHECK(code_of([&] {
          word_from_json(g, nlohmann::json::parse(R"j({"algebra":"gl(1|1)","q":2,"letters":[]})j"));
        }) == ErrorCode::invalid_parameter);
}
