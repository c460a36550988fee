#include "superlie/realform.hpp"

#include "superlie/errors.hpp"

#include <algorithm>

namespace superlie {

std::string to_string(Convention c) { return c == Convention::graded ? "graded" : "literal"; }

Convention convention_from_string(const std::string& text) {
  if (text == "graded") return Convention::graded;
  if (text == "literal") return Convention::literal;
  throw Error(ErrorCode::parse_error, "unknown convention '" + text + "' (expected graded or literal)");
}

Vector SemilinearMap::apply(const Vector& x) const {
  if (x.size() != matrix.cols()) throw Error(ErrorCode::dimension_mismatch, "vector does not match the map");
  Vector out(matrix.rows());
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    if (x[c].is_zero()) continue;
    Gauss xc = x[c].conj();
    for (std::size_t r = 0; r < matrix.rows(); ++r)
      if (!matrix(r, c).is_zero()) out[r] += matrix(r, c) * xc;
  }
  return out;
}

SemilinearMap involution_s(const LieSuperalgebra& g, Convention c) {
  if (!g.zero_weight().empty())
    throw Error(ErrorCode::unsupported_family, "involution s is undefined on zero-weight elements outside the Cartan subalgebra of " + g.name());
  SemilinearMap s;
  s.convention = c;
  s.matrix = GaussMatrix(g.dim(), g.dim());
  for (std::size_t j = 0; j < g.rank(); ++j) s.matrix(j, j) = Gauss(-1);
  for (const auto& r : g.roots()) {
    if (!r.has_negative)
      throw Error(ErrorCode::unsupported_family, "root system of " + g.name() + " is not symmetric under negation");
    std::size_t from = r.vector_index, to = g.roots()[r.negative].vector_index;
    s.matrix(to, from) = (r.parity && c == Convention::graded) ? -Gauss::i() : Gauss(-1);
  }
  return s;
}

bool is_involution(const SemilinearMap& s) {
  GaussMatrix conj_m = s.matrix;
  for (std::size_t r = 0; r < conj_m.rows(); ++r)
    for (std::size_t c = 0; c < conj_m.cols(); ++c) conj_m(r, c) = conj_m(r, c).conj();
  return s.matrix * conj_m == GaussMatrix::identity(s.matrix.rows());
}

MapCheck semiautomorphism_check(const LieSuperalgebra& g, const SemilinearMap& s) {
  MapCheck out;
  std::vector<Vector> images;
  for (std::size_t k = 0; k < g.dim(); ++k) images.push_back(s.apply(g.unit(k)));
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i; j < g.dim(); ++j) {
      Vector lhs = s.apply(g.bracket(g.unit(i), g.unit(j)));
      Vector rhs = g.bracket(images[i], images[j]);
      if (lhs != rhs) {
        out.pass = false;
        out.i = i;
        out.j = j;
        out.lhs = std::move(lhs);
        out.rhs = std::move(rhs);
        return out;
      }
    }
  return out;
}

namespace {

Vector scaled(Vector v, const Gauss& f) {
  for (auto& z : v) z *= f;
  return v;
}

Vector sum(Vector a, const Vector& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Gauss& z) { return z.is_zero(); });
}

RatMatrix realified_columns(const std::vector<Vector>& vs, std::size_t d) {
  RatMatrix m(2 * d, vs.size());
  for (std::size_t c = 0; c < vs.size(); ++c) {
    auto r = realify(vs[c]);
    for (std::size_t k = 0; k < 2 * d; ++k) m(k, c) = r[k];
  }
  return m;
}

}  // namespace

RealFormBasis compact_form_basis(const LieSuperalgebra& g, const SemilinearMap& s, bool force) {
  auto assumption = check_assumption(g);
  if (!assumption.holds && !force)
    throw Error(ErrorCode::obstruction, "hypothesis [X_a, X_a] = 0 fails for " + g.name() + "; no compact form is built",
                assumption_json(g, assumption));
  RealFormBasis k;
  k.convention = s.convention;
  const Gauss i = Gauss::i();
  for (std::size_t j = 0; j < g.rank(); ++j) {
    // iH + s(iH) = 2iH; keep iH.
    k.vectors.push_back(scaled(g.unit(j), i));
    k.labels.push_back("i" + g.label(j));
    k.parity.push_back(0);
  }
  for (const auto& r : g.roots()) {
    if (!r.positive) continue;
    Vector v = g.unit(r.vector_index);
    const std::string& a = g.label(r.vector_index);
    const std::string& b = g.label(g.roots()[r.negative].vector_index);
    Vector w1 = sum(v, s.apply(v)), w2 = sum(scaled(v, i), s.apply(scaled(v, i)));
    bool twisted = r.parity && s.convention == Convention::graded;
    for (auto* w : {&w1, &w2})
      if (is_zero_vector(*w)) throw Error(ErrorCode::model_inconsistency, "degenerate compact-form vector at " + a);
    k.vectors.push_back(std::move(w1));
    k.labels.push_back(twisted ? a + "-i" + b : a + "-" + b);
    k.parity.push_back(r.parity);
    k.vectors.push_back(std::move(w2));
    k.labels.push_back(twisted ? "i" + a + "-" + b : "i(" + a + "+" + b + ")");
    k.parity.push_back(r.parity);
  }
  return k;
}

ClosureReport closure_check(const LieSuperalgebra& g, const RealFormBasis& k) {
  ClosureReport out;
  const std::size_t d = g.dim(), n = k.vectors.size();
  if (n == 0) return out;
  // Complex coordinates are available when k is a complex basis of g.
  std::optional<GaussMatrix> inv;
  if (n == d) {
    GaussMatrix kc(d, d);
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r) kc(r, c) = k.vectors[c][r];
    inv = inverse(kc);
  }
  RatMatrix real_span = realified_columns(k.vectors, d);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Vector br = g.bracket(k.vectors[a], k.vectors[b]);
      if (is_zero_vector(br)) continue;
      if (inv) {
        Vector coords(d), imag(d);
        bool real = true;
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t c = 0; c < d; ++c)
            if (!(*inv)(r, c).is_zero() && !br[c].is_zero()) coords[r] += (*inv)(r, c) * br[c];
          imag[r] = Gauss(coords[r].im());
          if (!coords[r].is_real()) real = false;
        }
        if (!real) {
          out = {false, a, b, std::move(br), std::move(imag), "bracket has non-real coordinates in k"};
          return out;
        }
      } else if (!solve(real_span, realify(br))) {
        out = {false, a, b, std::move(br), {}, "bracket leaves the real span of k"};
        return out;
      }
    }
  return out;
}

FixedPointReport fixed_points_equal_k(const LieSuperalgebra& g, const SemilinearMap& s, const RealFormBasis& k) {
  FixedPointReport out;
  const std::size_t d = g.dim();
  out.dim_complex = d;
  // Realified s: x = a + ib -> (Mr a + Mi b) + i (Mi a - Mr b).
  RatMatrix sys(2 * d, 2 * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const Gauss& z = s.matrix(r, c);
      sys(r, c) = z.re();
      sys(r, d + c) = z.im();
      sys(d + r, c) = z.im();
      sys(d + r, d + c) = -z.re();
    }
  for (std::size_t k2 = 0; k2 < 2 * d; ++k2) sys(k2, k2) -= 1;
  auto fixed = nullspace(sys);
  out.dim_fixed = fixed.size();
  RatMatrix kspan = realified_columns(k.vectors, d);
  out.dim_k = rank(kspan.transposed());
  out.pointwise_fixed = std::all_of(k.vectors.begin(), k.vectors.end(), [&](const Vector& v) { return s.apply(v) == v; });
  RatMatrix both = kspan.transposed();
  for (auto& v : fixed) both.append_row(v);
  std::size_t joint = rank(both);
  out.match = out.pointwise_fixed && joint == out.dim_fixed && joint == out.dim_k && out.dim_k == d;
  return out;
}

FormReport k0_trace_form(const LieSuperalgebra& g, const RealFormBasis& k) {
  FormReport out;
  const std::size_t d = g.dim();
  std::vector<GaussMatrix> ads;
  for (std::size_t a = 0; a < k.vectors.size(); ++a) {
    if (k.parity[a]) continue;
    GaussMatrix ad(d, d);
    for (std::size_t c = 0; c < d; ++c) {
      Vector col = g.bracket(k.vectors[a], g.unit(c));
      for (std::size_t r = 0; r < d; ++r) ad(r, c) = col[r];
    }
    ads.push_back(std::move(ad));
  }
  out.gram = RatMatrix(ads.size(), ads.size());
  for (std::size_t a = 0; a < ads.size(); ++a)
    for (std::size_t b = 0; b < ads.size(); ++b) {
      GaussMatrix p = ads[a] * ads[b];
      Gauss tr;
      for (std::size_t r = 0; r < d; ++r) tr += p(r, r);
      if (!tr.is_real()) out.real = false;
      out.gram(a, b) = tr.re();
    }
  out.negative_definite = out.real && !ads.empty() && is_negative_definite(out.gram);
  return out;
}

RealFormReport realform_report(const LieSuperalgebra& g, Convention c, bool force) {
  RealFormReport r;
  r.family = g.spec().input;
  r.convention = c;
  r.assumption = check_assumption(g);
  r.admissible = r.assumption.holds;
  SemilinearMap s = involution_s(g, c);
  r.involutive = is_involution(s);
  r.semiautomorphism = semiautomorphism_check(g, s);
  if (!r.admissible && !force) return r;
  r.k = compact_form_basis(g, s, true);
  r.built = true;
  r.k_dim = r.k.vectors.size();
  r.closure = closure_check(g, r.k);
  r.fixed = fixed_points_equal_k(g, s, r.k);
  r.k0_form = k0_trace_form(g, r.k);
  return r;
}

nlohmann::json to_json(const LieSuperalgebra& g, const RealFormBasis& k) {
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t a = 0; a < k.vectors.size(); ++a)
    list.push_back({{"label", k.labels[a]}, {"parity", k.parity[a] ? "odd" : "even"}, {"vector", vector_json(k.vectors[a])}});
  nlohmann::json basis = nlohmann::json::array();
  for (std::size_t j = 0; j < g.dim(); ++j) basis.push_back(g.label(j));
  return {{"family", g.spec().input}, {"convention", to_string(k.convention)}, {"algebra_basis", basis}, {"k", list}};
}

nlohmann::json to_json(const LieSuperalgebra& g, const RealFormReport& r) {
  nlohmann::json witnesses = assumption_json(g, r.assumption)["witnesses"];
  nlohmann::json j = {{"family", r.family},
                      {"model", g.name()},
                      {"convention", to_string(r.convention)},
                      {"admissible", r.admissible},
                      {"status", r.assumption.status},
                      {"obstruction_witnesses", witnesses},
                      {"s_involutive", r.involutive},
                      {"s_semiautomorphism", r.semiautomorphism.pass}};
  if (!r.semiautomorphism.pass)
    j["s_semiautomorphism_witness"] = {{"pair", {g.label(r.semiautomorphism.i), g.label(r.semiautomorphism.j)}},
                                       {"s_of_bracket", vector_json(r.semiautomorphism.lhs)},
                                       {"bracket_of_images", vector_json(r.semiautomorphism.rhs)}};
  if (!r.built) {
    j["k_dim"] = nullptr;
    j["closure"] = nullptr;
    j["fixed_point_match"] = nullptr;
    return j;
  }
  j["k_dim"] = r.k_dim;
  j["closure"] = r.closure.pass;
  if (!r.closure.pass)
    j["closure_witness"] = {{"pair", {r.k.labels[r.closure.a], r.k.labels[r.closure.b]}},
                            {"bracket", vector_json(r.closure.bracket)},
                            {"imaginary_part", vector_json(r.closure.imaginary)},
                            {"reason", r.closure.reason}};
  j["fixed_point_match"] = r.fixed.match;
  j["fixed_space_dim"] = r.fixed.dim_fixed;
  j["k0_trace_form_negative_definite"] = r.k0_form.negative_definite;
  return j;
}

}  // namespace superlie
