#include "superlie/superalgebra.hpp"

#include "superlie/errors.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <map>
#include <numeric>
#include <regex>

namespace superlie {

// ---------------------------------------------------------------------------
// Family parsing

namespace {

std::string model_label(FamilyKind kind, int m, int n) {
  auto pair = [&](const char* f) { return std::string(f) + "(" + std::to_string(m) + "|" + std::to_string(n) + ")"; };
  switch (kind) {
    case FamilyKind::gl: return pair("gl");
    case FamilyKind::sl: return pair("sl");
    case FamilyKind::psl: return pair("psl");
    case FamilyKind::osp: return pair("osp");
    case FamilyKind::periplectic: return "p(" + std::to_string(m) + ")";
    case FamilyKind::strange: return "q(" + std::to_string(m) + ")";
    case FamilyKind::P: return "P(" + std::to_string(m) + ")";
    case FamilyKind::Q: return "Q(" + std::to_string(m) + ")";
  }
  return {};
}

[[noreturn]] void bad_rank(const std::string& text, const std::string& why) {
  throw Error(ErrorCode::invalid_parameter, "invalid rank in '" + text + "': " + why);
}

}  // namespace

FamilySpec parse_family(std::string_view raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);

  static const std::regex exceptional(R"(^(F\(4\)|G\(3\)|D\(2,1;.*\)|F4|G3)$)");
  static const std::regex graded(R"(^(gl|sl|psl|osp)\((\d+)\|(\d+)\)$)");
  static const std::regex classical(R"(^(gl|sl)\((\d+)\)$)");
  static const std::regex matrix_strange(R"(^(p|q)\((\d+)\)$)");
  static const std::regex two_index(R"(^([ABD])\((\d+),(\d+)\)$)");
  static const std::regex one_index(R"(^([CPQ])\((\d+)\)$)");

  std::smatch mt;
  FamilySpec s;
  s.input = text;
  if (std::regex_match(text, exceptional))
    throw Error(ErrorCode::unsupported_family, "exceptional family '" + text + "' is not supported");
  if (std::regex_match(text, mt, graded)) {
    s.m = std::stoi(mt[2]);
    s.n = std::stoi(mt[3]);
    std::string f = mt[1];
    if (f == "gl") {
      s.kind = FamilyKind::gl;
      if (s.m + s.n < 1) bad_rank(text, "m + n must be positive");
    } else if (f == "sl") {
      s.kind = FamilyKind::sl;
      if (s.m + s.n < 2) bad_rank(text, "m + n must be at least 2");
    } else if (f == "psl") {
      s.kind = FamilyKind::psl;
      if (s.m != s.n || s.m < 2) bad_rank(text, "psl(n|n) needs n >= 2");
    } else {
      s.kind = FamilyKind::osp;
      if (s.n % 2) bad_rank(text, "odd dimension of osp must be even");
      if (s.m + s.n < 2) bad_rank(text, "dimension too small");
    }
  } else if (std::regex_match(text, mt, classical)) {
    s.kind = mt[1] == "gl" ? FamilyKind::gl : FamilyKind::sl;
    s.m = std::stoi(mt[2]);
    if (s.m < (s.kind == FamilyKind::gl ? 1 : 2)) bad_rank(text, "size too small");
  } else if (std::regex_match(text, mt, matrix_strange)) {
    s.kind = mt[1] == "p" ? FamilyKind::periplectic : FamilyKind::strange;
    s.m = std::stoi(mt[2]);
    if (s.m < 1) bad_rank(text, "n must be positive");
  } else if (std::regex_match(text, mt, two_index)) {
    int a = std::stoi(mt[2]), b = std::stoi(mt[3]);
    char f = mt[1].str()[0];
    if (f == 'A') {
      if (a == b) {
        if (a < 1) bad_rank(text, "A(n,n) needs n >= 1");
        s.kind = FamilyKind::psl;
      } else {
        s.kind = FamilyKind::sl;
      }
      s.m = a + 1;
      s.n = b + 1;
    } else if (f == 'B') {
      if (b < 1) bad_rank(text, "B(m,n) needs n >= 1");
      s.kind = FamilyKind::osp;
      s.m = 2 * a + 1;
      s.n = 2 * b;
    } else {
      if (a < 2 || b < 1) bad_rank(text, "D(m,n) needs m >= 2, n >= 1");
      s.kind = FamilyKind::osp;
      s.m = 2 * a;
      s.n = 2 * b;
    }
  } else if (std::regex_match(text, mt, one_index)) {
    int a = std::stoi(mt[2]);
    char f = mt[1].str()[0];
    if (f == 'C') {
      if (a < 2) bad_rank(text, "C(n) needs n >= 2");
      s.kind = FamilyKind::osp;
      s.m = 2;
      s.n = 2 * a - 2;
    } else {
      if (a < 1) bad_rank(text, "rank must be positive");
      s.kind = f == 'P' ? FamilyKind::P : FamilyKind::Q;
      s.m = a;
    }
  } else {
    throw Error(ErrorCode::parse_error, "unrecognized algebra '" + text + "'");
  }
  s.label = model_label(s.kind, s.m, s.n);
  return s;
}

// ---------------------------------------------------------------------------
// Structure constants

Gauss StructureConstants::coeff(std::size_t i, std::size_t j, std::size_t k) const {
  for (const auto& [idx, c] : at(i, j))
    if (idx == k) return c;
  return Gauss();
}

Vector StructureConstants::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim || y.size() != dim)
    throw Error(ErrorCode::dimension_mismatch, "coefficient vector does not match the algebra dimension");
  Vector out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (y[j].is_zero()) continue;
      Gauss f = x[i] * y[j];
      for (const auto& [k, c] : at(i, j)) out[k] += f * c;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Construction helpers

namespace {

using Flat = std::vector<Gauss>;

GaussMatrix unit_matrix(std::size_t size, std::size_t r, std::size_t c, Gauss v = Gauss(1)) {
  GaussMatrix e(size, size);
  e(r, c) = std::move(v);
  return e;
}

Flat flatten(const GaussMatrix& m) { return m.data(); }

GaussMatrix unflatten(const Flat& v, std::size_t size) {
  GaussMatrix m(size, size);
  for (std::size_t k = 0; k < v.size(); ++k) m(k / size, k % size) = v[k];
  return m;
}

GaussMatrix supercommutator(const GaussMatrix& x, int px, const GaussMatrix& y, int py) {
  GaussMatrix xy = x * y, yx = y * x;
  return (px && py) ? xy + yx : xy - yx;
}

/// Reduced row echelon basis of the span of the given matrices.
std::vector<GaussMatrix> span_basis(const std::vector<GaussMatrix>& ms, std::size_t size) {
  if (ms.empty()) return {};
  GaussMatrix rows(0, 0);
  for (const auto& m : ms) rows.append_row(flatten(m));
  auto pivots = rref_in_place(rows);
  std::vector<GaussMatrix> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) out.push_back(unflatten(rows.row(r), size));
  return out;
}

/// Combinations of `basis` whose entries vanish at every position in `zero_at`.
std::vector<GaussMatrix> restrict_support(const std::vector<GaussMatrix>& basis, std::size_t size,
                                          const std::vector<std::size_t>& zero_at) {
  if (basis.empty()) return {};
  if (zero_at.empty()) return basis;
  GaussMatrix sys(zero_at.size(), basis.size());
  for (std::size_t r = 0; r < zero_at.size(); ++r)
    for (std::size_t k = 0; k < basis.size(); ++k) sys(r, k) = basis[k].data()[zero_at[r]];
  std::vector<GaussMatrix> out;
  for (const auto& v : nullspace(sys)) {
    GaussMatrix m(size, size);
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (!v[k].is_zero()) {
        GaussMatrix t = basis[k];
        for (std::size_t r = 0; r < size; ++r)
          for (std::size_t c = 0; c < size; ++c) t(r, c) *= v[k];
        m = m + t;
      }
    out.push_back(std::move(m));
  }
  return span_basis(out, size);
}

std::size_t span_rank(const std::vector<GaussMatrix>& ms) {
  if (ms.empty()) return 0;
  GaussMatrix rows(0, 0);
  for (const auto& m : ms) rows.append_row(flatten(m));
  return rank(rows);
}

std::vector<Rational> real_vector(const Vector& v, const char* what) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& z : v) {
    if (!z.is_real()) throw Error(ErrorCode::model_inconsistency, std::string(what) + " is not real");
    out.push_back(z.re());
  }
  return out;
}

bool positive_coords(const std::vector<Rational>& c) {
  for (const auto& x : c)
    if (sgn(x) != 0) return sgn(x) > 0;
  return false;
}

std::vector<Rational> negated(std::vector<Rational> c) {
  for (auto& x : c) x = -x;
  return c;
}

std::string coords_label(const std::vector<Rational>& c) {
  std::string s = "(";
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) s += ",";
    s += c[k].get_str();
  }
  return s + ")";
}

}  // namespace

struct LieSuperalgebra::Parts {
  int m = 0, n = 0;
  std::vector<GaussMatrix> even, odd;  // spanning sets
  std::vector<GaussMatrix> cartan;     // preset Cartan basis (A-series)
  struct PresetRoot {
    GaussMatrix vector;
    std::vector<Rational> coords;
    int parity;
  };
  std::vector<PresetRoot> roots;
  bool preset = false;
};

namespace {

using Parts = LieSuperalgebra::Parts;

Parts gl_parts(int m, int n, bool traceless) {
  Parts p;
  p.m = m;
  p.n = n;
  p.preset = true;
  const std::size_t size = static_cast<std::size_t>(m + n);
  auto par = [&](std::size_t a) { return static_cast<int>(a) < m ? 0 : 1; };
  if (!traceless) {
    for (std::size_t a = 0; a < size; ++a) p.cartan.push_back(unit_matrix(size, a, a));
  } else {
    // Simple coroots: E_jj - E_{j+1,j+1}, or E_jj + E_{j+1,j+1} across the odd simple root.
    for (std::size_t j = 0; j + 1 < size; ++j) {
      GaussMatrix h = unit_matrix(size, j, j);
      h(j + 1, j + 1) = par(j) == par(j + 1) ? Gauss(-1) : Gauss(1);
      p.cartan.push_back(std::move(h));
    }
  }
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      if (a == b) continue;
      std::vector<Rational> coords(size);
      coords[a] += 1;
      coords[b] -= 1;
      p.roots.push_back({unit_matrix(size, a, b), coords, (par(a) + par(b)) % 2});
    }
  return p;
}

// Even supersymmetric form: [1] on a leftover even index, then hyperbolic
// pairs; antisymmetric pairs on the odd part.
GaussMatrix osp_form(int m, int n) {
  const std::size_t size = static_cast<std::size_t>(m + n);
  GaussMatrix j(size, size);
  std::size_t k = 0;
  if (m % 2) {
    j(0, 0) = 1;
    k = 1;
  }
  for (; k + 1 < static_cast<std::size_t>(m); k += 2) {
    j(k, k + 1) = 1;
    j(k + 1, k) = 1;
  }
  for (std::size_t a = static_cast<std::size_t>(m); a + 1 < size; a += 2) {
    j(a, a + 1) = 1;
    j(a + 1, a) = -1;
  }
  return j;
}

Parts osp_parts(int m, int n) {
  Parts p;
  p.m = m;
  p.n = n;
  const std::size_t size = static_cast<std::size_t>(m + n);
  GaussMatrix form = osp_form(m, n);
  auto par = [&](std::size_t a) { return static_cast<int>(a) < m ? 0 : 1; };
  // B(Xu, v) + (-1)^{|X||u|} B(u, Xv) = 0 for basis vectors u, v.
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<std::size_t> slots;  // flattened positions allowed for this parity
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = 0; b < size; ++b)
        if ((par(a) + par(b)) % 2 == parity) slots.push_back(a * size + b);
    GaussMatrix sys(0, 0);
    for (std::size_t u = 0; u < size; ++u)
      for (std::size_t v = 0; v < size; ++v) {
        Flat row(slots.size());
        int sign = (parity * par(u)) % 2 ? -1 : 1;
        for (std::size_t s = 0; s < slots.size(); ++s) {
          std::size_t a = slots[s] / size, b = slots[s] % size;
          // X e_b = sum_a X_ab e_a
          if (b == u) row[s] += form(a, v);
          if (b == v) row[s] += Gauss(sign) * form(u, a);
        }
        sys.append_row(row);
      }
    for (const auto& sol : nullspace(sys)) {
      GaussMatrix x(size, size);
      for (std::size_t s = 0; s < slots.size(); ++s) x(slots[s] / size, slots[s] % size) = sol[s];
      (parity ? p.odd : p.even).push_back(std::move(x));
    }
  }
  return p;
}

// {(a, b; c, -a^t) : b = b^t, c = -c^t} inside gl(n|n).
Parts periplectic_parts(int n, bool traceless) {
  Parts p;
  p.m = p.n = n;
  const std::size_t size = static_cast<std::size_t>(2 * n), un = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) {
      GaussMatrix x = unit_matrix(size, i, j);
      x(un + j, un + i) = -1;
      p.even.push_back(std::move(x));
    }
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = i; j < un; ++j) {
      GaussMatrix b = unit_matrix(size, i, un + j);
      b(j, un + i) = 1;
      p.odd.push_back(std::move(b));
      if (j > i) {
        GaussMatrix c = unit_matrix(size, un + i, j);
        c(un + j, i) = -1;
        p.odd.push_back(std::move(c));
      }
    }
  if (traceless) {
    // str = 2 tr(a): keep the even combinations with tr(a) = 0.
    std::vector<GaussMatrix> kept;
    GaussMatrix sys(1, p.even.size());
    for (std::size_t k = 0; k < p.even.size(); ++k) {
      Gauss t;
      for (std::size_t i = 0; i < un; ++i) t += p.even[k](i, i);
      sys(0, k) = t;
    }
    for (const auto& v : nullspace(sys)) {
      GaussMatrix x(size, size);
      for (std::size_t k = 0; k < p.even.size(); ++k)
        if (!v[k].is_zero())
          for (std::size_t r = 0; r < size; ++r)
            for (std::size_t c = 0; c < size; ++c) x(r, c) += v[k] * p.even[k](r, c);
      kept.push_back(std::move(x));
    }
    p.even = std::move(kept);
  }
  return p;
}

// {(A, B; B, A)} inside gl(n|n); `traceless_odd` imposes tr B = 0.
Parts strange_parts(int n, bool traceless_odd) {
  Parts p;
  p.m = p.n = n;
  const std::size_t size = static_cast<std::size_t>(2 * n), un = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) {
      GaussMatrix a = unit_matrix(size, i, j);
      a(un + i, un + j) = 1;
      p.even.push_back(std::move(a));
      if (traceless_odd && i == j) continue;
      GaussMatrix b = unit_matrix(size, i, un + j);
      b(un + i, j) = 1;
      p.odd.push_back(std::move(b));
    }
  if (traceless_odd)
    for (std::size_t i = 0; i + 1 < un; ++i) {
      GaussMatrix b = unit_matrix(size, i, un + i);
      b(un + i, i) = 1;
      b(i + 1, un + i + 1) = -1;
      b(un + i + 1, i + 1) = -1;
      p.odd.push_back(std::move(b));
    }
  return p;
}

}  // namespace

std::size_t LieSuperalgebra::dim_even() const {
  return static_cast<std::size_t>(std::count(parity_.begin(), parity_.end(), 0));
}

Vector LieSuperalgebra::unit(std::size_t k) const {
  Vector v(dim());
  v.at(k) = Gauss(1);
  return v;
}

GaussMatrix LieSuperalgebra::element(const Vector& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::dimension_mismatch, "coefficient vector does not match the algebra dimension");
  const std::size_t size = static_cast<std::size_t>(rep_m_ + rep_n_);
  GaussMatrix m(size, size);
  for (std::size_t k = 0; k < dim(); ++k) {
    if (x[k].is_zero()) continue;
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < size; ++c)
        if (!basis_[k](r, c).is_zero()) m(r, c) += x[k] * basis_[k](r, c);
  }
  return m;
}

std::optional<Vector> LieSuperalgebra::expand(const GaussMatrix& m) const {
  const std::size_t size = static_cast<std::size_t>(rep_m_ + rep_n_);
  if (m.rows() != size || m.cols() != size) throw Error(ErrorCode::dimension_mismatch, "matrix size does not match the representation");
  Vector picked(pivot_positions_.size());
  for (std::size_t k = 0; k < picked.size(); ++k) picked[k] = m.data()[pivot_positions_[k]];
  Vector coeffs(dim());
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c)
      if (!pivot_inverse_(r, c).is_zero() && !picked[c].is_zero()) coeffs[r] += pivot_inverse_(r, c) * picked[c];
  if (!(element(coeffs) == m)) return std::nullopt;
  return coeffs;
}

std::optional<std::size_t> LieSuperalgebra::find_root(const std::vector<Rational>& coords) const {
  for (std::size_t k = 0; k < roots_.size(); ++k)
    if (roots_[k].coords == coords) return k;
  return std::nullopt;
}

std::string LieSuperalgebra::status() const {
  const int m = spec_.m, n = spec_.n;
  switch (spec_.kind) {
    case FamilyKind::gl:
      return (m == 1 && n == 1) ? "example-only" : "non-simple";
    case FamilyKind::sl:
      if (m == 1 && n == 1) return "example-only";
      return (m == n) ? "non-simple" : "classical";
    case FamilyKind::periplectic:
    case FamilyKind::strange:
      return "non-simple";
    case FamilyKind::P:
    case FamilyKind::Q:
      return m >= 2 ? "classical" : "non-simple";
    case FamilyKind::psl:
    case FamilyKind::osp:
      return "classical";
  }
  return "classical";
}

void LieSuperalgebra::finalize() {
  const std::size_t size = static_cast<std::size_t>(rep_m_ + rep_n_), d = basis_.size();
  // Independent entry positions: pivot columns of the transposed coordinate matrix.
  GaussMatrix coords_t(d, size * size);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t p = 0; p < size * size; ++p) coords_t(k, p) = basis_[k].data()[p];
  auto pivots = rref_in_place(coords_t);
  if (pivots.size() != d) throw Error(ErrorCode::model_inconsistency, "basis matrices are linearly dependent");
  pivot_positions_ = pivots;
  GaussMatrix square(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) square(r, k) = basis_[k].data()[pivots[r]];
  auto inv = inverse(square);
  if (!inv) throw Error(ErrorCode::model_inconsistency, "singular pivot block");
  pivot_inverse_ = *inv;

  table_.dim = d;
  table_.parity = parity_;
  table_.entries.assign(d * d, {});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      GaussMatrix br = supercommutator(basis_[i], parity_[i], basis_[j], parity_[j]);
      if (br.is_zero()) continue;
      auto c = expand(br);
      if (!c)
        throw Error(ErrorCode::model_inconsistency,
                    "bracket [" + labels_[i] + ", " + labels_[j] + "] leaves the span");
      for (std::size_t k = 0; k < d; ++k)
        if (!(*c)[k].is_zero()) table_.at(i, j).emplace_back(k, (*c)[k]);
    }
}

namespace {

struct Assembled {
  std::vector<GaussMatrix> basis;
  std::vector<int> parity;
  std::vector<std::string> labels;
  std::size_t rank = 0;
  std::vector<Root> roots;
  std::vector<std::size_t> zero_weight;
};

Assembled assemble(Parts parts) {
  const std::size_t size = static_cast<std::size_t>(parts.m + parts.n);
  Assembled out;
  std::vector<GaussMatrix> cartan;
  struct Pending {
    GaussMatrix vector;
    std::vector<Rational> coords, values;
    int parity;
  };
  std::vector<Pending> pending;
  std::vector<std::pair<GaussMatrix, int>> extras;

  auto weights_of = [&](const std::vector<GaussMatrix>& h, std::size_t a, std::size_t b) {
    Vector w(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) w[j] = h[j](a, a) - h[j](b, b);
    return w;
  };

  if (parts.preset) {
    cartan = parts.cartan;
    for (auto& r : parts.roots) {
      std::size_t a = 0, b = 0;
      for (std::size_t p = 0; p < size * size; ++p)
        if (!r.vector.data()[p].is_zero()) {
          a = p / size;
          b = p % size;
        }
      pending.push_back({r.vector, r.coords, real_vector(weights_of(cartan, a, b), "root value"), r.parity});
    }
  } else {
    std::vector<GaussMatrix> even = span_basis(parts.even, size), odd = span_basis(parts.odd, size);
    std::vector<std::size_t> offdiag, all_positions(size * size);
    std::iota(all_positions.begin(), all_positions.end(), 0);
    for (std::size_t p = 0; p < size * size; ++p)
      if (p / size != p % size) offdiag.push_back(p);
    cartan = restrict_support(even, size, offdiag);

    std::map<Vector, std::vector<std::size_t>> classes;
    for (std::size_t p = 0; p < size * size; ++p) classes[weights_of(cartan, p / size, p % size)].push_back(p);
    std::size_t found = cartan.size();
    for (const auto& [w, positions] : classes) {
      std::vector<std::size_t> outside;
      std::set_difference(all_positions.begin(), all_positions.end(), positions.begin(), positions.end(),
                          std::back_inserter(outside));
      bool zero = std::all_of(w.begin(), w.end(), [](const Gauss& z) { return z.is_zero(); });
      for (int parity = 0; parity < 2; ++parity) {
        auto space = restrict_support(parity ? odd : even, size, outside);
        if (zero) {
          std::vector<GaussMatrix> acc = parity ? std::vector<GaussMatrix>{} : cartan;
          for (auto& v : space) {
            auto trial = acc;
            trial.push_back(v);
            if (span_rank(trial) > acc.size()) {
              acc = std::move(trial);
              extras.emplace_back(v, parity);
              ++found;
            }
          }
        } else {
          auto values = real_vector(w, "root value");
          for (auto& v : space) {
            pending.push_back({v, values, values, parity});
            ++found;
          }
        }
      }
    }
    if (found != even.size() + odd.size())
      throw Error(ErrorCode::model_inconsistency, "Cartan action is not diagonalizable on the model");
  }

  std::stable_sort(pending.begin(), pending.end(), [](const Pending& x, const Pending& y) {
    if (x.coords != y.coords) return x.coords > y.coords;
    if (x.parity != y.parity) return x.parity < y.parity;
    return x.vector.data() < y.vector.data();
  });

  out.rank = cartan.size();
  for (std::size_t j = 0; j < cartan.size(); ++j) {
    out.basis.push_back(cartan[j]);
    out.parity.push_back(0);
    out.labels.push_back("H" + std::to_string(j + 1));
  }
  std::map<std::vector<Rational>, int> multiplicity;
  for (auto& p : pending) {
    Root r;
    r.coords = p.coords;
    r.values = p.values;
    r.parity = p.parity;
    r.vector_index = out.basis.size();
    r.positive = positive_coords(p.coords);
    int mult = ++multiplicity[p.coords];
    out.basis.push_back(p.vector);
    out.parity.push_back(p.parity);
    out.labels.push_back("X" + coords_label(p.coords) + (mult > 1 ? "#" + std::to_string(mult) : ""));
    out.roots.push_back(std::move(r));
  }
  std::stable_sort(extras.begin(), extras.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
  for (std::size_t k = 0; k < extras.size(); ++k) {
    out.zero_weight.push_back(out.basis.size());
    out.basis.push_back(extras[k].first);
    out.parity.push_back(extras[k].second);
    out.labels.push_back("Z" + std::to_string(k + 1));
  }

  // Partners: the k-th root with coordinates -alpha pairs with the k-th root at alpha.
  for (std::size_t k = 0; k < out.roots.size(); ++k) {
    auto target = negated(out.roots[k].coords);
    std::size_t rank_here = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (out.roots[j].coords == out.roots[k].coords) ++rank_here;
    std::size_t seen = 0;
    bool ok = false;
    for (std::size_t j = 0; j < out.roots.size(); ++j)
      if (out.roots[j].coords == target && seen++ == rank_here) {
        out.roots[k].negative = j;
        ok = true;
        break;
      }
    out.roots[k].has_negative = ok;
  }
  return out;
}

}  // namespace

LieSuperalgebra LieSuperalgebra::build(const FamilySpec& spec) {
  LieSuperalgebra g;
  g.spec_ = spec;
  Parts parts;
  switch (spec.kind) {
    case FamilyKind::gl: parts = gl_parts(spec.m, spec.n, false); break;
    case FamilyKind::sl: parts = gl_parts(spec.m, spec.n, true); break;
    case FamilyKind::osp: parts = osp_parts(spec.m, spec.n); break;
    case FamilyKind::periplectic: parts = periplectic_parts(spec.m, false); break;
    case FamilyKind::P: parts = periplectic_parts(spec.m + 1, true); break;
    case FamilyKind::strange: parts = strange_parts(spec.m, false); break;
    case FamilyKind::psl:
    case FamilyKind::Q: {
      // Adjoint action of the quotient by the identity matrix.
      LieSuperalgebra parent;
      if (spec.kind == FamilyKind::psl) {
        parent = build(FamilySpec{FamilyKind::sl, spec.m, spec.n, spec.input, model_label(FamilyKind::sl, spec.m, spec.n)});
      } else {
        Parts sq = strange_parts(spec.m + 1, true);
        parent.spec_ = FamilySpec{FamilyKind::strange, spec.m + 1, 0, spec.input, "sq(" + std::to_string(spec.m + 1) + ")"};
        auto a = assemble(std::move(sq));
        parent.rep_m_ = parent.rep_n_ = spec.m + 1;
        parent.basis_ = std::move(a.basis);
        parent.parity_ = std::move(a.parity);
        parent.labels_ = std::move(a.labels);
        parent.rank_ = a.rank;
        parent.roots_ = std::move(a.roots);
        parent.zero_weight_ = std::move(a.zero_weight);
        parent.finalize();
      }
      const std::size_t psize = static_cast<std::size_t>(parent.rep_m_ + parent.rep_n_);
      auto center = parent.expand(GaussMatrix::identity(psize));
      if (!center) throw Error(ErrorCode::model_inconsistency, "identity is not in the parent algebra");
      std::size_t drop = parent.rank_;
      for (std::size_t j = 0; j < parent.rank_; ++j)
        if (!(*center)[j].is_zero()) drop = j;
      if (drop == parent.rank_) throw Error(ErrorCode::model_inconsistency, "identity is not toral");
      std::vector<std::size_t> kept;
      for (int par = 0; par < 2; ++par)
        for (std::size_t k = 0; k < parent.dim(); ++k)
          if (k != drop && parent.parity_[k] == par) kept.push_back(k);
      auto project = [&](Vector v) {
        Gauss f = v[drop] / (*center)[drop];
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= f * (*center)[k];
        return v;
      };
      const std::size_t qd = kept.size();
      parts.m = static_cast<int>(std::count_if(kept.begin(), kept.end(), [&](std::size_t k) { return parent.parity_[k] == 0; }));
      parts.n = static_cast<int>(qd) - parts.m;
      for (std::size_t u : kept) {
        GaussMatrix ad(qd, qd);
        for (std::size_t c = 0; c < qd; ++c) {
          Vector br = project(parent.bracket(parent.unit(u), parent.unit(kept[c])));
          for (std::size_t r = 0; r < qd; ++r) ad(r, c) = br[kept[r]];
        }
        (parent.parity_[u] ? parts.odd : parts.even).push_back(std::move(ad));
      }
      break;
    }
  }
  g.rep_m_ = parts.m;
  g.rep_n_ = parts.n;
  auto a = assemble(std::move(parts));
  g.basis_ = std::move(a.basis);
  g.parity_ = std::move(a.parity);
  g.labels_ = std::move(a.labels);
  g.rank_ = a.rank;
  g.roots_ = std::move(a.roots);
  g.zero_weight_ = std::move(a.zero_weight);

  // Dual normalization of the negative partners outside the A-series: tr(X_alpha X_{-alpha}) = 1.
  if (!g.a_series()) {
    for (const auto& r : g.roots_) {
      if (!r.positive || !r.has_negative) continue;
      GaussMatrix& neg = g.basis_[g.roots_[r.negative].vector_index];
      GaussMatrix prod = g.basis_[r.vector_index] * neg;
      Gauss tr;
      for (std::size_t k = 0; k < prod.rows(); ++k) tr += prod(k, k);
      if (tr.is_zero()) continue;
      Gauss f = tr.inverse();
      for (std::size_t row = 0; row < neg.rows(); ++row)
        for (std::size_t col = 0; col < neg.cols(); ++col) neg(row, col) *= f;
    }
  }
  g.finalize();
  return g;
}

// ---------------------------------------------------------------------------
// Checks

JacobiReport super_jacobi_check(const StructureConstants& t) {
  JacobiReport rep;
  const std::size_t d = t.dim;
  auto unit = [&](std::size_t k) {
    Vector v(d);
    v[k] = Gauss(1);
    return v;
  };
  auto column = [&](std::size_t i, std::size_t j) {
    Vector v(d);
    for (const auto& [k, c] : t.at(i, j)) v[k] += c;
    return v;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Vector a = column(i, j), b = column(j, i);
      bool sym = t.parity[i] && t.parity[j];
      for (std::size_t k = 0; k < d; ++k) {
        Gauss s = sym ? a[k] - b[k] : a[k] + b[k];
        if (!s.is_zero()) {
          rep.pass = false;
          rep.failure = "antisymmetry";
          rep.indices = {i, j};
          Vector viol(d);
          for (std::size_t l = 0; l < d; ++l) viol[l] = sym ? a[l] - b[l] : a[l] + b[l];
          rep.violation = std::move(viol);
          return rep;
        }
      }
    }
  // With graded antisymmetry the Jacobiator is graded-antisymmetric in its
  // arguments, so non-decreasing triples suffice.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      for (std::size_t k = j; k < d; ++k) {
        const int pi = t.parity[i], pj = t.parity[j], pk = t.parity[k];
        Vector total(d);
        auto add = [&](int sign_exp, std::size_t x, std::size_t y, std::size_t z) {
          Vector inner = column(y, z);
          Vector outer = t.bracket(unit(x), inner);
          for (std::size_t l = 0; l < d; ++l)
            if (!outer[l].is_zero()) total[l] += (sign_exp % 2) ? -outer[l] : outer[l];
        };
        add(pi * pk, i, j, k);
        add(pj * pi, j, k, i);
        add(pk * pj, k, i, j);
        if (std::any_of(total.begin(), total.end(), [](const Gauss& z) { return !z.is_zero(); })) {
          rep.pass = false;
          rep.failure = "jacobi";
          rep.indices = {i, j, k};
          rep.violation = std::move(total);
          return rep;
        }
      }
  return rep;
}

ChevalleyData chevalley_basis(const LieSuperalgebra& g) {
  if (!g.a_series())
    throw Error(ErrorCode::unsupported_family,
                "integral Chevalley normalization is only implemented for gl/sl models, not " + g.name());
  ChevalleyData data;
  for (std::size_t j = 0; j < g.rank(); ++j) data.h_basis.push_back(j);
  data.integral_coroots = true;
  for (const auto& r : g.roots()) {
    data.root_vectors.push_back(r.vector_index);
    Vector h = g.bracket(g.unit(r.vector_index), g.unit(g.roots()[r.negative].vector_index));
    std::vector<Rational> coeffs(g.rank());
    for (std::size_t k = 0; k < g.dim(); ++k) {
      if (h[k].is_zero()) continue;
      if (k >= g.rank() || !h[k].is_real())
        throw Error(ErrorCode::model_inconsistency, "coroot leaves the Cartan subalgebra");
      coeffs[k] = h[k].re();
      if (coeffs[k].get_den() != 1) data.integral_coroots = false;
    }
    data.coroot_map.push_back(std::move(coeffs));
  }
  data.integral_structure_constants = true;
  for (const auto& e : g.table().entries)
    for (const auto& [k, c] : e)
      if (!c.is_real() || c.re().get_den() != 1) data.integral_structure_constants = false;
  return data;
}

AssumptionReport check_assumption(const LieSuperalgebra& g) {
  AssumptionReport rep;
  rep.status = g.status();
  rep.representation_exclusion = g.spec().kind == FamilyKind::strange || g.spec().kind == FamilyKind::Q;
  for (std::size_t k = 0; k < g.roots().size(); ++k) {
    const Root& r = g.roots()[k];
    if (!r.parity) continue;
    Vector x = g.unit(r.vector_index);
    Vector sq = g.bracket(x, x);
    if (std::any_of(sq.begin(), sq.end(), [](const Gauss& z) { return !z.is_zero(); })) {
      rep.holds = false;
      rep.witnesses.push_back({k, std::move(sq)});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json vector_json(const Vector& v) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& z : v) j.push_back(z.to_string());
  return j;
}

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::parse_error, "coefficient vector must be an array");
  Vector v;
  for (const auto& e : j) {
    if (e.is_number_integer()) v.emplace_back(e.get<long>());
    else if (e.is_string()) v.push_back(Gauss::parse(e.get<std::string>()));
    else throw Error(ErrorCode::parse_error, "coefficient must be a string or integer");
  }
  return v;
}

nlohmann::json rational_vector_json(const std::vector<Rational>& v) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : v) {
    if (x.get_den() == 1 && x.get_num().fits_slong_p()) j.push_back(x.get_num().get_si());
    else j.push_back(x.get_str());
  }
  return j;
}

std::vector<Rational> rational_vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::parse_error, "root coordinates must be an array");
  std::vector<Rational> out;
  for (const auto& e : j) {
    Gauss z = e.is_number_integer() ? Gauss(e.get<long>())
              : e.is_string()       ? Gauss::parse(e.get<std::string>())
                                    : throw Error(ErrorCode::parse_error, "bad root coordinate");
    if (!z.is_real()) throw Error(ErrorCode::parse_error, "root coordinates must be real");
    out.push_back(z.re());
  }
  return out;
}

namespace {

nlohmann::json sparse_json(const LieSuperalgebra& g, const Vector& v) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) j[g.label(k)] = v[k].to_string();
  return j;
}

}  // namespace

nlohmann::json describe_json(const LieSuperalgebra& g) {
  std::size_t even_roots = 0, odd_roots = 0;
  for (const auto& r : g.roots()) (r.parity ? odd_roots : even_roots)++;
  nlohmann::json basis = nlohmann::json::array();
  for (std::size_t k = 0; k < g.dim(); ++k)
    basis.push_back({{"label", g.label(k)}, {"parity", g.parity(k) ? "odd" : "even"}});
  return {{"family", g.spec().input},
          {"model", g.name()},
          {"dim_even", g.dim_even()},
          {"dim_odd", g.dim_odd()},
          {"rank", g.rank()},
          {"representation", {{"m", g.rep_m()}, {"n", g.rep_n()}, {"adjoint", g.adjoint_model()}}},
          {"status", g.status()},
          {"roots", {{"even", even_roots}, {"odd", odd_roots}}},
          {"zero_weight_extra", g.zero_weight().size()},
          {"basis", basis}};
}

nlohmann::json roots_json(const LieSuperalgebra& g) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : g.roots())
    list.push_back({{"coords", rational_vector_json(r.coords)},
                    {"values", rational_vector_json(r.values)},
                    {"parity", r.parity ? "odd" : "even"},
                    {"positive", r.positive},
                    {"vector", g.label(r.vector_index)},
                    {"vector_index", r.vector_index},
                    {"negative", r.has_negative ? nlohmann::json(g.label(g.roots()[r.negative].vector_index))
                                                : nlohmann::json(nullptr)}});
  return {{"family", g.spec().input}, {"model", g.name()}, {"rank", g.rank()}, {"roots", list}};
}

nlohmann::json structure_constants_json(const LieSuperalgebra& g) {
  nlohmann::json basis = nlohmann::json::array(), consts = nlohmann::json::array();
  for (std::size_t k = 0; k < g.dim(); ++k)
    basis.push_back({{"label", g.label(k)}, {"parity", g.parity(k) ? "odd" : "even"}});
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j)
      for (const auto& [k, c] : g.table().at(i, j))
        consts.push_back({{"i", i}, {"j", j}, {"k", k}, {"c", c.to_string()}});
  return {{"family", g.spec().input}, {"model", g.name()}, {"dim", g.dim()}, {"basis", basis}, {"constants", consts}};
}

nlohmann::json chevalley_json(const LieSuperalgebra& g, const ChevalleyData& data) {
  nlohmann::json h = nlohmann::json::array(), roots = nlohmann::json::array();
  for (auto k : data.h_basis) h.push_back(g.label(k));
  for (std::size_t k = 0; k < g.roots().size(); ++k) {
    const Root& r = g.roots()[k];
    roots.push_back({{"root", rational_vector_json(r.coords)},
                     {"parity", r.parity ? "odd" : "even"},
                     {"x", g.label(r.vector_index)},
                     {"x_neg", g.label(g.roots()[r.negative].vector_index)},
                     {"coroot", rational_vector_json(data.coroot_map[k])}});
  }
  auto sc = structure_constants_json(g);
  return {{"family", g.spec().input},
          {"model", g.name()},
          {"h_basis", h},
          {"roots", roots},
          {"integral_structure_constants", data.integral_structure_constants},
          {"integral_coroots", data.integral_coroots},
          {"constants", sc["constants"]}};
}

nlohmann::json assumption_json(const LieSuperalgebra& g, const AssumptionReport& rep) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& wit : rep.witnesses) {
    const Root& r = g.roots()[wit.root];
    w.push_back({{"root", rational_vector_json(r.coords)},
                 {"vector", g.label(r.vector_index)},
                 {"square", sparse_json(g, wit.value)}});
  }
  return {{"family", g.spec().input},
          {"model", g.name()},
          {"holds", rep.holds},
          {"witnesses", w},
          {"status", rep.status},
          {"exclusion", {{"square_zero_test", !rep.holds}, {"representation_argument", rep.representation_exclusion}}}};
}

nlohmann::json jacobi_json(const JacobiReport& rep) {
  nlohmann::json j = {{"pass", rep.pass}};
  if (!rep.pass) {
    j["failure"] = rep.failure;
    j["indices"] = rep.indices;
    j["violation"] = vector_json(rep.violation);
  }
  return j;
}

}  // namespace superlie
