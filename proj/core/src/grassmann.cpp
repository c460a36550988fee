#include "superlie/grassmann.hpp"

#include "superlie/errors.hpp"

#include <algorithm>
#include <sstream>

namespace superlie {

namespace {

void check_q(int q) {
  if (q < 0 || q > kMaxGenerators)
    throw Error(ErrorCode::invalid_parameter,
                "generator count must lie in [0, 16], got " + std::to_string(q));
}

void require_same_q(const Grassmann& a, const Grassmann& b) {
  if (a.q() != b.q())
    throw Error(ErrorCode::dimension_mismatch,
                "Grassmann generator counts differ: " + std::to_string(a.q()) +
                    " vs " + std::to_string(b.q()));
}

// Sorts by mask, merges duplicates and drops zeros.
void normalize(std::vector<Grassmann::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t k = 0; k < terms.size();) {
    Monomial mask = terms[k].first;
    Gauss sum = std::move(terms[k].second);
    for (++k; k < terms.size() && terms[k].first == mask; ++k) sum += terms[k].second;
    if (!sum.is_zero()) terms[out++] = {mask, std::move(sum)};
  }
  terms.resize(out);
}

}  // namespace

int monomial_sign(Monomial a, Monomial b) {
  if (a & b) return 0;
  // Each generator j of b must move left past every generator of a above j.
  int inversions = 0;
  for (Monomial rest = b; rest; rest &= rest - 1) {
    int j = __builtin_ctz(rest);
    Monomial above = j >= 31 ? 0u : (a >> (j + 1));
    inversions += __builtin_popcount(above);
  }
  return (inversions & 1) ? -1 : 1;
}

Grassmann::Grassmann(int q) : q_(q) { check_q(q); }

Grassmann::Grassmann(int q, Gauss constant) : q_(q) {
  check_q(q);
  if (!constant.is_zero()) terms_.emplace_back(0, std::move(constant));
}

Grassmann Grassmann::generator(int q, int k) {
  if (k < 1 || k > q)
    throw Error(ErrorCode::invalid_parameter,
                "generator index " + std::to_string(k) + " outside 1.." + std::to_string(q));
  return monomial(q, Monomial{1} << (k - 1));
}

Grassmann Grassmann::monomial(int q, Monomial mask, Gauss coeff) {
  Grassmann g(q);
  if (q < 32 && (mask >> q) != 0)
    throw Error(ErrorCode::invalid_parameter, "monomial uses generators beyond q");
  if (!coeff.is_zero()) g.terms_.emplace_back(mask, std::move(coeff));
  return g;
}

Grassmann Grassmann::from_terms(int q, std::vector<Term> terms) {
  Grassmann g(q);
  for (const auto& [mask, c] : terms)
    if ((mask >> q) != 0)
      throw Error(ErrorCode::invalid_parameter, "monomial uses generators beyond q");
  normalize(terms);
  g.terms_ = std::move(terms);
  return g;
}

Gauss Grassmann::coeff(Monomial mask) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                             [](const Term& t, Monomial m) { return t.first < m; });
  if (it != terms_.end() && it->first == mask) return it->second;
  return Gauss();
}

Grassmann Grassmann::soul() const {
  Grassmann s(q_);
  for (const auto& t : terms_)
    if (t.first != 0) s.terms_.push_back(t);
  return s;
}

Grassmann Grassmann::degree_part(int k) const {
  Grassmann s(q_);
  for (const auto& t : terms_)
    if (monomial_degree(t.first) == k) s.terms_.push_back(t);
  return s;
}

int Grassmann::max_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, monomial_degree(t.first));
  return d;
}

int Grassmann::min_degree() const {
  int d = -1;
  for (const auto& t : terms_) {
    int k = monomial_degree(t.first);
    if (d < 0 || k < d) d = k;
  }
  return d;
}

Parity Grassmann::parity() const {
  bool even = false, odd = false;
  for (const auto& t : terms_) (monomial_degree(t.first) % 2 ? odd : even) = true;
  if (even && odd) return Parity::mixed;
  return odd ? Parity::odd : Parity::even;
}

bool Grassmann::is_even() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return monomial_degree(t.first) % 2 == 0; });
}

bool Grassmann::is_odd() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return monomial_degree(t.first) % 2 == 1; });
}

bool Grassmann::has_real_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.second.is_real(); });
}

Grassmann Grassmann::conj() const {
  Grassmann r(*this);
  for (auto& t : r.terms_) t.second = t.second.conj();
  return r;
}

Grassmann Grassmann::inverse() const {
  Gauss b = body();
  if (b.is_zero())
    throw Error(ErrorCode::not_invertible, "Grassmann element with zero body is not invertible",
                to_json(*this));
  Gauss binv = b.inverse();
  // a = b (1 + n) with n nilpotent: a^{-1} = b^{-1} sum_k (-n)^k.
  Grassmann minus_n = soul() * (-binv);
  Grassmann sum = one(q_);
  Grassmann power = one(q_);
  for (int k = 1; k <= q_; ++k) {
    power = power * minus_n;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * binv;
}

Grassmann Grassmann::operator-() const {
  Grassmann r(*this);
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Grassmann& Grassmann::operator+=(const Grassmann& o) {
  require_same_q(*this, o);
  if (o.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = o.terms_.begin(), be = o.terms_.end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == ae || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Gauss s = a->second + b->second;
      if (!s.is_zero()) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Grassmann& Grassmann::operator-=(const Grassmann& o) { return *this += -o; }

Grassmann& Grassmann::operator*=(const Gauss& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Grassmann operator*(const Grassmann& a, const Grassmann& b) {
  require_same_q(a, b);
  Grassmann r(a.q_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  std::vector<Grassmann::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      int s = monomial_sign(ma, mb);
      if (s == 0) continue;
      Gauss c = ca * cb;
      if (s < 0) c = -c;
      out.emplace_back(ma | mb, std::move(c));
    }
  }
  normalize(out);
  r.terms_ = std::move(out);
  return r;
}

std::string Grassmann::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mask, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (int k = 0; k < q_; ++k)
      if (mask & (Monomial{1} << k)) os << "*x" << (k + 1);
  }
  return os.str();
}

ParityBody parity_body(const Grassmann& a) { return {a.parity(), a.body(), a.soul()}; }

nlohmann::json to_json(const Grassmann& a) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [mask, c] : a.terms()) {
    std::string key = "[";
    bool first = true;
    for (int k = 0; k < a.q(); ++k) {
      if (!(mask & (Monomial{1} << k))) continue;
      if (!first) key += ",";
      key += std::to_string(k + 1);
      first = false;
    }
    key += "]";
    j[key] = c.to_string();
  }
  return j;
}

Grassmann grassmann_from_json(const nlohmann::json& j, int q) {
  check_q(q);
  if (j.is_number_integer()) return Grassmann(q, Gauss(j.get<long>()));
  if (j.is_string()) return Grassmann(q, Gauss::parse(j.get<std::string>()));
  if (!j.is_object()) throw Error(ErrorCode::parse_error, "Grassmann element must be a JSON object");
  std::vector<Grassmann::Term> terms;
  for (const auto& [key, value] : j.items()) {
    nlohmann::json idx;
    try {
      idx = nlohmann::json::parse(key);
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorCode::parse_error, "bad monomial key '" + key + "'");
    }
    if (!idx.is_array()) throw Error(ErrorCode::parse_error, "monomial key must be an index list");
    Monomial mask = 0;
    int prev = 0;
    for (const auto& v : idx) {
      if (!v.is_number_integer()) throw Error(ErrorCode::parse_error, "bad index in '" + key + "'");
      int k = v.get<int>();
      if (k < 1 || k > q)
        throw Error(ErrorCode::parse_error, "index " + std::to_string(k) + " outside 1.." + std::to_string(q));
      if (k <= prev) throw Error(ErrorCode::parse_error, "indices must be strictly increasing in '" + key + "'");
      prev = k;
      mask |= Monomial{1} << (k - 1);
    }
    if (!value.is_string()) throw Error(ErrorCode::parse_error, "coefficient must be a string");
    terms.emplace_back(mask, Gauss::parse(value.get<std::string>()));
  }
  return Grassmann::from_terms(q, std::move(terms));
}

}  // namespace superlie
