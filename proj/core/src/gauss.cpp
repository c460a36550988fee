#include "superlie/gauss.hpp"

#include "superlie/errors.hpp"

#include <cctype>
#include <ostream>

namespace superlie {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::not_invertible: return "not_invertible";
    case ErrorCode::not_nilpotent: return "not_nilpotent";
    case ErrorCode::parity_violation: return "parity_violation";
    case ErrorCode::unsupported_family: return "unsupported_family";
    case ErrorCode::invalid_parameter: return "invalid_parameter";
    case ErrorCode::obstruction: return "obstruction";
    case ErrorCode::model_inconsistency: return "model_inconsistency";
    case ErrorCode::convention_mismatch: return "convention_mismatch";
    case ErrorCode::domain_error: return "domain_error";
    case ErrorCode::cap_exceeded: return "cap_exceeded";
    case ErrorCode::parse_error: return "parse_error";
  }
  return "unknown";
}

Gauss Gauss::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw Error(ErrorCode::not_invertible, "division by zero");
  return Gauss(re_ / n, -im_ / n);
}

Gauss& Gauss::operator*=(const Gauss& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::strong_ordering operator<=>(const Gauss& a, const Gauss& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Gauss::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string im_part = Rational(abs(im_)).get_str() + "*i";
  if (sgn(re_) == 0) return sgn(im_) < 0 ? "-" + im_part : im_part;
  return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + im_part;
}

namespace {

Rational parse_rational(std::string_view s) {
  if (s.empty()) throw Error(ErrorCode::parse_error, "empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  if (start == s.size()) throw Error(ErrorCode::parse_error, "bad rational '" + std::string(s) + "'");
  for (std::size_t k = start; k < s.size(); ++k) {
    char c = s[k];
    if (c == '/') {
      if (slash || k == start || k + 1 == s.size())
        throw Error(ErrorCode::parse_error, "bad rational '" + std::string(s) + "'");
      slash = true;
    } else if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::parse_error, "bad rational '" + std::string(s) + "'");
    }
  }
  std::string body(s[0] == '+' ? s.substr(1) : s);
  Rational r(body, 10);
  if (slash && sgn(r.get_den()) == 0)
    throw Error(ErrorCode::parse_error, "zero denominator in '" + std::string(s) + "'");
  r.canonicalize();
  return r;
}

}  // namespace

Gauss Gauss::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::parse_error, "empty scalar");
  if (s.back() != 'i') return Gauss(parse_rational(s));

  // Imaginary part present: split at the last sign that is not the leading one.
  s.pop_back();
  if (!s.empty() && s.back() == '*') s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string re_text = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_text = split == std::string::npos ? s : s.substr(split);
  Rational im;
  if (im_text.empty() || im_text == "+") im = 1;
  else if (im_text == "-") im = -1;
  else im = parse_rational(im_text);
  Rational re = re_text.empty() ? Rational(0) : parse_rational(re_text);
  return Gauss(re, im);
}

std::ostream& operator<<(std::ostream& os, const Gauss& z) { return os << z.to_string(); }

}  // namespace superlie
