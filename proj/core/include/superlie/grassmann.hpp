#pragma once

#include "superlie/gauss.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace superlie {

/// Subset of generator indices {1..q}; bit k-1 stands for xi_k.
using Monomial = std::uint32_t;

inline constexpr int kMaxGenerators = 16;

enum class Parity { even, odd, mixed };

/// Element of the Grassmann algebra Lambda_q over Q(i).
///
/// Terms are kept sorted by monomial mask with zero coefficients dropped, so
/// structural equality is ring equality. Monomials are normal-ordered
/// xi_{i1} xi_{i2} ... with i1 < i2 < ...; products pick up the sign of the
/// merge permutation.
class Grassmann {
 public:
  using Term = std::pair<Monomial, Gauss>;

  Grassmann() = default;
  explicit Grassmann(int q);
  Grassmann(int q, Gauss constant);

  static Grassmann zero(int q) { return Grassmann(q); }
  static Grassmann one(int q) { return Grassmann(q, Gauss(1)); }
  /// xi_k, 1-based.
  static Grassmann generator(int q, int k);
  static Grassmann monomial(int q, Monomial mask, Gauss coeff = Gauss(1));
  /// Builds from arbitrary (mask, coeff) pairs; duplicates are summed.
  static Grassmann from_terms(int q, std::vector<Term> terms);

  int q() const { return q_; }
  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Gauss coeff(Monomial mask) const;
  Gauss body() const { return coeff(0); }
  Grassmann soul() const;
  /// Component of soul degree k (monomials with exactly k generators).
  Grassmann degree_part(int k) const;
  /// Highest monomial degree present, -1 for zero.
  int max_degree() const;
  /// Lowest degree with a nonzero term, -1 for zero.
  int min_degree() const;

  /// Zero counts as even.
  Parity parity() const;
  bool is_even() const;
  bool is_odd() const;
  bool has_real_coefficients() const;

  Grassmann conj() const;
  Grassmann inverse() const;

  Grassmann operator-() const;
  Grassmann& operator+=(const Grassmann& o);
  Grassmann& operator-=(const Grassmann& o);
  Grassmann& operator*=(const Grassmann& o) { return *this = *this * o; }
  Grassmann& operator*=(const Gauss& c);

  friend Grassmann operator+(Grassmann a, const Grassmann& b) { return a += b; }
  friend Grassmann operator-(Grassmann a, const Grassmann& b) { return a -= b; }
  friend Grassmann operator*(const Grassmann& a, const Grassmann& b);
  friend Grassmann operator*(Grassmann a, const Gauss& c) { return a *= c; }
  friend Grassmann operator*(const Gauss& c, Grassmann a) { return a *= c; }
  friend bool operator==(const Grassmann& a, const Grassmann& b) {
    return a.q_ == b.q_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  int q_ = 0;
  std::vector<Term> terms_;
};

/// Sign (+1, -1) of xi_A * xi_B -> xi_{A|B}, or 0 when A and B overlap.
int monomial_sign(Monomial a, Monomial b);

inline int monomial_degree(Monomial m) { return __builtin_popcount(m); }

/// Result of gr_parity_body: parity flag plus the body/soul split.
struct ParityBody {
  Parity parity;
  Gauss body;
  Grassmann soul;
};
ParityBody parity_body(const Grassmann& a);

// Wire format: {"[1,2]": "p/q+r/s*i", "[]": "1"}.
nlohmann::json to_json(const Grassmann& a);
Grassmann grassmann_from_json(const nlohmann::json& j, int q);

}  // namespace superlie
