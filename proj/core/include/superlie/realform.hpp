#pragma once

#include "superlie/superalgebra.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace superlie {

/// Sign convention for the odd root vectors.
///
/// literal: X_beta -> -X_{-beta} on every root, as in the textbook formula.
/// graded:  X_beta -> -i X_{-beta} on odd roots (even roots unchanged). This
///          is the convention under which s respects odd-odd brackets.
enum class Convention { graded, literal };

std::string to_string(Convention c);
Convention convention_from_string(const std::string& text);

/// s(x) = matrix * conj(x) on coefficient vectors.
struct SemilinearMap {
  GaussMatrix matrix;
  Convention convention = Convention::graded;

  Vector apply(const Vector& x) const;
};

/// X_alpha -> -X_{-alpha} (even), odd roots per the convention, H_j -> -H_j.
/// Needs a symmetric root system and no zero-weight extras; otherwise
/// unsupported_family.
SemilinearMap involution_s(const LieSuperalgebra& g, Convention c = Convention::graded);

bool is_involution(const SemilinearMap& s);

struct MapCheck {
  bool pass = true;
  std::size_t i = 0, j = 0;  // failing basis pair
  Vector lhs, rhs;           // s[e_i, e_j] and [s e_i, s e_j]
};

/// s[e_i, e_j] = [s e_i, s e_j] on all basis pairs.
MapCheck semiautomorphism_check(const LieSuperalgebra& g, const SemilinearMap& s);

struct RealFormBasis {
  std::vector<Vector> vectors;
  std::vector<std::string> labels;
  std::vector<int> parity;
  Convention convention = Convention::graded;
};

/// Spanning set {iH_j, i(X_a + s-partner), X_a - s-partner} built from s.
/// Raises obstruction (with witnesses) when hypothesis (1) fails unless
/// `force` is set.
RealFormBasis compact_form_basis(const LieSuperalgebra& g, const SemilinearMap& s, bool force = false);

struct ClosureReport {
  bool pass = true;
  std::size_t a = 0, b = 0;  // offending pair of k-basis indices
  Vector bracket;
  Vector imaginary;  // imaginary part of the k-coordinates, when k is a complex basis
  std::string reason;
};

ClosureReport closure_check(const LieSuperalgebra& g, const RealFormBasis& k);

struct FixedPointReport {
  bool match = false;
  std::size_t dim_fixed = 0;   // real dimension of {x : s x = x}
  std::size_t dim_k = 0;       // real dimension of span(k)
  std::size_t dim_complex = 0; // complex dimension of g
  bool pointwise_fixed = false;
};

FixedPointReport fixed_points_equal_k(const LieSuperalgebra& g, const SemilinearMap& s, const RealFormBasis& k);

/// B(x, y) = tr_g(ad x ad y), the ordinary trace over all of g, restricted to
/// the even part of k.
struct FormReport {
  bool negative_definite = false;
  bool real = true;
  RatMatrix gram;
};

FormReport k0_trace_form(const LieSuperalgebra& g, const RealFormBasis& k);

struct RealFormReport {
  std::string family;
  Convention convention = Convention::graded;
  bool admissible = false;
  AssumptionReport assumption;
  bool involutive = false;
  MapCheck semiautomorphism;
  std::size_t k_dim = 0;
  RealFormBasis k;
  ClosureReport closure;
  FixedPointReport fixed;
  FormReport k0_form;
  bool built = false;  // false when the obstruction stopped construction
};

RealFormReport realform_report(const LieSuperalgebra& g, Convention c, bool force);

nlohmann::json to_json(const LieSuperalgebra& g, const RealFormReport& r);
nlohmann::json to_json(const LieSuperalgebra& g, const RealFormBasis& k);

}  // namespace superlie
