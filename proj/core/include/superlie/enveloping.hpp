#pragma once

#include "superlie/realform.hpp"
#include "superlie/superalgebra.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace superlie {

inline constexpr int kMaxUeaDegree = 4;

/// Word in the algebra basis indices. A PBW monomial is a non-decreasing word
/// with no repeated odd letter.
using PbwWord = std::vector<std::uint16_t>;

/// Super-PBW count: sum over j <= d of the monomials of total degree j in
/// `even` commuting and `odd` exterior generators.
std::size_t pbw_dimension(std::size_t even, std::size_t odd, int d);

/// U(g) truncated at total degree d with memoized straightening.
class TruncatedUEA {
 public:
  TruncatedUEA(const LieSuperalgebra& g, int d);

  const LieSuperalgebra& algebra() const { return *g_; }
  int degree() const { return d_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<PbwWord>& basis() const { return basis_; }
  std::optional<std::size_t> index(const PbwWord& w) const;
  std::string label(std::size_t k) const;
  int parity(std::size_t k) const;

  /// Normal form of an arbitrary word, truncated to degree <= d.
  Vector straighten(const PbwWord& w) const;
  /// Truncated product of two elements.
  Vector multiply(const Vector& u, const Vector& v) const;
  /// x1 x2 ... xk for Lie elements x_i (coefficient vectors over g).
  Vector product(const std::vector<Vector>& factors) const;
  Vector unit(std::size_t k) const;

 private:
  using Sparse = std::map<PbwWord, Gauss>;
  const Sparse& normal_form(const PbwWord& w) const;
  Vector truncate(const Sparse& s) const;

  const LieSuperalgebra* g_;
  int d_;
  std::vector<PbwWord> basis_;
  std::map<PbwWord, std::size_t> index_;
  mutable std::mutex mu_;
  mutable std::map<PbwWord, std::unique_ptr<Sparse>> memo_;
};

TruncatedUEA pbw_basis(const LieSuperalgebra& g, int d);

/// s(x1...xk) = s(x1)...s(xk), re-straightened; semilinear on scalars.
SemilinearMap extend_involution(const SemilinearMap& s, const TruncatedUEA& u);

bool is_algebra_map(const SemilinearMap& su, const TruncatedUEA& u);

struct UeaReport {
  std::string algebra;
  int degree = 0;
  std::size_t dim_complex = 0;   // dim_C U(g)_{<=d}
  std::size_t dim_fixed = 0;     // dim_R of the s-fixed space
  std::size_t dim_uk = 0;        // dim_R span of U(k)_{<=d}
  std::size_t uk_monomials = 0;  // PBW monomials in the k basis
  bool uk_fixed = false;         // every U(k) monomial is s-fixed
  bool equal = false;            // span U(k) = fixed space
  bool injective = false;        // k-monomials are R-independent
  bool surjective = false;       // they reach the whole fixed space
  bool involutive = false;
  bool projector_idempotent = false;  // P = (1 + s)/2 satisfies P^2 = P
  bool projector_image_fixed = false; // image(P) = fixed space
};

UeaReport invariants_dim_compare(const LieSuperalgebra& g, const SemilinearMap& s, const RealFormBasis& k, int d);
/// Builds s and the compact form first; raises obstruction when there is none.
UeaReport invariants_dim_compare(const LieSuperalgebra& g, Convention c, int d);

nlohmann::json to_json(const UeaReport& r);

}  // namespace superlie
