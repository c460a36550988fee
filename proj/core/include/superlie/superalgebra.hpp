#pragma once

#include "superlie/linalg.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace superlie {

/// Coefficient vector over the algebra basis.
using Vector = std::vector<Gauss>;

enum class FamilyKind {
  gl,           // gl(m|n)
  sl,           // sl(m|n), also A(m,n) with m != n
  psl,          // psl(n|n) = A(n-1,n-1)
  osp,          // osp(M|2N), also B, C, D
  periplectic,  // p(n)
  strange,      // q(n)
  P,            // traceless part of p(n+1)
  Q,            // psq(n+1)
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::gl;
  int m = 0;  // gl/sl/psl: even size; osp: M; p/q/P/Q: rank parameter
  int n = 0;  // gl/sl/psl: odd size; osp: 2N
  std::string input;
  std::string label;  // canonical matrix-model name, e.g. "sl(2|1)" for "A(1,0)"
};

/// Accepts "gl(m|n)", "sl(m|n)", "sl(n)", "psl(n|n)", "osp(M|2N)", "p(n)",
/// "q(n)" and the series names A(m,n), B(m,n), C(n), D(m,n), P(n), Q(n).
/// F(4), G(3) and D(2,1;a) raise unsupported_family.
FamilySpec parse_family(std::string_view text);

/// Exact structure-constant table; entry (i, j) is the sparse expansion of [e_i, e_j].
struct StructureConstants {
  using Sparse = std::vector<std::pair<std::size_t, Gauss>>;

  std::size_t dim = 0;
  std::vector<int> parity;
  std::vector<Sparse> entries;

  const Sparse& at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  Sparse& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
  Gauss coeff(std::size_t i, std::size_t j, std::size_t k) const;
  Vector bracket(const Vector& x, const Vector& y) const;
};

struct Root {
  std::vector<Rational> coords;  // epsilon/delta coordinates for gl/sl, alpha(H_j) otherwise
  std::vector<Rational> values;  // alpha(H_j) on the Cartan basis
  int parity = 0;
  std::size_t vector_index = 0;  // basis index of X_alpha
  std::size_t negative = 0;      // index (in roots()) of the partner -alpha
  bool has_negative = true;      // false for the asymmetric periplectic root systems
  bool positive = false;
};

class LieSuperalgebra {
 public:
  static LieSuperalgebra build(const FamilySpec& spec);
  static LieSuperalgebra build(std::string_view text) { return build(parse_family(text)); }

  const FamilySpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.label; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t dim_even() const;
  std::size_t dim_odd() const { return dim() - dim_even(); }
  int parity(std::size_t k) const { return parity_[k]; }
  const std::vector<int>& parities() const { return parity_; }

  /// Representation space is (rep_m | rep_n); rows/columns 0..rep_m-1 even.
  int rep_m() const { return rep_m_; }
  int rep_n() const { return rep_n_; }
  const GaussMatrix& basis(std::size_t k) const { return basis_[k]; }
  const std::string& label(std::size_t k) const { return labels_[k]; }

  /// Cartan basis occupies indices 0..rank-1.
  std::size_t rank() const { return rank_; }
  const std::vector<Root>& roots() const { return roots_; }
  /// Zero-weight basis elements outside the Cartan subalgebra (odd diagonal of q(n)).
  const std::vector<std::size_t>& zero_weight() const { return zero_weight_; }

  const StructureConstants& table() const { return table_; }
  Vector bracket(const Vector& x, const Vector& y) const { return table_.bracket(x, y); }
  Vector unit(std::size_t k) const;
  GaussMatrix element(const Vector& x) const;
  /// Coordinates of a representation matrix, or nullopt outside the span.
  std::optional<Vector> expand(const GaussMatrix& m) const;

  /// gl and sl models with elementary-matrix root vectors.
  bool a_series() const { return spec_.kind == FamilyKind::gl || spec_.kind == FamilyKind::sl; }
  /// "classical", "example-only" (gl(1|1), sl(1|1)) or "non-simple".
  std::string status() const;
  /// True when realized through the adjoint action of a quotient.
  bool adjoint_model() const { return spec_.kind == FamilyKind::psl || spec_.kind == FamilyKind::Q; }

  std::optional<std::size_t> find_root(const std::vector<Rational>& coords) const;

  struct Parts;  // construction scratch

 private:
  FamilySpec spec_;
  int rep_m_ = 0, rep_n_ = 0;
  std::vector<GaussMatrix> basis_;
  std::vector<int> parity_;
  std::vector<std::string> labels_;
  std::size_t rank_ = 0;
  std::vector<Root> roots_;
  std::vector<std::size_t> zero_weight_;
  StructureConstants table_;
  // Expansion: coefficients = pivot_inverse_ * (entries at pivot_positions_).
  std::vector<std::size_t> pivot_positions_;
  GaussMatrix pivot_inverse_;

  void finalize();
};

struct JacobiReport {
  bool pass = true;
  std::string failure;  // "antisymmetry" or "jacobi"
  std::vector<std::size_t> indices;
  Vector violation;
};

/// Graded antisymmetry on all pairs and the graded Jacobi identity
/// (-1)^{|x||z|}[x,[y,z]] + cyclic = 0 on all basis triples.
JacobiReport super_jacobi_check(const StructureConstants& table);

struct ChevalleyData {
  std::vector<std::size_t> h_basis;
  std::vector<std::size_t> root_vectors;  // parallel to roots()
  /// H_alpha = [X_alpha, X_{-alpha}] in terms of h_basis, per root.
  std::vector<std::vector<Rational>> coroot_map;
  bool integral_structure_constants = false;
  bool integral_coroots = false;
};

/// Elementary-matrix Chevalley data for the gl/sl models; other families
/// raise unsupported_family.
ChevalleyData chevalley_basis(const LieSuperalgebra& g);

struct AssumptionWitness {
  std::size_t root = 0;
  Vector value;  // [X_alpha, X_alpha]
};

struct AssumptionReport {
  bool holds = true;
  std::vector<AssumptionWitness> witnesses;
  std::string status;
  /// Exclusion by the odd-module representation argument, independent of
  /// the square-zero test (strange series).
  bool representation_exclusion = false;
};

AssumptionReport check_assumption(const LieSuperalgebra& g);

nlohmann::json vector_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);
nlohmann::json rational_vector_json(const std::vector<Rational>& v);
std::vector<Rational> rational_vector_from_json(const nlohmann::json& j);

nlohmann::json describe_json(const LieSuperalgebra& g);
nlohmann::json roots_json(const LieSuperalgebra& g);
nlohmann::json structure_constants_json(const LieSuperalgebra& g);
nlohmann::json chevalley_json(const LieSuperalgebra& g, const ChevalleyData& data);
nlohmann::json assumption_json(const LieSuperalgebra& g, const AssumptionReport& report);
nlohmann::json jacobi_json(const JacobiReport& report);

}  // namespace superlie
