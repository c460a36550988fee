#pragma once

#include "superlie/realform.hpp"
#include "superlie/superalgebra.hpp"
#include "superlie/supermatrix.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace superlie {

enum class LetterKind { x_even, x_odd, x_mixed, torus };

std::string to_string(LetterKind k);

/// One generator of the supergroup:
///   x_even(alpha, t)        = exp(t X_alpha)
///   x_odd(beta, theta)      = 1 + theta X_beta
///   x_mixed(gamma, t, theta) = (1 + theta X_gamma) exp(t X_gamma^2)
///   torus(j, t)             = diag(t^{k_a}), k = integer diagonal of H_j
struct Letter {
  LetterKind kind = LetterKind::x_even;
  std::vector<Rational> root;  // root coordinates; empty for torus
  std::size_t index = 0;       // Cartan index for torus, root index otherwise
  Grassmann t;                 // even parameter (x_even, x_mixed, torus)
  Grassmann theta;             // odd parameter (x_odd, x_mixed)

  friend bool operator==(const Letter&, const Letter&) = default;
};

struct GeneratorWord {
  std::string algebra;
  int q = 0;
  std::vector<Letter> letters;

  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;
};

Letter make_letter(const LieSuperalgebra& g, LetterKind kind, const std::vector<Rational>& root, std::size_t torus_index,
                   const Grassmann& t, const Grassmann& theta);
Letter make_even(const LieSuperalgebra& g, const std::vector<Rational>& root, const Grassmann& t);
Letter make_odd(const LieSuperalgebra& g, const std::vector<Rational>& root, const Grassmann& theta);
Letter make_mixed(const LieSuperalgebra& g, const std::vector<Rational>& root, const Grassmann& t, const Grassmann& theta);
Letter make_torus(const LieSuperalgebra& g, std::size_t index, const Grassmann& t);

SuperMatrix evaluate(const LieSuperalgebra& g, const Letter& letter, int q);
SuperMatrix evaluate(const LieSuperalgebra& g, const GeneratorWord& word);

/// Letterwise image: x(alpha, t) -> x(-alpha, -conj t) on even roots,
/// x(beta, theta) -> x(-beta, -conj theta) (literal) or x(-beta, -i conj theta)
/// (graded) on odd roots, torus(t) -> torus(conj(t)^{-1}).
Letter sigma_letter(const LieSuperalgebra& g, const Letter& letter, Convention c);
GeneratorWord sigma_word(const LieSuperalgebra& g, const GeneratorWord& word, Convention c = Convention::literal);

/// Matrix form of sigma on A-series group elements.
///   graded:  M -> (M^dag)^{-1} with the graded super adjoint.
///   literal: factor M = (1 0; gamma a^{-1} 1)(a 0; 0 s)(1 a^{-1} beta; 0 1) and
///            return (1 -conj(gamma a^{-1})^t; 0 1)(conj(a)^{-1 t} 0; 0 conj(s)^{-1 t})
///            (1 0; -conj(a^{-1} beta)^t 1). Needs an invertible a block.
SuperMatrix sigma_matrix(const LieSuperalgebra& g, const SuperMatrix& m, Convention c = Convention::literal);

/// Throws convention_mismatch unless sigma_matrix(evaluate(l)) = evaluate(sigma_letter(l)).
void check_sigma_agreement(const LieSuperalgebra& g, const Letter& letter, int q, Convention c);

/// sigma_matrix(M) = M, after checking M is a group element.
bool k_membership(const LieSuperalgebra& g, const SuperMatrix& m, Convention c = Convention::literal);

/// Solves sigma(g) = g (and Ber g = 1 on sl) one soul degree at a time from a
/// random rational unitary body. Returns nullopt when some degree is
/// inconsistent for every attempt.
std::optional<SuperMatrix> sample_fixed_point(const LieSuperalgebra& g, Convention c, int q, std::mt19937_64& rng,
                                              int attempts = 6);

/// exp(tau X) for a coefficient vector X and a nilpotent parameter tau.
SuperMatrix exp_element(const LieSuperalgebra& g, const Vector& x, const Grassmann& tau);

struct ExampleCheck {
  std::string name;
  std::size_t total = 0;
  std::size_t failures = 0;
  bool diagnostic = false;  // reported but not part of the pass verdict
  nlohmann::json first_failure;

  bool pass() const { return failures == 0 && total > 0; }
};

struct ExampleReport {
  std::string family;
  std::string algebra;
  Convention convention = Convention::literal;
  int q = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> conditions;  // condition set tested on the samples
  std::vector<ExampleCheck> checks;

  bool pass() const;
};

/// Families: SL(2), GL(1|1), SL(1|1), SL(m|n) at small size.
ExampleReport verify_example_conditions(const std::string& family, int samples, int q, std::uint64_t seed = 0,
                                        Convention c = Convention::literal);

nlohmann::json to_json(const Letter& l);
nlohmann::json to_json(const GeneratorWord& w);
GeneratorWord word_from_json(const LieSuperalgebra& g, const nlohmann::json& j);
nlohmann::json to_json(const ExampleReport& r);

}  // namespace superlie
