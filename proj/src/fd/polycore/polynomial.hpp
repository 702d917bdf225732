#ifndef FD_POLYCORE_POLYNOMIAL_HPP
#define FD_POLYCORE_POLYNOMIAL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fd/polycore/monomial.hpp"
#include "fd/polycore/order.hpp"
#include "fd/polycore/rational.hpp"
#include "fd/polycore/universe.hpp"

namespace fd::polycore {

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse multivariate polynomial with exact rational coefficients over a
/// shared variable universe. Terms are kept in canonical form: sorted in
/// descending declaration-order lex, no zero coefficients. Two polynomials
/// are equal iff their canonical term lists are equal. Immutable value type.
class Polynomial {
 public:
  static Polynomial zero(VarUniverse::Ptr u);
  static Polynomial constant(VarUniverse::Ptr u, Rational c);
  static Polynomial variable(VarUniverse::Ptr u, std::size_t var);
  // Merges duplicate monomials, drops zeros, sorts canonically.
  static Polynomial from_terms(VarUniverse::Ptr u, std::vector<Term> terms);

  const VarUniverse::Ptr& universe() const { return universe_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t term_count() const { return terms_.size(); }
  std::uint64_t total_degree() const;  // 0 for the zero polynomial

  // Variable indices that occur with positive exponent.
  std::vector<std::size_t> support() const;
  bool uses_only(const std::vector<std::size_t>& vars) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial pow(std::uint32_t e) const;

  bool operator==(const Polynomial& rhs) const;
  bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

  // Leading data under an arbitrary monomial order (linear scan).
  const Term& leading_term(const MonomialOrder& ord) const;
  Polynomial monic(const MonomialOrder& ord) const;

  Rational eval_rational(std::span<const Rational> values) const;
  double eval_double(std::span<const double> values) const;

  // Substitutes repl[i] (when non-null) for variable i. Replacement
  // polynomials share this universe.
  Polynomial substituted(const std::vector<const Polynomial*>& repl) const;

  // Re-expresses the polynomial over another universe, mapping variables by
  // name. Throws std::invalid_argument if a used variable is missing.
  Polynomial lifted_to(VarUniverse::Ptr target) const;

  // Canonical text form: descending declaration-lex, explicit '*' and '^'.
  std::string to_string() const;

 private:
  Polynomial(VarUniverse::Ptr u, std::vector<Term> canonical)
      : universe_(std::move(u)), terms_(std::move(canonical)) {}
  VarUniverse::Ptr universe_;
  std::vector<Term> terms_;
};

// (total degree, canonical term sequence) comparison used for deterministic
// component ordering; returns <0, 0, >0.
int compare_polynomials(const Polynomial& a, const Polynomial& b,
                        const MonomialOrder& ord);

}  // namespace fd::polycore

#endif
