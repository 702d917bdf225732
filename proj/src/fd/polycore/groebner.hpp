#ifndef FD_POLYCORE_GROEBNER_HPP
#define FD_POLYCORE_GROEBNER_HPP

#include <stdexcept>
#include <vector>

#include "fd/polycore/polynomial.hpp"

namespace fd::polycore {

struct GroebnerOptions {
  // Guard against pair-queue blowup; exceeding either limit raises
  // GroebnerBlowupError with the counts reached.
  std::size_t max_pairs = 400000;
  std::size_t max_basis = 4096;
};

class GroebnerBlowupError : public std::runtime_error {
 public:
  GroebnerBlowupError(std::size_t pairs, std::size_t basis)
      : std::runtime_error("Groebner pair queue blowup (pairs processed: " +
                           std::to_string(pairs) +
                           ", basis size: " + std::to_string(basis) + ")"),
        pairs_processed(pairs),
        basis_size(basis) {}
  std::size_t pairs_processed;
  std::size_t basis_size;
};

/// Reduced Groebner basis: every element monic, no element's monomial
/// divisible by another element's leading monomial, tails fully reduced.
/// Elements are sorted by ascending leading monomial, which makes the
/// representation unique for (ideal, order).
class GroebnerBasis {
 public:
  GroebnerBasis(std::vector<Polynomial> elements, MonomialOrder order)
      : elements_(std::move(elements)), order_(std::move(order)) {}

  const std::vector<Polynomial>& elements() const { return elements_; }
  const MonomialOrder& order() const { return order_; }
  bool empty() const { return elements_.empty(); }

  // True iff the basis is {1}, i.e. the ideal is the whole ring.
  bool is_unit() const {
    return elements_.size() == 1 && elements_[0].is_constant() &&
           !elements_[0].is_zero();
  }

 private:
  std::vector<Polynomial> elements_;
  MonomialOrder order_;
};

// Buchberger's algorithm with the coprime-leading-term and chain criteria
// and normal (minimal lcm) pair selection; result is the reduced basis.
// Deterministic for identical input. The empty generator list yields an
// empty basis.
GroebnerBasis groebner_basis(const std::vector<Polynomial>& generators,
                             const MonomialOrder& order,
                             const GroebnerOptions& options = {});

// Remainder of p under multivariate division by the basis: no term of the
// result is divisible by any basis leading monomial, and p - result lies in
// the ideal.
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& basis);

bool in_ideal(const Polynomial& p, const GroebnerBasis& basis);

// Basis elements that involve only `keep` variables; these generate the
// elimination ideal when the order eliminates the complement. Throws
// std::invalid_argument if the basis order does not.
std::vector<Polynomial> eliminate(const GroebnerBasis& basis,
                                  const std::vector<std::size_t>& keep);

}  // namespace fd::polycore

#endif
