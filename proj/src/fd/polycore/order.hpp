#ifndef FD_POLYCORE_ORDER_HPP
#define FD_POLYCORE_ORDER_HPP

#include <string>
#include <vector>

#include "fd/polycore/monomial.hpp"

namespace fd::polycore {

/// Total monomial order. Both supported kinds (plain lex and block-lex over
/// a precedence permutation) compare exponents along a permutation of the
/// variable indices, most significant first. Multiplicative and a
/// well-order by construction.
class MonomialOrder {
 public:
  enum class Kind { lex, block_lex };

  // Lexicographic order with declaration-order precedence.
  static MonomialOrder lex(std::size_t nvars);

  // Lexicographic order along an explicit precedence permutation;
  // precedence[0] is the most significant variable index.
  // Throws std::invalid_argument unless precedence is a permutation.
  static MonomialOrder block_lex(std::vector<std::size_t> precedence);

  std::size_t nvars() const { return precedence_.size(); }
  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& precedence() const { return precedence_; }

  // -1 if a < b, 0 if equal, +1 if a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const {
    return compare(a, b) < 0;
  }
  bool greater(const Monomial& a, const Monomial& b) const {
    return compare(a, b) > 0;
  }

  // True iff every variable outside `keep` precedes every variable in
  // `keep`, i.e. the order eliminates the dropped variables.
  bool eliminates_complement_of(const std::vector<std::size_t>& keep) const;

  bool operator==(const MonomialOrder& other) const {
    return precedence_ == other.precedence_;
  }

 private:
  MonomialOrder(Kind kind, std::vector<std::size_t> precedence)
      : kind_(kind), precedence_(std::move(precedence)) {}
  Kind kind_;
  std::vector<std::size_t> precedence_;
};

}  // namespace fd::polycore

#endif
