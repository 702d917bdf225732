#ifndef FD_SIGTABLE_CONSTRAINTS_HPP
#define FD_SIGTABLE_CONSTRAINTS_HPP

#include <span>
#include <string>
#include <vector>

#include "fd/polycore/parser.hpp"
#include "fd/polycore/polynomial.hpp"

namespace fd::sigtable {

enum class Rel { eq, ne, lt, le, gt, ge };

const char* rel_symbol(Rel r);

/// One constraint in normal form `poly REL 0`, over the model universe.
struct Constraint {
  polycore::Polynomial poly;
  Rel rel;
  std::string text;        // original "lhs OP rhs" form, for reports
  bool automatic = false;  // derived (e.g. denominator nonvanishing)
};

/// Algebraic equations and inequalities on parameters and faults.
class ConstraintSet {
 public:
  ConstraintSet() = default;

  // Parses "lhs OP rhs" with OP in { =, !=, <, <=, >, >= }.
  // Throws polycore::ParseError / std::invalid_argument on bad input.
  static Constraint parse_one(const std::string& text,
                              polycore::VarUniverse::Ptr universe);

  void add(Constraint c) { items_.push_back(std::move(c)); }
  const std::vector<Constraint>& items() const { return items_; }
  bool empty() const { return items_.empty(); }

  bool satisfied_exact(std::span<const polycore::Rational> point) const;
  bool satisfied_double(std::span<const double> point) const;

 private:
  std::vector<Constraint> items_;
};

}  // namespace fd::sigtable

#endif
