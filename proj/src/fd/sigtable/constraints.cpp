#include "fd/sigtable/constraints.hpp"

#include <stdexcept>

namespace fd::sigtable {

using polycore::Polynomial;
using polycore::Rational;

const char* rel_symbol(Rel r) {
  switch (r) {
    case Rel::eq: return "=";
    case Rel::ne: return "!=";
    case Rel::lt: return "<";
    case Rel::le: return "<=";
    case Rel::gt: return ">";
    case Rel::ge: return ">=";
  }
  return "?";
}

Constraint ConstraintSet::parse_one(const std::string& text,
                                    polycore::VarUniverse::Ptr universe) {
  struct Op {
    const char* token;
    Rel rel;
  };
  // Two-character operators first.
  static const Op ops[] = {{"<=", Rel::le}, {">=", Rel::ge}, {"!=", Rel::ne},
                           {"<", Rel::lt},  {">", Rel::gt},  {"=", Rel::eq}};
  for (const auto& op : ops) {
    auto pos = text.find(op.token);
    if (pos == std::string::npos) continue;
    std::string lhs = text.substr(0, pos);
    std::string rhs = text.substr(pos + std::string(op.token).size());
    Polynomial l = polycore::parse_poly(lhs, universe);
    Polynomial r = polycore::parse_poly(rhs, universe);
    return Constraint{l - r, op.rel, text};
  }
  throw std::invalid_argument("constraint lacks a relational operator: '" +
                              text + "'");
}

namespace {

template <typename V>
bool check(Rel rel, const V& v, const V& zero) {
  switch (rel) {
    case Rel::eq: return v == zero;
    case Rel::ne: return v != zero;
    case Rel::lt: return v < zero;
    case Rel::le: return v <= zero;
    case Rel::gt: return v > zero;
    case Rel::ge: return v >= zero;
  }
  return false;
}

}  // namespace

bool ConstraintSet::satisfied_exact(
    std::span<const Rational> point) const {
  for (const auto& c : items_) {
    Rational v = c.poly.eval_rational(point);
    if (!check(c.rel, v, Rational(0))) return false;
  }
  return true;
}

bool ConstraintSet::satisfied_double(std::span<const double> point) const {
  for (const auto& c : items_) {
    double v = c.poly.eval_double(point);
    if (!check(c.rel, v, 0.0)) return false;
  }
  return true;
}

}  // namespace fd::sigtable
