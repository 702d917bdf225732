#ifndef FD_POLYCORE_PARSER_HPP
#define FD_POLYCORE_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "fd/polycore/polynomial.hpp"

namespace fd::polycore {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t position)
      : std::runtime_error(message + " (at position " +
                           std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses a polynomial expression over the given universe.
///
/// Grammar (documented in docs/formats.md):
///   expr   = [ "+" | "-" ] term { ("+" | "-") term } ;
///   term   = factor { ("*" | "/") factor } ;
///   factor = base [ "^" natural ] ;
///   base   = natural | ident | "(" expr ")" ;
///
/// '/' divides by a nonzero constant subexpression; '^' takes a nonnegative
/// integer literal. Violations raise ParseError with the offending position,
/// as do unknown variable names.
Polynomial parse_poly(std::string_view text, VarUniverse::Ptr universe);

}  // namespace fd::polycore

#endif
