#ifndef FD_POLYCORE_RATIONAL_HPP
#define FD_POLYCORE_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace fd::polycore {

// Exact arbitrary-precision rational. All symbolic-layer coefficients use
// this type; floating point is confined to the numeric estimation layer.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Parses "n" or "n/d". Throws std::invalid_argument on malformed input or
// zero denominator.
Rational rational_from_string(const std::string& text);

}  // namespace fd::polycore

#endif
