#ifndef FD_SIGGEN_SUMMARY_HPP
#define FD_SIGGEN_SUMMARY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fd/polycore/groebner.hpp"
#include "fd/polycore/polynomial.hpp"

namespace fd::siggen {

/// One coefficient of the input-output polynomial: the slot name, its
/// coefficient polynomial over parameters and faults, and the monomial of
/// the measured signals it multiplies. Rational-fraction coefficients are
/// stored as numerator times an inverse auxiliary (see ExhaustiveSummary).
struct SummaryEntry {
  std::string slot;
  polycore::Polynomial gamma;      // over the model universe
  std::string monomial_tag;        // e.g. "1", "u", "y*yp"
  bool depends_on_input = false;
};

/// Auxiliary inverse introduced for a fractional summary entry: the model
/// universe variable `var` satisfies var * denominator - 1 = 0.
struct AuxInverse {
  std::size_t var;
  polycore::Polynomial denominator;
};

/// Ordered coefficient list of the input-output polynomial, plus the
/// fault-independent remainder m0 (kept as display/estimation metadata).
class ExhaustiveSummary {
 public:
  // Validates: at least one entry, unique slot names, gamma over
  // parameter/fault/auxiliary variables only.
  static ExhaustiveSummary make(polycore::VarUniverse::Ptr model_universe,
                                std::vector<SummaryEntry> entries,
                                std::vector<AuxInverse> aux,
                                std::string m0_tag);

  const polycore::VarUniverse::Ptr& model_universe() const { return universe_; }
  const std::vector<SummaryEntry>& entries() const { return entries_; }
  const std::vector<AuxInverse>& aux_inverses() const { return aux_; }
  const std::string& m0_tag() const { return m0_; }
  std::size_t fault_count() const { return fault_vars_.size(); }
  const std::vector<std::size_t>& fault_vars() const { return fault_vars_; }
  const std::vector<std::size_t>& param_vars() const { return param_vars_; }

  // Summary with the given parameter values substituted into every gamma
  // (and denominator). Keys are parameter names.
  ExhaustiveSummary with_known_params(
      const std::map<std::string, polycore::Rational>& values) const;

 private:
  polycore::VarUniverse::Ptr universe_;
  std::vector<SummaryEntry> entries_;
  std::vector<AuxInverse> aux_;
  std::string m0_;
  std::vector<std::size_t> fault_vars_;
  std::vector<std::size_t> param_vars_;
};

/// Subset of active fault indices, encoded as a bitmask over the declared
/// faults (bit k = fault k active). Patterns are ordered by (size, mask),
/// the row order of the expected-value tables.
struct FaultPattern {
  std::uint32_t mask = 0;

  bool contains(std::size_t fault_idx) const {
    return mask & (1u << fault_idx);
  }
  std::size_t size() const { return static_cast<std::size_t>(__builtin_popcount(mask)); }
  bool operator==(const FaultPattern&) const = default;

  // "{}" or "{1,3}" with 1-based fault numbers.
  std::string label() const;
};

// All 2^e patterns sorted by (size, mask).
std::vector<FaultPattern> all_patterns(std::size_t fault_count);

}  // namespace fd::siggen

#endif
