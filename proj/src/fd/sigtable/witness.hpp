#ifndef FD_SIGTABLE_WITNESS_HPP
#define FD_SIGTABLE_WITNESS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fd/siggen/signature.hpp"
#include "fd/sigtable/constraints.hpp"

namespace fd::sigtable {

struct WitnessConfig {
  std::size_t samples = 10000;
  // Strict bounds are shrunk by max(abs, rel*|bound|) before sampling.
  double strict_margin_abs = 1e-3;
  double strict_margin_rel = 1e-2;
  double active_fault_min = 1e-3;  // |f_i| floor when the pattern needs f_i != 0
  double param_box_hi = 10.0;
  double fault_box_halfwidth = 10.0;
  // A located minimum counts as a vanishing witness only on exact rational
  // confirmation, or when the relative cancellation drops below vanish_rel
  // at an interior point.
  double vanish_rel = 1e-12;
  double nonzero_rel = 1e-6;   // zero-free margin for exhausted searches
  double near_zero_rel = 1e-9;
  int descent_sweeps = 12;
  int descent_grid = 33;
  std::size_t exact_candidates = 8;
  std::uint64_t seed = 0x5eedULL;
};

struct WitnessPoint {
  // Values keyed by variable name (parameters and faults).
  std::vector<std::pair<std::string, double>> assignment;
  // Exact values as rational strings when the point is exact.
  std::vector<std::pair<std::string, std::string>> exact_assignment;
  bool exact = false;
  double component_value = 0.0;
  double rel = 0.0;
  std::string note;
};

enum class SearchVerdict {
  no_zero_found,  // every feasible sample bounded away from zero
  witness_pair,   // confirmed vanishing point plus robust nonzero point
  zero_only,      // confirmed vanishing point, nothing robustly nonzero
  all_near_zero,  // every feasible sample effectively zero
};

struct SearchOutcome {
  SearchVerdict verdict = SearchVerdict::no_zero_found;
  std::optional<WitnessPoint> zero_witness;
  std::optional<WitnessPoint> nonzero_witness;
  double min_rel = std::numeric_limits<double>::infinity();
  double max_rel = 0.0;
  std::size_t feasible = 0;
  std::string diagnostic;
};

class InfeasibleRegionError : public std::runtime_error {
 public:
  explicit InfeasibleRegionError(const std::string& region)
      : std::runtime_error("no feasible sample found for " + region) {}
};

/// Randomized witness search for one semialgebraic question: does the
/// composed component vanish somewhere / everywhere / never on the region
///   constraints  &&  f_i = 0 (zero_faults)  &&  f_i != 0 (nonzero_faults)?
/// The component is composed symbolically with the summary (slots replaced
/// by their coefficient polynomials, forced-zero faults substituted), which
/// removes the structural cancellations before any floating point is used.
/// Deterministic for a fixed seed.
class WitnessSearch {
 public:
  WitnessSearch(const siggen::AnalysisContext& ctx,
                const ConstraintSet& constraints,
                const std::vector<std::size_t>& zero_faults,
                const std::vector<std::size_t>& nonzero_faults,
                const polycore::Polynomial& component,
                const WitnessConfig& cfg, std::uint64_t seed,
                std::string region_label);

  SearchOutcome run();

  // The composed polynomial over parameters and free faults.
  const polycore::Polynomial& composed() const { return composed_; }

 private:
  struct FreeVar {
    std::size_t var;
    double lo, hi;
    polycore::Rational lo_q, hi_q;
    bool exclude_zero = false;
  };

  void derive_boxes();
  bool feasible_double(std::span<const double> point) const;
  bool feasible_exact(std::span<const polycore::Rational> point) const;

  const siggen::AnalysisContext& ctx_;
  const ConstraintSet& constraints_;
  std::vector<polycore::Polynomial> lifted_constraints_;
  std::vector<Rel> lifted_rels_;
  std::vector<std::size_t> zero_faults_, nonzero_faults_;
  polycore::Polynomial composed_;
  WitnessConfig cfg_;
  std::uint64_t seed_;
  std::string label_;
  std::vector<FreeVar> free_vars_;
  bool has_aux_ = false;  // composed polynomial touches fraction inverses
  std::vector<std::size_t> aux_vars_;                 // analysis indices of inverses
  std::vector<polycore::Polynomial> aux_dens_lifted_; // matching denominators
};

}  // namespace fd::sigtable

#endif
