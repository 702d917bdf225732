#ifndef FD_SIGTABLE_TABLE_HPP
#define FD_SIGTABLE_TABLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fd/exec.hpp"
#include "fd/siggen/signature.hpp"
#include "fd/sigtable/witness.hpp"

namespace fd::sigtable {

enum class CellKind { Zero, NonZero, MayVanish };
enum class CertTag {
  ideal_membership,
  gb_unit_certificate,
  numeric_witness_pair,
  exhausted_search,
};

const char* cell_kind_symbol(CellKind k);    // "0", "!0", "?"
const char* cert_tag_name(CertTag t);

/// One table cell: the three-valued expected value of a signature component
/// for a fault pattern, with the certificate that produced it. Zero always
/// comes from exact ideal membership; NonZero is exact when tagged with the
/// basis-unit certificate and heuristic when tagged exhausted-search;
/// MayVanish carries both witnesses.
struct CellValue {
  CellKind kind = CellKind::MayVanish;
  CertTag tag = CertTag::exhausted_search;
  std::optional<WitnessPoint> zero_witness;
  std::optional<WitnessPoint> nonzero_witness;
  std::string diagnostic;
  double search_margin = 0.0;  // min relative magnitude seen by the search
};

class CellError : public std::runtime_error {
 public:
  CellError(const std::string& row, std::size_t column, const std::string& what)
      : std::runtime_error("cell (" + row + ", ASig" +
                           std::to_string(column + 1) + "): " + what) {}
};

struct SignatureTable {
  std::vector<siggen::FaultPattern> rows;   // (size, mask) order
  std::size_t columns = 0;
  std::vector<std::vector<CellValue>> cells;  // [row][column]
  std::vector<bool> input_independent;        // per column
};

/// Decision procedure for one cell, in order: exact ideal membership for
/// Zero; basis-unit certificate (constraint equations joined) for NonZero;
/// bounded numeric witness search for the rest.
CellValue cell_value(const siggen::AnalysisContext& ctx,
                     const polycore::GroebnerBasis& pattern_basis,
                     siggen::FaultPattern pattern,
                     const polycore::Polynomial& component,
                     const ConstraintSet& constraints,
                     const WitnessConfig& cfg, std::uint64_t cell_seed);

/// Evaluates all |patterns| x |components| cells. Cells are independent;
/// per-cell seeds derive from cfg.seed, so the serial and OpenMP paths
/// agree exactly. Verifies the no-fault row is all Zero.
SignatureTable build_table(const siggen::AnalysisContext& ctx,
                           const siggen::SignatureResult& sig,
                           const ConstraintSet& constraints,
                           const WitnessConfig& cfg,
                           ExecMode exec = ExecMode::openmp);

enum class Criterion3Outcome { holds, fails, undecided };

struct Criterion3Report {
  Criterion3Outcome outcome = Criterion3Outcome::undecided;
  std::string detail;
};

/// Tests whether component j vanishing is equivalent to fault i vanishing,
/// over the constraint region with all faults free: both
///   { ASig_j = 0, f_i != 0 }  and  { ASig_j != 0, f_i = 0 }
/// must be empty (certificate or exhausted search). A confirmed witness for
/// either set yields `fails`.
Criterion3Report criterion3_check(const siggen::AnalysisContext& ctx,
                                  const siggen::SignatureResult& sig,
                                  std::size_t component_idx,
                                  std::size_t fault_idx,
                                  const ConstraintSet& constraints,
                                  const WitnessConfig& cfg);

struct PairVerdict {
  std::size_t row_a = 0, row_b = 0;
  std::vector<std::size_t> separating_columns;
  std::vector<std::size_t> input_independent_columns;
  bool discriminable() const { return !separating_columns.empty(); }
};

enum class OverallVerdict {
  input_strong,
  strong_given_input_dependence,
  undecided,
};

const char* overall_verdict_name(OverallVerdict v);

struct DiagnosabilityVerdict {
  std::vector<PairVerdict> pairs;  // all unordered row pairs, (a<b) order
  std::vector<bool> detectable;    // per row: discriminable from the {} row
  OverallVerdict overall = OverallVerdict::undecided;
  // Input-weak diagnosability over the input space is out of scope here.
  std::string note =
      "input-weak discriminability (existence of a separating input) is not "
      "assessed";
};

/// A pair is discriminable iff some column opposes Zero to NonZero between
/// the two rows; input-strong needs such opposition in an input-independent
/// column for every pair.
DiagnosabilityVerdict diagnosability_verdict(const SignatureTable& table);

std::string render_markdown(const SignatureTable& table);
std::string render_csv(const SignatureTable& table);

}  // namespace fd::sigtable

#endif
