#ifndef FD_ANALYSIS_HPP
#define FD_ANALYSIS_HPP

#include <optional>
#include <string>

#include "fd/exec.hpp"
#include "fd/io/modelfile.hpp"
#include "fd/sigtable/table.hpp"
#include "fd/simlab/pipeline.hpp"

namespace fd {

inline constexpr const char* kToolVersion = "fdiag 0.1.0";

struct AnalysisOptions {
  ExecMode exec = ExecMode::openmp;
  sigtable::WitnessConfig witness;
  siggen::SignatureOptions signature;
  // Substitute the model's known parameter values before the signature
  // construction (they become numeric constants).
  bool substitute_known = false;
};

/// Result of the symbolic stage for one model: the signature, its
/// expected-value table and the diagnosability verdict. The expensive
/// precomputation lives here; the numeric stage only reads it.
struct Analysis {
  io::ModelFile model;
  siggen::AnalysisContext ctx;
  siggen::SignatureResult sig;
  std::optional<sigtable::SignatureTable> table;  // absent when signature empty
  std::optional<sigtable::DiagnosabilityVerdict> verdict;
  AnalysisOptions options;
  double analyze_seconds = 0.0;

  Analysis(io::ModelFile m, siggen::AnalysisContext c)
      : model(std::move(m)), ctx(std::move(c)) {}
};

Analysis run_analysis(io::ModelFile model, const AnalysisOptions& options = {});

/// Pointer bundle the scenario pipeline consumes. The Analysis must outlive
/// the returned view.
simlab::DiagnosisModel diagnosis_model(const Analysis& analysis);

}  // namespace fd

#endif
