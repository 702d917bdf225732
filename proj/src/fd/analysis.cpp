#include "fd/analysis.hpp"

#include <chrono>

namespace fd {

Analysis run_analysis(io::ModelFile model, const AnalysisOptions& options) {
  auto t0 = std::chrono::steady_clock::now();
  if (!model.summary.has_value())
    throw std::invalid_argument("model carries no summary");

  siggen::ExhaustiveSummary summary = *model.summary;
  if (options.substitute_known && !model.known_params.empty())
    summary = summary.with_known_params(model.known_params);

  Analysis analysis(std::move(model), siggen::AnalysisContext(summary));
  analysis.options = options;

  siggen::SignatureOptions sopt = options.signature;
  sopt.exec = options.exec;
  analysis.sig = siggen::algebraic_signature(analysis.ctx, sopt);

  if (!analysis.sig.empty_signature) {
    analysis.table = sigtable::build_table(analysis.ctx, analysis.sig,
                                           analysis.model.constraints,
                                           options.witness, options.exec);
    analysis.verdict = sigtable::diagnosability_verdict(*analysis.table);
  }

  analysis.analyze_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return analysis;
}

simlab::DiagnosisModel diagnosis_model(const Analysis& analysis) {
  simlab::DiagnosisModel dm;
  dm.ctx = &analysis.ctx;
  dm.sig = &analysis.sig;
  if (!analysis.table)
    throw std::invalid_argument(
        "analysis has no table (empty signature); cannot run scenarios");
  dm.table = &*analysis.table;
  if (!analysis.model.has_estimator)
    throw std::invalid_argument("model declares no estimator wiring");
  dm.estimator = analysis.model.estimator;
  return dm;
}

}  // namespace fd
