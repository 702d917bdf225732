#ifndef FD_SIGGEN_SIGNATURE_HPP
#define FD_SIGGEN_SIGNATURE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fd/exec.hpp"
#include "fd/polycore/groebner.hpp"
#include "fd/siggen/summary.hpp"

namespace fd::siggen {

/// Shared symbolic workspace for one model: the analysis universe
///   inverses v (and fraction auxiliaries) > faults > slots > parameters
/// under plain lex, which is the elimination order the construction needs.
class AnalysisContext {
 public:
  explicit AnalysisContext(const ExhaustiveSummary& summary);

  const ExhaustiveSummary& summary() const { return summary_; }
  const polycore::VarUniverse::Ptr& universe() const { return universe_; }
  const polycore::MonomialOrder& order() const { return order_; }

  std::size_t fault_count() const { return fault_vars_.size(); }
  const std::vector<std::size_t>& fault_vars() const { return fault_vars_; }
  const std::vector<std::size_t>& slot_vars() const { return slot_vars_; }
  const std::vector<std::size_t>& param_vars() const { return param_vars_; }
  std::size_t inverse_var(std::size_t fault_idx) const {
    return v_vars_.at(fault_idx);
  }
  // slot/param indices, the subring the signature lives in
  const std::vector<std::size_t>& signature_vars() const { return sig_vars_; }

  // Lifted summary coefficient of slot k.
  const polycore::Polynomial& gamma(std::size_t k) const { return gammas_.at(k); }
  // Lifted auxiliary relations w*den - 1 (part of every pattern ideal).
  const std::vector<polycore::Polynomial>& aux_relations() const {
    return aux_relations_;
  }

  // Generators of the pattern ideal: gamma_k - slot_k for every slot, the
  // auxiliary relations, v_i*f_i - 1 for active faults and f_i for the
  // inactive ones.
  std::vector<polycore::Polynomial> build_e_n(FaultPattern pattern) const;

  polycore::GroebnerBasis pattern_basis(FaultPattern pattern) const;

  // Basis elements lying in R[slots, params]; generates the elimination
  // ideal of the pattern.
  std::vector<polycore::Polynomial> signature_candidates(
      const polycore::GroebnerBasis& pattern_basis) const;

 private:
  ExhaustiveSummary summary_;
  polycore::VarUniverse::Ptr universe_;
  polycore::MonomialOrder order_;
  std::vector<std::size_t> v_vars_;      // per fault
  std::vector<std::size_t> fault_vars_;  // analysis indices
  std::vector<std::size_t> slot_vars_;
  std::vector<std::size_t> param_vars_;
  std::vector<std::size_t> sig_vars_;
  std::vector<polycore::Polynomial> gammas_;
  std::vector<polycore::Polynomial> aux_relations_;
};

struct SignatureComponent {
  polycore::Polynomial poly;              // in R[slots, params], monic
  std::vector<FaultPattern> provenance;   // patterns whose basis contributed
};

struct AlgebraicSignature {
  std::vector<SignatureComponent> components;
};

struct SignatureOptions {
  ExecMode exec = ExecMode::openmp;
  std::size_t max_faults = 8;  // guard on the 2^e pattern loop
};

struct SignatureResult {
  AlgebraicSignature signature;
  std::vector<FaultPattern> patterns;                 // (size, mask) order
  std::vector<polycore::GroebnerBasis> pattern_bases; // same order
  bool empty_signature = false;  // structured warning, not a failure
};

/// The signature construction: per pattern, a Groebner basis of the pattern
/// ideal under the elimination order, its restriction to R[slots, params];
/// the union minus the polynomials vanishing for every pattern, made
/// canonical. Deterministic; serial and OpenMP paths agree exactly.
SignatureResult algebraic_signature(const AnalysisContext& ctx,
                                    const SignatureOptions& options = {});

/// Monic with respect to the slot-major order, deduplicated (provenance
/// merged), sorted by (total degree, term sequence). Idempotent.
AlgebraicSignature canonicalize(const AnalysisContext& ctx,
                                AlgebraicSignature sig);

}  // namespace fd::siggen

#endif
