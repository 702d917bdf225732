#include "fd/siggen/signature.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fd::siggen {

using polycore::GroebnerBasis;
using polycore::Monomial;
using polycore::MonomialOrder;
using polycore::Polynomial;
using polycore::Rational;
using polycore::VarClass;
using polycore::VarUniverse;

namespace {

// Elimination order by construction: inverses and fraction auxiliaries
// first, then faults, then slots, then parameters; declaration order within
// each block. "_inv_sig" is reserved for nonvanishing certificates on
// signature components.
VarUniverse::Ptr build_analysis_universe(const ExhaustiveSummary& summary) {
  const auto& mu = *summary.model_universe();
  std::vector<std::pair<std::string, VarClass>> vars;
  vars.push_back({"_inv_sig", VarClass::auxiliary});
  for (auto f : summary.fault_vars())
    vars.push_back({"_inv_" + mu.name(f), VarClass::auxiliary});
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (mu.var_class(i) == VarClass::auxiliary)
      vars.push_back({mu.name(i), VarClass::auxiliary});
  for (auto f : summary.fault_vars())
    vars.push_back({mu.name(f), VarClass::fault});
  for (const auto& e : summary.entries())
    vars.push_back({e.slot, VarClass::summary_slot});
  for (auto p : summary.param_vars())
    vars.push_back({mu.name(p), VarClass::parameter});
  return VarUniverse::make(std::move(vars));
}

}  // namespace

AnalysisContext::AnalysisContext(const ExhaustiveSummary& summary)
    : summary_(summary),
      universe_(build_analysis_universe(summary)),
      order_(MonomialOrder::lex(universe_->size())) {
  const auto& mu = *summary.model_universe();

  for (auto f : summary.fault_vars()) {
    v_vars_.push_back(*universe_->index_of("_inv_" + mu.name(f)));
    fault_vars_.push_back(*universe_->index_of(mu.name(f)));
  }
  for (const auto& e : summary.entries())
    slot_vars_.push_back(*universe_->index_of(e.slot));
  for (auto p : summary.param_vars())
    param_vars_.push_back(*universe_->index_of(mu.name(p)));
  sig_vars_ = slot_vars_;
  sig_vars_.insert(sig_vars_.end(), param_vars_.begin(), param_vars_.end());

  for (const auto& e : summary.entries())
    gammas_.push_back(e.gamma.lifted_to(universe_));
  for (const auto& a : summary.aux_inverses()) {
    Polynomial den = a.denominator.lifted_to(universe_);
    Polynomial w = Polynomial::variable(
        universe_, *universe_->index_of(mu.name(a.var)));
    aux_relations_.push_back(w * den -
                             Polynomial::constant(universe_, Rational(1)));
  }
}

std::vector<Polynomial> AnalysisContext::build_e_n(FaultPattern pattern) const {
  for (std::size_t i = 0; i < 32; ++i)
    if (pattern.contains(i) && i >= fault_count())
      throw std::invalid_argument("pattern references undeclared fault");

  std::vector<Polynomial> gens;
  const Polynomial one = Polynomial::constant(universe_, Rational(1));
  for (std::size_t k = 0; k < gammas_.size(); ++k)
    gens.push_back(gammas_[k] - Polynomial::variable(universe_, slot_vars_[k]));
  for (const auto& r : aux_relations_) gens.push_back(r);
  for (std::size_t i = 0; i < fault_count(); ++i) {
    Polynomial f = Polynomial::variable(universe_, fault_vars_[i]);
    if (pattern.contains(i)) {
      Polynomial v = Polynomial::variable(universe_, v_vars_[i]);
      gens.push_back(v * f - one);
    } else {
      gens.push_back(f);
    }
  }
  return gens;
}

GroebnerBasis AnalysisContext::pattern_basis(FaultPattern pattern) const {
  return polycore::groebner_basis(build_e_n(pattern), order_);
}

std::vector<Polynomial> AnalysisContext::signature_candidates(
    const GroebnerBasis& pattern_basis) const {
  return polycore::eliminate(pattern_basis, sig_vars_);
}

namespace {

Polynomial slot_monic(const AnalysisContext& ctx, const Polynomial& p) {
  return p.monic(ctx.order());
}

}  // namespace

AlgebraicSignature canonicalize(const AnalysisContext& ctx,
                                AlgebraicSignature sig) {
  for (auto& c : sig.components) {
    c.poly = slot_monic(ctx, c.poly);
    std::sort(c.provenance.begin(), c.provenance.end(),
              [](FaultPattern a, FaultPattern b) {
                if (a.size() != b.size()) return a.size() < b.size();
                return a.mask < b.mask;
              });
    c.provenance.erase(std::unique(c.provenance.begin(), c.provenance.end()),
                       c.provenance.end());
  }
  // Dedupe, merging provenance.
  std::vector<SignatureComponent> uniq;
  for (auto& c : sig.components) {
    auto it = std::find_if(uniq.begin(), uniq.end(), [&](const auto& u) {
      return u.poly == c.poly;
    });
    if (it == uniq.end()) {
      uniq.push_back(std::move(c));
    } else {
      for (auto p : c.provenance)
        if (std::find(it->provenance.begin(), it->provenance.end(), p) ==
            it->provenance.end())
          it->provenance.push_back(p);
      std::sort(it->provenance.begin(), it->provenance.end(),
                [](FaultPattern a, FaultPattern b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a.mask < b.mask;
                });
    }
  }
  std::sort(uniq.begin(), uniq.end(), [&](const auto& a, const auto& b) {
    return polycore::compare_polynomials(a.poly, b.poly, ctx.order()) < 0;
  });
  return AlgebraicSignature{std::move(uniq)};
}

SignatureResult algebraic_signature(const AnalysisContext& ctx,
                                    const SignatureOptions& options) {
  const std::size_t e = ctx.fault_count();
  if (e > options.max_faults)
    throw std::invalid_argument(
        "fault count " + std::to_string(e) + " exceeds the pattern cap " +
        std::to_string(options.max_faults));

  SignatureResult result;
  result.patterns = all_patterns(e);
  const std::size_t n = result.patterns.size();
  std::vector<GroebnerBasis> bases(n, GroebnerBasis({}, ctx.order()));

  if (options.exec == ExecMode::openmp) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
      bases[static_cast<std::size_t>(i)] =
          ctx.pattern_basis(result.patterns[static_cast<std::size_t>(i)]);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      bases[i] = ctx.pattern_basis(result.patterns[i]);
  }

  // Union of the per-pattern elimination generators, in pattern order.
  AlgebraicSignature sig;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& g : ctx.signature_candidates(bases[i]))
      sig.components.push_back({g, {result.patterns[i]}});
  }
  sig = canonicalize(ctx, std::move(sig));

  // Drop components vanishing for every pattern (members of every pattern
  // ideal).
  std::vector<SignatureComponent> kept;
  for (auto& c : sig.components) {
    bool in_all = true;
    for (const auto& b : bases)
      if (!polycore::in_ideal(c.poly, b)) {
        in_all = false;
        break;
      }
    if (!in_all) kept.push_back(std::move(c));
  }
  sig.components = std::move(kept);

  result.signature = std::move(sig);
  result.pattern_bases = std::move(bases);
  result.empty_signature = result.signature.components.empty();
  return result;
}

}  // namespace fd::siggen
