#include "fd/sigtable/table.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fd::sigtable {

using polycore::GroebnerBasis;
using polycore::Polynomial;
using polycore::Rational;
using siggen::AnalysisContext;
using siggen::FaultPattern;

const char* cell_kind_symbol(CellKind k) {
  switch (k) {
    case CellKind::Zero: return "0";
    case CellKind::NonZero: return "!0";
    case CellKind::MayVanish: return "?";
  }
  return "?";
}

const char* cert_tag_name(CertTag t) {
  switch (t) {
    case CertTag::ideal_membership: return "ideal-membership";
    case CertTag::gb_unit_certificate: return "gb-unit-certificate";
    case CertTag::numeric_witness_pair: return "numeric-witness-pair";
    case CertTag::exhausted_search: return "exhausted-search";
  }
  return "?";
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = seed ^ (a * 0x9E3779B97F4A7C15ULL) ^ (b + 0xD1B54A32D192ED03ULL);
  x ^= x >> 33; x *= 0xFF51AFD7ED558CCDULL;
  x ^= x >> 33; x *= 0xC4CEB9FE1A85EC53ULL;
  x ^= x >> 33;
  return x;
}

std::vector<std::size_t> pattern_zero_faults(const AnalysisContext& ctx,
                                             FaultPattern pattern) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ctx.fault_count(); ++i)
    if (!pattern.contains(i)) out.push_back(ctx.fault_vars()[i]);
  return out;
}

std::vector<std::size_t> pattern_nonzero_faults(const AnalysisContext& ctx,
                                                FaultPattern pattern) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ctx.fault_count(); ++i)
    if (pattern.contains(i)) out.push_back(ctx.fault_vars()[i]);
  return out;
}

// Constraint equations can join any unit-certificate ideal soundly: a basis
// equal to {1} still means no common zero, now subject to those equations.
void append_constraint_equations(const AnalysisContext& ctx,
                                 const ConstraintSet& constraints,
                                 std::vector<Polynomial>& gens) {
  for (const auto& c : constraints.items())
    if (c.rel == Rel::eq) gens.push_back(c.poly.lifted_to(ctx.universe()));
}

}  // namespace

CellValue cell_value(const AnalysisContext& ctx,
                     const GroebnerBasis& pattern_basis, FaultPattern pattern,
                     const Polynomial& component,
                     const ConstraintSet& constraints, const WitnessConfig& cfg,
                     std::uint64_t cell_seed) {
  CellValue cell;

  // (a) exact membership in the pattern ideal
  if (polycore::in_ideal(component, pattern_basis)) {
    cell.kind = CellKind::Zero;
    cell.tag = CertTag::ideal_membership;
    return cell;
  }

  // (b) unit-basis certificate: no common zero of the pattern ideal and the
  // component, hence the component never vanishes on the pattern's set
  try {
    std::vector<Polynomial> gens = ctx.build_e_n(pattern);
    gens.push_back(component);
    append_constraint_equations(ctx, constraints, gens);
    GroebnerBasis gb = polycore::groebner_basis(gens, ctx.order());
    if (gb.is_unit()) {
      cell.kind = CellKind::NonZero;
      cell.tag = CertTag::gb_unit_certificate;
      return cell;
    }
  } catch (const polycore::GroebnerBlowupError& e) {
    cell.diagnostic = std::string("unit certificate skipped: ") + e.what();
  }

  // (c) bounded numeric witness search
  WitnessSearch search(ctx, constraints, pattern_zero_faults(ctx, pattern),
                       pattern_nonzero_faults(ctx, pattern), component, cfg,
                       cell_seed, "pattern " + pattern.label());
  SearchOutcome out = search.run();
  cell.search_margin = out.min_rel;
  if (!cell.diagnostic.empty() && !out.diagnostic.empty())
    cell.diagnostic += "; ";
  cell.diagnostic += out.diagnostic;

  switch (out.verdict) {
    case SearchVerdict::witness_pair:
      cell.kind = CellKind::MayVanish;
      cell.tag = CertTag::numeric_witness_pair;
      cell.zero_witness = out.zero_witness;
      cell.nonzero_witness = out.nonzero_witness;
      break;
    case SearchVerdict::zero_only:
      cell.kind = CellKind::MayVanish;
      cell.tag = CertTag::exhausted_search;
      cell.zero_witness = out.zero_witness;
      if (cell.diagnostic.empty())
        cell.diagnostic = "vanishing point found but no robust nonzero sample";
      break;
    case SearchVerdict::all_near_zero:
      // Zero may not be concluded without a certificate.
      cell.kind = CellKind::MayVanish;
      cell.tag = CertTag::exhausted_search;
      break;
    case SearchVerdict::no_zero_found:
      cell.kind = CellKind::NonZero;
      cell.tag = CertTag::exhausted_search;
      cell.nonzero_witness = out.nonzero_witness;
      break;
  }
  return cell;
}

SignatureTable build_table(const AnalysisContext& ctx,
                           const siggen::SignatureResult& sig,
                           const ConstraintSet& constraints,
                           const WitnessConfig& cfg, ExecMode exec) {
  if (sig.signature.components.empty())
    throw std::invalid_argument("cannot tabulate an empty signature");

  SignatureTable table;
  table.rows = sig.patterns;
  table.columns = sig.signature.components.size();
  table.cells.assign(table.rows.size(),
                     std::vector<CellValue>(table.columns));

  // Syntactic input-independence: no slot with the input flag occurs.
  for (std::size_t c = 0; c < table.columns; ++c) {
    bool indep = true;
    const auto& poly = sig.signature.components[c].poly;
    for (auto v : poly.support()) {
      for (std::size_t k = 0; k < ctx.slot_vars().size(); ++k)
        if (ctx.slot_vars()[k] == v &&
            ctx.summary().entries()[k].depends_on_input)
          indep = false;
    }
    table.input_independent.push_back(indep);
  }

  const std::size_t total = table.rows.size() * table.columns;
  std::vector<std::string> errors(total);
  std::vector<bool> failed(total, false);

  auto run_cell = [&](std::size_t flat) {
    std::size_t r = flat / table.columns, c = flat % table.columns;
    try {
      table.cells[r][c] = cell_value(
          ctx, sig.pattern_bases[r], table.rows[r],
          sig.signature.components[c].poly, constraints, cfg,
          mix_seed(cfg.seed, r, c));
    } catch (const std::exception& e) {
      failed[flat] = true;
      errors[flat] = e.what();
    }
  };

  if (exec == ExecMode::openmp) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i)
      run_cell(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < total; ++i) run_cell(i);
  }

  for (std::size_t i = 0; i < total; ++i)
    if (failed[i])
      throw CellError(table.rows[i / table.columns].label(),
                      i % table.columns, errors[i]);

  // The no-fault row must be all Zero (exact membership).
  for (std::size_t c = 0; c < table.columns; ++c)
    if (table.cells[0][c].kind != CellKind::Zero)
      throw CellError(table.rows[0].label(), c,
                      "no-fault row expected Zero in every column");
  return table;
}

Criterion3Report criterion3_check(const AnalysisContext& ctx,
                                  const siggen::SignatureResult& sig,
                                  std::size_t component_idx,
                                  std::size_t fault_idx,
                                  const ConstraintSet& constraints,
                                  const WitnessConfig& cfg) {
  const Polynomial& comp = sig.signature.components.at(component_idx).poly;
  const std::size_t f_var = ctx.fault_vars().at(fault_idx);
  const auto& u = ctx.universe();
  Criterion3Report rep;
  std::ostringstream detail;

  // Base relations: gamma_k - slot_k and the fraction inverses; all faults
  // free.
  auto base_gens = [&]() {
    std::vector<Polynomial> gens;
    for (std::size_t k = 0; k < ctx.slot_vars().size(); ++k)
      gens.push_back(ctx.gamma(k) -
                     Polynomial::variable(u, ctx.slot_vars()[k]));
    for (const auto& r : ctx.aux_relations()) gens.push_back(r);
    append_constraint_equations(ctx, constraints, gens);
    return gens;
  };

  enum class SetState { empty_cert, empty_heuristic, nonempty, unknown };

  // Set 1: { comp = 0, f_i != 0 }
  SetState s1 = SetState::unknown;
  {
    std::vector<Polynomial> gens = base_gens();
    gens.push_back(comp);
    Polynomial v = Polynomial::variable(u, ctx.inverse_var(fault_idx));
    Polynomial f = Polynomial::variable(u, f_var);
    gens.push_back(v * f - Polynomial::constant(u, Rational(1)));
    try {
      if (polycore::groebner_basis(gens, ctx.order()).is_unit())
        s1 = SetState::empty_cert;
    } catch (const polycore::GroebnerBlowupError&) {}
    if (s1 == SetState::unknown) {
      WitnessSearch search(ctx, constraints, {}, {f_var}, comp, cfg,
                           mix_seed(cfg.seed, 101 + component_idx, fault_idx),
                           "criterion-3 set 1");
      SearchOutcome out = search.run();
      if (out.zero_witness && out.zero_witness->exact)
        s1 = SetState::nonempty;
      else if (out.zero_witness)
        s1 = SetState::nonempty;  // numeric interior minimum
      else if (out.verdict == SearchVerdict::no_zero_found &&
               out.min_rel > cfg.nonzero_rel)
        s1 = SetState::empty_heuristic;
    }
  }

  // Set 2: { comp != 0, f_i = 0 }
  SetState s2 = SetState::unknown;
  {
    std::vector<Polynomial> gens = base_gens();
    gens.push_back(Polynomial::variable(u, f_var));
    Polynomial vc = Polynomial::variable(u, *u->index_of("_inv_sig"));
    gens.push_back(vc * comp - Polynomial::constant(u, Rational(1)));
    try {
      if (polycore::groebner_basis(gens, ctx.order()).is_unit())
        s2 = SetState::empty_cert;
    } catch (const polycore::GroebnerBlowupError&) {}
    if (s2 == SetState::unknown) {
      WitnessSearch search(ctx, constraints, {f_var}, {}, comp, cfg,
                           mix_seed(cfg.seed, 202 + component_idx, fault_idx),
                           "criterion-3 set 2");
      SearchOutcome out = search.run();
      if (out.nonzero_witness && out.max_rel > cfg.nonzero_rel)
        s2 = SetState::nonempty;
      else if (out.max_rel < cfg.near_zero_rel)
        s2 = SetState::empty_heuristic;
    }
  }

  auto name = [](SetState s) {
    switch (s) {
      case SetState::empty_cert: return "empty (certificate)";
      case SetState::empty_heuristic: return "empty (exhausted search)";
      case SetState::nonempty: return "nonempty (witness)";
      case SetState::unknown: return "unknown";
    }
    return "?";
  };
  detail << "{ASig=0, f!=0}: " << name(s1) << "; {ASig!=0, f=0}: " << name(s2);
  rep.detail = detail.str();

  if (s1 == SetState::nonempty || s2 == SetState::nonempty)
    rep.outcome = Criterion3Outcome::fails;
  else if ((s1 == SetState::empty_cert || s1 == SetState::empty_heuristic) &&
           (s2 == SetState::empty_cert || s2 == SetState::empty_heuristic))
    rep.outcome = Criterion3Outcome::holds;
  else
    rep.outcome = Criterion3Outcome::undecided;
  return rep;
}

const char* overall_verdict_name(OverallVerdict v) {
  switch (v) {
    case OverallVerdict::input_strong:
      return "input-strongly algebraically diagnosable";
    case OverallVerdict::strong_given_input_dependence:
      return "algebraically diagnosable (input-dependent columns required)";
    case OverallVerdict::undecided:
      return "undecided";
  }
  return "?";
}

DiagnosabilityVerdict diagnosability_verdict(const SignatureTable& table) {
  DiagnosabilityVerdict verdict;
  const std::size_t n = table.rows.size();
  bool all_pairs = true, all_pairs_input_indep = true;

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      PairVerdict pv;
      pv.row_a = a;
      pv.row_b = b;
      for (std::size_t c = 0; c < table.columns; ++c) {
        CellKind ka = table.cells[a][c].kind, kb = table.cells[b][c].kind;
        bool opposed = (ka == CellKind::Zero && kb == CellKind::NonZero) ||
                       (ka == CellKind::NonZero && kb == CellKind::Zero);
        if (opposed) {
          pv.separating_columns.push_back(c);
          if (table.input_independent[c])
            pv.input_independent_columns.push_back(c);
        }
      }
      if (!pv.discriminable()) all_pairs = false;
      if (pv.input_independent_columns.empty()) all_pairs_input_indep = false;
      verdict.pairs.push_back(std::move(pv));
    }
  }

  verdict.detectable.assign(n, false);
  for (const auto& pv : verdict.pairs)
    if (pv.row_a == 0 && pv.discriminable()) verdict.detectable[pv.row_b] = true;

  if (all_pairs_input_indep)
    verdict.overall = OverallVerdict::input_strong;
  else if (all_pairs)
    verdict.overall = OverallVerdict::strong_given_input_dependence;
  else
    verdict.overall = OverallVerdict::undecided;
  return verdict;
}

std::string render_markdown(const SignatureTable& table) {
  std::ostringstream os;
  os << "| f |";
  for (std::size_t c = 0; c < table.columns; ++c) os << " ASig" << (c + 1) << " |";
  os << "\n|---|";
  for (std::size_t c = 0; c < table.columns; ++c) os << "---|";
  os << "\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << "| f_" << table.rows[r].label() << " |";
    for (std::size_t c = 0; c < table.columns; ++c)
      os << " " << cell_kind_symbol(table.cells[r][c].kind) << " |";
    os << "\n";
  }
  return os.str();
}

std::string render_csv(const SignatureTable& table) {
  std::ostringstream os;
  os << "pattern";
  for (std::size_t c = 0; c < table.columns; ++c) os << ",ASig" << (c + 1);
  os << "\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << table.rows[r].label();
    for (std::size_t c = 0; c < table.columns; ++c)
      os << "," << cell_kind_symbol(table.cells[r][c].kind);
    os << "\n";
  }
  return os.str();
}

}  // namespace fd::sigtable
