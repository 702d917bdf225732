#include "fd/sigtable/witness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fd/polycore/numeric.hpp"

namespace fd::sigtable {

using polycore::CompiledPoly;
using polycore::Monomial;
using polycore::Polynomial;
using polycore::Rational;
using polycore::VarClass;

namespace {

constexpr std::uint32_t kTickBits = 20;
constexpr std::uint32_t kTickMax = (1u << kTickBits);

double shrink_amount(double bound, const WitnessConfig& cfg) {
  return std::max(cfg.strict_margin_abs, cfg.strict_margin_rel * std::fabs(bound));
}

Rational make_ratio(long num, unsigned long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational shrink_amount_q(const Rational& bound, const WitnessConfig& cfg) {
  Rational a(1, 1000);  // matches strict_margin_abs default
  Rational b = abs(bound) / 100;
  return a > b ? a : b;
}

// sqrt of a nonnegative rational if it is rational, else nullopt.
std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class &num = q.get_num(), &den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

// Nearby rational with a small denominator (continued fractions).
std::optional<Rational> rationalize(double x, double tol = 1e-9,
                                    long max_den = 1000000) {
  if (!std::isfinite(x)) return std::nullopt;
  double a = x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(a);
    if (fl > 1e17 || fl < -1e17) return std::nullopt;
    long ai = static_cast<long>(fl);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::fabs(approx - x) <= tol * std::max(1.0, std::fabs(x)))
      return make_ratio(p1, static_cast<unsigned long>(q1));
    double frac = a - fl;
    if (frac < 1e-15) break;
    a = 1.0 / frac;
  }
  if (q1 != 0) {
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::fabs(approx - x) <= tol * std::max(1.0, std::fabs(x)))
      return make_ratio(p1, static_cast<unsigned long>(q1));
  }
  return std::nullopt;
}

}  // namespace

WitnessSearch::WitnessSearch(const siggen::AnalysisContext& ctx,
                             const ConstraintSet& constraints,
                             const std::vector<std::size_t>& zero_faults,
                             const std::vector<std::size_t>& nonzero_faults,
                             const Polynomial& component,
                             const WitnessConfig& cfg, std::uint64_t seed,
                             std::string region_label)
    : ctx_(ctx),
      constraints_(constraints),
      zero_faults_(zero_faults),
      nonzero_faults_(nonzero_faults),
      composed_(polycore::Polynomial::zero(ctx.universe())),
      cfg_(cfg),
      seed_(seed),
      label_(std::move(region_label)) {
  const auto& u = ctx_.universe();

  // Compose: slots -> gammas, forced-zero faults -> 0.
  std::vector<const Polynomial*> repl(u->size(), nullptr);
  for (std::size_t k = 0; k < ctx_.slot_vars().size(); ++k)
    repl[ctx_.slot_vars()[k]] = &ctx_.gamma(k);
  Polynomial zero = Polynomial::zero(u);
  for (auto f : zero_faults_) repl[f] = &zero;
  composed_ = component.substituted(repl);
  // Gammas may themselves contain forced-zero faults.
  composed_ = composed_.substituted(repl);

  for (auto v : composed_.support())
    if (u->var_class(v) == VarClass::auxiliary) has_aux_ = true;

  for (const auto& a : ctx_.summary().aux_inverses()) {
    aux_vars_.push_back(
        *u->index_of(ctx_.summary().model_universe()->name(a.var)));
    aux_dens_lifted_.push_back(a.denominator.lifted_to(u));
  }

  for (const auto& c : constraints_.items()) {
    lifted_constraints_.push_back(c.poly.lifted_to(u));
    lifted_rels_.push_back(c.rel);
  }
  derive_boxes();
}

void WitnessSearch::derive_boxes() {
  const auto& u = ctx_.universe();
  std::vector<bool> fixed_zero(u->size(), false);
  for (auto f : zero_faults_) fixed_zero[f] = true;
  std::vector<bool> must_nonzero(u->size(), false);
  for (auto f : nonzero_faults_) must_nonzero[f] = true;

  auto add_free = [&](std::size_t var, double lo, double hi, Rational lo_q,
                      Rational hi_q, bool excl) {
    free_vars_.push_back({var, lo, hi, std::move(lo_q), std::move(hi_q), excl});
  };

  for (auto p : ctx_.param_vars()) {
    double m = cfg_.strict_margin_abs;
    add_free(p, m, cfg_.param_box_hi, Rational(1, 1000),
             Rational(static_cast<long>(cfg_.param_box_hi)), false);
  }
  for (auto f : ctx_.fault_vars()) {
    if (fixed_zero[f]) continue;
    double w = cfg_.fault_box_halfwidth;
    add_free(f, -w, w, Rational(-static_cast<long>(w)),
             Rational(static_cast<long>(w)), must_nonzero[f]);
  }

  // Refine with univariate degree-1 constraints; everything else stays in
  // the rejection test.
  for (std::size_t ci = 0; ci < lifted_constraints_.size(); ++ci) {
    const Polynomial& g = lifted_constraints_[ci];
    Rel rel = lifted_rels_[ci];
    auto sup = g.support();
    if (sup.size() != 1 || g.total_degree() != 1) continue;
    std::size_t var = sup[0];
    auto it = std::find_if(free_vars_.begin(), free_vars_.end(),
                           [&](const FreeVar& fv) { return fv.var == var; });
    if (it == free_vars_.end()) continue;
    // g = a*x + b
    Rational a(0), b(0);
    for (const auto& t : g.terms()) {
      if (t.mono.is_constant())
        b = t.coeff;
      else
        a = t.coeff;
    }
    if (sgn(a) == 0) continue;
    Rational bound = -b / a;
    // a*x + b REL 0  <=>  x REL' bound (flip for negative a)
    bool flip = sgn(a) < 0;
    Rel r = rel;
    if (flip) {
      if (r == Rel::lt) r = Rel::gt;
      else if (r == Rel::le) r = Rel::ge;
      else if (r == Rel::gt) r = Rel::lt;
      else if (r == Rel::ge) r = Rel::le;
    }
    double bd = polycore::to_double(bound);
    switch (r) {
      case Rel::le:
        if (bd < it->hi) { it->hi = bd; it->hi_q = bound; }
        break;
      case Rel::lt: {
        double s = shrink_amount(bd, cfg_);
        if (bd - s < it->hi) { it->hi = bd - s; it->hi_q = bound - shrink_amount_q(bound, cfg_); }
        break;
      }
      case Rel::ge:
        if (bd > it->lo) { it->lo = bd; it->lo_q = bound; }
        break;
      case Rel::gt: {
        double s = shrink_amount(bd, cfg_);
        if (bd + s > it->lo) { it->lo = bd + s; it->lo_q = bound + shrink_amount_q(bound, cfg_); }
        break;
      }
      case Rel::eq:
        it->lo = it->hi = bd;
        it->lo_q = it->hi_q = bound;
        break;
      case Rel::ne:
        if (sgn(bound) == 0) it->exclude_zero = true;
        break;
    }
  }
}

bool WitnessSearch::feasible_double(std::span<const double> point) const {
  for (std::size_t i = 0; i < lifted_constraints_.size(); ++i) {
    double v = lifted_constraints_[i].eval_double(point);
    switch (lifted_rels_[i]) {
      case Rel::eq: if (v != 0.0) return false; break;
      case Rel::ne: if (v == 0.0) return false; break;
      case Rel::lt: if (!(v < 0)) return false; break;
      case Rel::le: if (!(v <= 0)) return false; break;
      case Rel::gt: if (!(v > 0)) return false; break;
      case Rel::ge: if (!(v >= 0)) return false; break;
    }
  }
  return true;
}

bool WitnessSearch::feasible_exact(
    std::span<const Rational> point) const {
  static const Rational zero(0);
  for (std::size_t i = 0; i < lifted_constraints_.size(); ++i) {
    Rational v = lifted_constraints_[i].eval_rational(point);
    switch (lifted_rels_[i]) {
      case Rel::eq: if (v != zero) return false; break;
      case Rel::ne: if (v == zero) return false; break;
      case Rel::lt: if (!(v < zero)) return false; break;
      case Rel::le: if (!(v <= zero)) return false; break;
      case Rel::gt: if (!(v > zero)) return false; break;
      case Rel::ge: if (!(v >= zero)) return false; break;
    }
  }
  for (auto f : nonzero_faults_)
    if (point[f] == zero) return false;
  return true;
}

SearchOutcome WitnessSearch::run() {
  const auto& u = ctx_.universe();
  const std::size_t nv = u->size();
  SearchOutcome out;

  CompiledPoly F(composed_);
  const std::vector<std::size_t>& aux_vars = aux_vars_;
  std::vector<CompiledPoly> aux_dens;
  std::vector<const Polynomial*> aux_den_polys;
  for (const auto& den : aux_dens_lifted_) {
    aux_dens.emplace_back(den);
    aux_den_polys.push_back(&den);
  }

  std::mt19937_64 rng(seed_);
  auto draw_tick = [&]() -> std::uint32_t {
    return static_cast<std::uint32_t>(rng() & (kTickMax - 1));
  };

  std::vector<double> point(nv, 0.0);
  struct Candidate {
    std::vector<std::uint32_t> ticks;
    double value, rel;
  };
  std::vector<Candidate> best_zero;  // ascending rel
  Candidate best_nonzero{{}, 0.0, -1.0};
  std::vector<std::uint32_t> ticks(free_vars_.size());

  auto tick_value = [&](const FreeVar& fv, std::uint32_t t) {
    return fv.lo + (fv.hi - fv.lo) * (static_cast<double>(t) / kTickMax);
  };
  auto tick_value_q = [&](const FreeVar& fv, std::uint32_t t) -> Rational {
    return fv.lo_q + (fv.hi_q - fv.lo_q) * make_ratio(t, kTickMax);
  };

  auto eval_point = [&](std::vector<double>& pt) -> std::optional<std::pair<double, double>> {
    // fill aux inverses; reject near-singular denominators
    for (std::size_t k = 0; k < aux_vars.size(); ++k) {
      double d = aux_dens[k].eval(pt);
      if (std::fabs(d) < 1e-12) return std::nullopt;
      pt[aux_vars[k]] = 1.0 / d;
    }
    if (!feasible_double(pt)) return std::nullopt;
    double scale = 0;
    double v = F.eval_scaled(pt, scale);
    double rel = std::fabs(v) / (1e-300 + scale);
    return std::make_pair(v, rel);
  };

  const std::size_t K = cfg_.samples;
  for (std::size_t s = 0; s < K; ++s) {
    bool ok = true;
    for (std::size_t j = 0; j < free_vars_.size(); ++j) {
      const FreeVar& fv = free_vars_[j];
      std::uint32_t t = 0;
      double v = 0;
      bool found = false;
      for (int attempt = 0; attempt < 64; ++attempt) {
        t = draw_tick();
        v = tick_value(fv, t);
        if (fv.exclude_zero && std::fabs(v) < cfg_.active_fault_min) continue;
        found = true;
        break;
      }
      if (!found) { ok = false; break; }
      ticks[j] = t;
      point[fv.var] = v;
    }
    if (!ok) continue;
    auto ev = eval_point(point);
    if (!ev) continue;
    auto [v, rel] = *ev;
    ++out.feasible;
    out.min_rel = std::min(out.min_rel, rel);
    out.max_rel = std::max(out.max_rel, rel);
    if (rel > best_nonzero.rel) best_nonzero = {ticks, v, rel};
    if (best_zero.size() < cfg_.exact_candidates ||
        rel < best_zero.back().rel) {
      best_zero.push_back({ticks, v, rel});
      std::sort(best_zero.begin(), best_zero.end(),
                [](const Candidate& a, const Candidate& b) {
                  return a.rel < b.rel;
                });
      if (best_zero.size() > cfg_.exact_candidates) best_zero.pop_back();
    }
  }

  if (out.feasible == 0) throw InfeasibleRegionError(label_);

  auto exact_point_of = [&](const std::vector<std::uint32_t>& tk) {
    std::vector<Rational> pt(nv, Rational(0));
    for (std::size_t j = 0; j < free_vars_.size(); ++j)
      pt[free_vars_[j].var] = tick_value_q(free_vars_[j], tk[j]);
    return pt;
  };

  auto fill_aux_exact = [&](std::vector<Rational>& pt) -> bool {
    for (std::size_t k = 0; k < aux_vars.size(); ++k) {
      Rational d = aux_den_polys[k]->eval_rational(pt);
      if (sgn(d) == 0) return false;
      pt[aux_vars[k]] = Rational(1) / d;
    }
    return true;
  };

  auto describe = [&](std::span<const Rational> pt, bool exact, double value,
                      double rel, std::string note) {
    WitnessPoint w;
    w.exact = exact;
    w.component_value = value;
    w.rel = rel;
    w.note = std::move(note);
    for (const auto& fv : free_vars_) {
      double d = polycore::to_double(pt[fv.var]);
      w.assignment.push_back({u->name(fv.var), d});
      if (exact)
        w.exact_assignment.push_back(
            {u->name(fv.var), polycore::to_string(pt[fv.var])});
    }
    for (auto f : zero_faults_)
      w.assignment.push_back({u->name(f), 0.0});
    return w;
  };

  // Robust nonzero witness, verified exactly at its dyadic rational point.
  if (best_nonzero.rel >= cfg_.nonzero_rel) {
    auto pt = exact_point_of(best_nonzero.ticks);
    if (fill_aux_exact(pt) && feasible_exact(pt)) {
      Rational v = composed_.eval_rational(pt);
      if (sgn(v) != 0)
        out.nonzero_witness = describe(pt, true, polycore::to_double(v),
                                       best_nonzero.rel, "sampled");
    }
    if (!out.nonzero_witness) {
      // exact check failed (boundary rounding); keep the double evidence
      auto pt2 = exact_point_of(best_nonzero.ticks);
      out.nonzero_witness = describe(pt2, false, best_nonzero.value,
                                     best_nonzero.rel, "sampled (double)");
    }
  }

  // Exact vanishing witness: solve the restriction of the composed
  // polynomial to one variable at a time, from the best candidates.
  if (!has_aux_) {
    for (const auto& cand : best_zero) {
      if (out.zero_witness) break;
      auto base = exact_point_of(cand.ticks);
      auto fsup = composed_.support();
      for (auto xj : fsup) {
        if (out.zero_witness) break;
        const FreeVar* fv = nullptr;
        for (const auto& f : free_vars_)
          if (f.var == xj) { fv = &f; break; }
        if (!fv) continue;
        // univariate restriction in xj
        std::vector<Polynomial> consts;
        std::vector<const Polynomial*> repl(nv, nullptr);
        consts.reserve(fsup.size());
        for (auto v2 : fsup) {
          if (v2 == xj) continue;
          consts.push_back(Polynomial::constant(u, base[v2]));
          repl[v2] = &consts.back();
        }
        // consts may reallocate; rebuild pointers
        {
          std::size_t ci = 0;
          for (auto v2 : fsup) {
            if (v2 == xj) continue;
            repl[v2] = &consts[ci++];
          }
        }
        Polynomial uni = composed_.substituted(repl);
        // coefficients by power of xj
        Rational c0(0), c1(0), c2(0);
        bool high_degree = false;
        for (const auto& t : uni.terms()) {
          auto e = t.mono.exponent(xj);
          if (t.mono.total_degree() != e) { high_degree = true; break; }
          if (e == 0) c0 += t.coeff;
          else if (e == 1) c1 += t.coeff;
          else if (e == 2) c2 += t.coeff;
          else { high_degree = true; break; }
        }
        if (high_degree) continue;
        std::vector<Rational> roots;
        if (sgn(c2) == 0) {
          if (sgn(c1) != 0) roots.push_back(-c0 / c1);
        } else {
          Rational disc = c1 * c1 - Rational(4) * c2 * c0;
          auto sq = exact_sqrt(disc);
          if (sq) {
            roots.push_back((-c1 + *sq) / (Rational(2) * c2));
            roots.push_back((-c1 - *sq) / (Rational(2) * c2));
          }
        }
        for (const auto& r : roots) {
          if (r < fv->lo_q || r > fv->hi_q) continue;
          if (fv->exclude_zero && sgn(r) == 0) continue;
          auto pt = base;
          pt[xj] = r;
          if (!fill_aux_exact(pt)) continue;
          if (!feasible_exact(pt)) continue;
          Rational v = composed_.eval_rational(pt);
          if (sgn(v) != 0) continue;
          out.zero_witness =
              describe(pt, true, 0.0, 0.0, "exact root in " + u->name(xj));
          break;
        }
      }
    }
  }

  // Numeric fallback: coordinate descent on |F|/scale from the best sample.
  if (!out.zero_witness && !best_zero.empty() &&
      best_zero.front().rel < cfg_.nonzero_rel) {
    std::vector<double> x(nv, 0.0);
    for (std::size_t j = 0; j < free_vars_.size(); ++j)
      x[free_vars_[j].var] = tick_value(free_vars_[j], best_zero.front().ticks[j]);

    auto rel_at = [&](std::vector<double>& pt) -> double {
      auto ev = eval_point(pt);
      return ev ? ev->second : std::numeric_limits<double>::infinity();
    };

    double cur = rel_at(x);
    for (int sweep = 0; sweep < cfg_.descent_sweeps; ++sweep) {
      double before = cur;
      for (const auto& fv : free_vars_) {
        double save = x[fv.var];
        double best_v = save, best_rel = cur;
        auto consider = [&](double v) {
          if (v < fv.lo || v > fv.hi) return;
          if (fv.exclude_zero && std::fabs(v) < cfg_.active_fault_min) return;
          x[fv.var] = v;
          double r = rel_at(x);
          if (r < best_rel) { best_rel = r; best_v = v; }
        };
        int n = cfg_.descent_grid;
        for (int g = 0; g <= n; ++g)
          consider(fv.lo + (fv.hi - fv.lo) * g / n);
        // golden refinement around the best grid point
        double step = (fv.hi - fv.lo) / n;
        double a = best_v - step, b = best_v + step;
        for (int it = 0; it < 40; ++it) {
          double m1 = a + 0.382 * (b - a), m2 = a + 0.618 * (b - a);
          x[fv.var] = m1; double r1 = rel_at(x);
          x[fv.var] = m2; double r2 = rel_at(x);
          if (r1 < r2) b = m2; else a = m1;
          consider(0.5 * (a + b));
        }
        x[fv.var] = best_v;
        cur = best_rel;
      }
      if (cur >= before * 0.5 && sweep > 1) break;
      if (cur < cfg_.vanish_rel * 0.01) break;
    }
    out.min_rel = std::min(out.min_rel, cur);

    bool interior = true;
    for (const auto& fv : free_vars_) {
      double margin = (fv.hi - fv.lo) * 1e-3;
      double v = x[fv.var];
      if (v <= fv.lo + margin || v >= fv.hi - margin) interior = false;
      if (fv.exclude_zero && std::fabs(v) < cfg_.active_fault_min * 1.5)
        interior = false;
    }

    if (cur < cfg_.vanish_rel) {
      // Try to certify the located point exactly.
      std::vector<Rational> pt(nv, Rational(0));
      bool rational_ok = true;
      for (const auto& fv : free_vars_) {
        auto q = rationalize(x[fv.var]);
        if (!q) { rational_ok = false; break; }
        pt[fv.var] = *q;
      }
      if (rational_ok && fill_aux_exact(pt) && feasible_exact(pt) &&
          sgn(composed_.eval_rational(pt)) == 0) {
        out.zero_witness = describe(pt, true, 0.0, 0.0, "minimized, rationalized");
      } else if (interior) {
        std::vector<Rational> approx(nv, Rational(0));
        for (const auto& fv : free_vars_)
          approx[fv.var] = rationalize(x[fv.var], 1e-15).value_or(Rational(0));
        auto w = describe(approx, false, 0.0, cur, "numeric minimum");
        for (std::size_t j = 0; j < free_vars_.size(); ++j)
          w.assignment[j].second = x[free_vars_[j].var];
        out.zero_witness = w;
      }
    }
  }

  // Verdict.
  if (out.zero_witness) {
    out.verdict = out.nonzero_witness ? SearchVerdict::witness_pair
                                      : SearchVerdict::zero_only;
  } else if (out.max_rel < cfg_.near_zero_rel) {
    out.verdict = SearchVerdict::all_near_zero;
    out.diagnostic = "every feasible sample is numerically zero";
  } else {
    out.verdict = SearchVerdict::no_zero_found;
    if (out.min_rel < cfg_.nonzero_rel)
      out.diagnostic = "near-cancellation left unresolved (min rel " +
                       std::to_string(out.min_rel) + ")";
  }
  return out;
}

}  // namespace fd::sigtable
