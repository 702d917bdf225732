#include "fd/polycore/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fd::polycore {

namespace {

void require_same_universe(const Polynomial& a, const Polynomial& b) {
  if (a.universe() == b.universe()) return;
  if (a.universe() && b.universe() &&
      a.universe()->same_content(*b.universe()))
    return;
  throw std::invalid_argument("polynomials over different universes");
}

// Canonical term order: descending declaration-order lex.
bool canonical_before(const Monomial& a, const Monomial& b) {
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (ea[i] != eb[i]) return ea[i] > eb[i];
  return false;
}

std::vector<Term> canonicalize_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    return canonical_before(x.mono, y.mono);
  });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
      if (is_zero(out.back().coeff)) out.pop_back();
    } else if (!is_zero(t.coeff)) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

Polynomial Polynomial::zero(VarUniverse::Ptr u) {
  return Polynomial(std::move(u), {});
}

Polynomial Polynomial::constant(VarUniverse::Ptr u, Rational c) {
  std::vector<Term> t;
  if (!polycore::is_zero(c)) t.push_back({Monomial(u->size()), std::move(c)});
  return Polynomial(std::move(u), std::move(t));
}

Polynomial Polynomial::variable(VarUniverse::Ptr u, std::size_t var) {
  if (var >= u->size()) throw std::out_of_range("variable index");
  std::vector<std::uint32_t> e(u->size(), 0);
  e[var] = 1;
  std::vector<Term> t;
  t.push_back({Monomial(std::move(e)), Rational(1)});
  return Polynomial(std::move(u), std::move(t));
}

Polynomial Polynomial::from_terms(VarUniverse::Ptr u, std::vector<Term> terms) {
  for (const auto& t : terms)
    if (t.mono.nvars() != u->size())
      throw std::invalid_argument("term arity does not match universe");
  return Polynomial(std::move(u), canonicalize_terms(std::move(terms)));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_constant());
}

std::uint64_t Polynomial::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

std::vector<std::size_t> Polynomial::support() const {
  std::vector<bool> used(universe_->size(), false);
  for (const auto& t : terms_)
    for (auto v : t.mono.support()) used[v] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i]) out.push_back(i);
  return out;
}

bool Polynomial::uses_only(const std::vector<std::size_t>& vars) const {
  std::vector<bool> ok(universe_->size(), false);
  for (auto v : vars) ok.at(v) = true;
  for (const auto& t : terms_)
    for (auto v : t.mono.support())
      if (!ok[v]) return false;
  return true;
}

Polynomial Polynomial::operator-() const {
  std::vector<Term> t = terms_;
  for (auto& x : t) x.coeff = -x.coeff;
  return Polynomial(universe_, std::move(t));
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  require_same_universe(*this, rhs);
  // Merge of two canonically-sorted term lists.
  std::vector<Term> out;
  out.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < rhs.terms_.size()) {
    if (terms_[i].mono == rhs.terms_[j].mono) {
      Rational c = terms_[i].coeff + rhs.terms_[j].coeff;
      if (!polycore::is_zero(c)) out.push_back({terms_[i].mono, std::move(c)});
      ++i, ++j;
    } else if (canonical_before(terms_[i].mono, rhs.terms_[j].mono)) {
      out.push_back(terms_[i++]);
    } else {
      out.push_back(rhs.terms_[j++]);
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < rhs.terms_.size(); ++j) out.push_back(rhs.terms_[j]);
  return Polynomial(universe_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  return *this + (-rhs);
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  require_same_universe(*this, rhs);
  std::vector<Term> acc;
  acc.reserve(terms_.size() * rhs.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : rhs.terms_)
      acc.push_back({a.mono.times(b.mono), a.coeff * b.coeff});
  return Polynomial(universe_, canonicalize_terms(std::move(acc)));
}

Polynomial Polynomial::operator*(const Rational& c) const {
  if (polycore::is_zero(c)) return zero(universe_);
  std::vector<Term> t = terms_;
  for (auto& x : t) x.coeff *= c;
  return Polynomial(universe_, std::move(t));
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial result = constant(universe_, Rational(1));
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    base = (e >>= 1) ? base * base : base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
  if (terms_.size() != rhs.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != rhs.terms_[i].mono ||
        terms_[i].coeff != rhs.terms_[i].coeff)
      return false;
  return true;
}

const Term& Polynomial::leading_term(const MonomialOrder& ord) const {
  if (terms_.empty())
    throw std::logic_error("leading term of zero polynomial");
  std::size_t best = 0;
  for (std::size_t i = 1; i < terms_.size(); ++i)
    if (ord.greater(terms_[i].mono, terms_[best].mono)) best = i;
  return terms_[best];
}

Polynomial Polynomial::monic(const MonomialOrder& ord) const {
  if (terms_.empty()) return *this;
  Rational lc = leading_term(ord).coeff;
  return *this * (Rational(1) / lc);
}

Rational Polynomial::eval_rational(std::span<const Rational> values) const {
  if (values.size() != universe_->size())
    throw std::invalid_argument("evaluation arity mismatch");
  Rational acc(0);
  for (const auto& t : terms_) {
    Rational m = t.coeff;
    for (auto v : t.mono.support()) {
      Rational p = values[v];
      for (std::uint32_t k = 1; k < t.mono.exponent(v); ++k) p *= values[v];
      m *= p;
    }
    acc += m;
  }
  return acc;
}

double Polynomial::eval_double(std::span<const double> values) const {
  if (values.size() != universe_->size())
    throw std::invalid_argument("evaluation arity mismatch");
  double acc = 0;
  for (const auto& t : terms_) {
    double m = to_double(t.coeff);
    for (auto v : t.mono.support()) {
      double base = values[v];
      for (std::uint32_t k = 0; k < t.mono.exponent(v); ++k) m *= base;
    }
    acc += m;
  }
  return acc;
}

Polynomial Polynomial::substituted(
    const std::vector<const Polynomial*>& repl) const {
  if (repl.size() != universe_->size())
    throw std::invalid_argument("substitution arity mismatch");
  Polynomial acc = zero(universe_);
  for (const auto& t : terms_) {
    Polynomial m = constant(universe_, t.coeff);
    std::vector<std::uint32_t> residual(universe_->size(), 0);
    for (auto v : t.mono.support()) {
      if (repl[v]) {
        m = m * repl[v]->pow(t.mono.exponent(v));
      } else {
        residual[v] = t.mono.exponent(v);
      }
    }
    Monomial rm(std::move(residual));
    if (!rm.is_constant()) {
      std::vector<Term> one;
      one.push_back({std::move(rm), Rational(1)});
      m = m * Polynomial(universe_, canonicalize_terms(std::move(one)));
    }
    acc = acc + m;
  }
  return acc;
}

Polynomial Polynomial::lifted_to(VarUniverse::Ptr target) const {
  std::vector<std::size_t> map(universe_->size());
  std::vector<bool> mapped(universe_->size(), false);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<std::uint32_t> e(target->size(), 0);
    for (auto v : t.mono.support()) {
      if (!mapped[v]) {
        auto idx = target->index_of(universe_->name(v));
        if (!idx)
          throw std::invalid_argument("variable '" + universe_->name(v) +
                                      "' missing from target universe");
        map[v] = *idx;
        mapped[v] = true;
      }
      e[map[v]] = t.mono.exponent(v);
    }
    out.push_back({Monomial(std::move(e)), t.coeff});
  }
  return from_terms(std::move(target), std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool negative = sgn(c) < 0;
    if (first) {
      if (negative) os << "-";
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    if (negative) c = -c;
    bool constant_mono = t.mono.is_constant();
    bool unit_coeff = (c == 1);
    if (!unit_coeff || constant_mono) os << polycore::to_string(c);
    bool need_star = !unit_coeff && !constant_mono;
    for (auto v : t.mono.support()) {
      if (need_star) os << "*";
      need_star = true;
      os << universe_->name(v);
      if (t.mono.exponent(v) > 1) os << "^" << t.mono.exponent(v);
    }
  }
  return os.str();
}

int compare_polynomials(const Polynomial& a, const Polynomial& b,
                        const MonomialOrder& ord) {
  auto da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
    int c = ord.compare(ta[i].mono, tb[i].mono);
    if (c != 0) return c;
    int cc = cmp(ta[i].coeff, tb[i].coeff);
    if (cc != 0) return cc < 0 ? -1 : 1;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

}  // namespace fd::polycore
