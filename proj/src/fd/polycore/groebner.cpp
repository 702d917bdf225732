#include "fd/polycore/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fd::polycore {

namespace {

// Working representation: term list sorted descending under the active
// order, so the leading term is front().
using Terms = std::vector<Term>;

Terms sorted_terms(const Polynomial& p, const MonomialOrder& ord) {
  Terms t = p.terms();
  std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) {
    return ord.greater(a.mono, b.mono);
  });
  return t;
}

// a -= c * x^m * b, keeping descending order.
Terms sub_scaled(const Terms& a, const Rational& c, const Monomial& m,
                 const Terms& b, const MonomialOrder& ord) {
  Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    Monomial bm = b[j].mono.times(m);
    int cmp = ord.compare(a[i].mono, bm);
    if (cmp == 0) {
      Rational v = a[i].coeff - c * b[j].coeff;
      if (!is_zero(v)) out.push_back({a[i].mono, std::move(v)});
      ++i, ++j;
    } else if (cmp > 0) {
      out.push_back(a[i++]);
    } else {
      out.push_back({std::move(bm), -(c * b[j].coeff)});
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j)
    out.push_back({b[j].mono.times(m), -(c * b[j].coeff)});
  return out;
}

void make_monic(Terms& t) {
  if (t.empty()) return;
  Rational lc = t.front().coeff;
  if (lc == 1) return;
  for (auto& x : t) x.coeff /= lc;
}

// Full reduction: returns the remainder, every term of which is divisible
// by no basis leading monomial.
Terms reduce_terms(Terms h, const std::vector<Terms>& basis,
                   const MonomialOrder& ord) {
  Terms rem;
  while (!h.empty()) {
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.empty()) continue;
      if (g.front().mono.divides(h.front().mono)) {
        Rational c = h.front().coeff / g.front().coeff;
        Monomial m = h.front().mono.quotient_by(g.front().mono);
        h = sub_scaled(h, c, m, g, ord);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.push_back(std::move(h.front()));
      h.erase(h.begin());
    }
  }
  return rem;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

}  // namespace

GroebnerBasis groebner_basis(const std::vector<Polynomial>& generators,
                             const MonomialOrder& order,
                             const GroebnerOptions& options) {
  VarUniverse::Ptr universe;
  for (const auto& g : generators) {
    if (!universe) {
      universe = g.universe();
    } else if (universe != g.universe() &&
               !universe->same_content(*g.universe())) {
      throw std::invalid_argument("generators over different universes");
    }
  }
  if (order.nvars() != (universe ? universe->size() : order.nvars()))
    throw std::invalid_argument("order arity does not match universe");

  std::vector<Terms> basis;
  for (const auto& g : generators) {
    if (g.is_zero()) continue;
    Terms t = sorted_terms(g, order);
    make_monic(t);
    basis.push_back(std::move(t));
  }
  // Deterministic start: drop exact duplicates, keep insertion order.
  {
    std::vector<Terms> uniq;
    for (auto& t : basis) {
      bool dup = false;
      for (const auto& u : uniq)
        if (u.size() == t.size()) {
          dup = true;
          for (std::size_t k = 0; k < u.size() && dup; ++k)
            if (u[k].mono != t[k].mono || u[k].coeff != t[k].coeff) dup = false;
          if (dup) break;
        }
      if (!dup) uniq.push_back(std::move(t));
    }
    basis = std::move(uniq);
  }

  auto lm = [&](std::size_t k) -> const Monomial& {
    return basis[k].front().mono;
  };

  std::vector<Pair> queue;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto push_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      queue.push_back({i, j, lm(i).lcm_with(lm(j))});
      pending.insert({i, j});
    }
  };
  for (std::size_t j = 0; j < basis.size(); ++j) push_pairs_for(j);

  std::size_t processed = 0;
  while (!queue.empty()) {
    // Normal strategy: smallest lcm under the order; ties by index pair.
    std::size_t best = 0;
    for (std::size_t k = 1; k < queue.size(); ++k) {
      int c = order.compare(queue[k].lcm, queue[best].lcm);
      if (c < 0 || (c == 0 && std::make_pair(queue[k].i, queue[k].j) <
                                  std::make_pair(queue[best].i, queue[best].j)))
        best = k;
    }
    Pair pr = queue[best];
    queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(best));
    pending.erase({pr.i, pr.j});

    if (++processed > options.max_pairs || basis.size() > options.max_basis)
      throw GroebnerBlowupError(processed, basis.size());

    // Buchberger's first criterion: coprime leading monomials.
    if (pr.lcm == lm(pr.i).times(lm(pr.j))) continue;
    // Chain criterion: some k divides the lcm and both (i,k), (j,k) are
    // already treated.
    {
      bool skip = false;
      for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
        if (k == pr.i || k == pr.j) continue;
        if (!lm(k).divides(pr.lcm)) continue;
        auto key_ik = std::minmax(pr.i, k);
        auto key_jk = std::minmax(pr.j, k);
        if (!pending.count({key_ik.first, key_ik.second}) &&
            !pending.count({key_jk.first, key_jk.second}))
          skip = true;
      }
      if (skip) continue;
    }

    // S-polynomial of the (monic) pair, then full reduction.
    const Terms& f = basis[pr.i];
    const Terms& g = basis[pr.j];
    Terms s = sub_scaled({}, Rational(-1), pr.lcm.quotient_by(f.front().mono),
                         f, order);
    s = sub_scaled(s, Rational(1), pr.lcm.quotient_by(g.front().mono), g,
                   order);
    s = reduce_terms(std::move(s), basis, order);
    if (s.empty()) continue;
    make_monic(s);
    basis.push_back(std::move(s));
    push_pairs_for(basis.size() - 1);
  }

  // Minimalize: drop elements whose leading monomial is divisible by
  // another surviving element's leading monomial.
  std::vector<bool> keep(basis.size(), true);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!keep[i]) continue;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j || !keep[j]) continue;
      if (lm(j).divides(lm(i)) && !(lm(i) == lm(j) && j > i)) {
        keep[i] = false;
        break;
      }
    }
  }
  std::vector<Terms> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (keep[i]) minimal.push_back(std::move(basis[i]));

  // Inter-reduce tails until stable.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Terms> others;
      others.reserve(minimal.size() - 1);
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      Terms r = reduce_terms(minimal[i], others, order);
      make_monic(r);
      if (r.size() != minimal[i].size() ||
          !std::equal(r.begin(), r.end(), minimal[i].begin(),
                      [](const Term& a, const Term& b) {
                        return a.mono == b.mono && a.coeff == b.coeff;
                      })) {
        minimal[i] = std::move(r);
        changed = true;
      }
    }
    // Remove any element reduced to zero.
    minimal.erase(std::remove_if(minimal.begin(), minimal.end(),
                                 [](const Terms& t) { return t.empty(); }),
                  minimal.end());
  }

  std::sort(minimal.begin(), minimal.end(),
            [&](const Terms& a, const Terms& b) {
              return order.less(a.front().mono, b.front().mono);
            });

  std::vector<Polynomial> out;
  out.reserve(minimal.size());
  for (auto& t : minimal) {
    if (!universe) break;
    out.push_back(Polynomial::from_terms(universe, std::move(t)));
  }
  return GroebnerBasis(std::move(out), order);
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& basis) {
  const MonomialOrder& ord = basis.order();
  std::vector<Terms> b;
  b.reserve(basis.elements().size());
  for (const auto& g : basis.elements()) b.push_back(sorted_terms(g, ord));
  Terms r = reduce_terms(sorted_terms(p, ord), b, ord);
  return Polynomial::from_terms(p.universe(), std::move(r));
}

bool in_ideal(const Polynomial& p, const GroebnerBasis& basis) {
  return normal_form(p, basis).is_zero();
}

std::vector<Polynomial> eliminate(const GroebnerBasis& basis,
                                  const std::vector<std::size_t>& keep) {
  if (!basis.order().eliminates_complement_of(keep))
    throw std::invalid_argument(
        "order is not an elimination order for the requested split");
  std::vector<Polynomial> out;
  for (const auto& g : basis.elements())
    if (g.uses_only(keep)) out.push_back(g);
  return out;
}

}  // namespace fd::polycore
