#include "fd/polycore/order.hpp"

#include <algorithm>
#include <stdexcept>

namespace fd::polycore {

MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  std::vector<std::size_t> prec(nvars);
  for (std::size_t i = 0; i < nvars; ++i) prec[i] = i;
  return MonomialOrder(Kind::lex, std::move(prec));
}

MonomialOrder MonomialOrder::block_lex(std::vector<std::size_t> precedence) {
  std::vector<bool> seen(precedence.size(), false);
  for (auto i : precedence) {
    if (i >= precedence.size() || seen[i])
      throw std::invalid_argument("precedence is not a permutation");
    seen[i] = true;
  }
  return MonomialOrder(Kind::block_lex, std::move(precedence));
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  for (auto v : precedence_) {
    auto ea = a.exponent(v), eb = b.exponent(v);
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

bool MonomialOrder::eliminates_complement_of(
    const std::vector<std::size_t>& keep) const {
  std::vector<bool> kept(precedence_.size(), false);
  for (auto i : keep) kept.at(i) = true;
  bool seen_kept = false;
  for (auto v : precedence_) {
    if (kept[v]) {
      seen_kept = true;
    } else if (seen_kept) {
      return false;  // dropped variable below a kept one
    }
  }
  return true;
}

}  // namespace fd::polycore
