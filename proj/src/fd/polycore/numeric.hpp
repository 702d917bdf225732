#ifndef FD_POLYCORE_NUMERIC_HPP
#define FD_POLYCORE_NUMERIC_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "fd/polycore/polynomial.hpp"

namespace fd::polycore {

/// Double-precision view of a polynomial for tight evaluation loops.
/// Also exposes the term-magnitude sum used as a cancellation scale.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Polynomial& p) {
    for (const auto& t : p.terms()) {
      CTerm ct;
      ct.coeff = to_double(t.coeff);
      for (auto v : t.mono.support())
        ct.factors.push_back({static_cast<std::uint32_t>(v), t.mono.exponent(v)});
      terms_.push_back(std::move(ct));
    }
  }

  double eval(std::span<const double> x) const {
    double acc = 0;
    for (const auto& t : terms_) acc += term_value(t, x);
    return acc;
  }

  // value and sum of |term| in one pass
  double eval_scaled(std::span<const double> x, double& scale) const {
    double acc = 0, s = 0;
    for (const auto& t : terms_) {
      double v = term_value(t, x);
      acc += v;
      s += std::fabs(v);
    }
    scale = s;
    return acc;
  }

  bool empty() const { return terms_.empty(); }

 private:
  struct CTerm {
    double coeff;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;
  };

  static double term_value(const CTerm& t, std::span<const double> x) {
    double m = t.coeff;
    for (auto [v, e] : t.factors) {
      double b = x[v];
      for (std::uint32_t k = 0; k < e; ++k) m *= b;
    }
    return m;
  }

  std::vector<CTerm> terms_;
};

}  // namespace fd::polycore

#endif
