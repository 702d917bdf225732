#ifndef FD_POLYCORE_MONOMIAL_HPP
#define FD_POLYCORE_MONOMIAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fd::polycore {

/// Exponent vector over a fixed variable universe. The vector length always
/// equals the universe size; entries are nonnegative.
class Monomial {
 public:
  explicit Monomial(std::size_t nvars) : exp_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exp_(std::move(exps)) {}

  std::size_t nvars() const { return exp_.size(); }
  std::uint32_t exponent(std::size_t var) const { return exp_[var]; }
  const std::vector<std::uint32_t>& exponents() const { return exp_; }

  std::uint64_t total_degree() const {
    return std::accumulate(exp_.begin(), exp_.end(), std::uint64_t{0});
  }

  bool is_constant() const {
    for (auto e : exp_) if (e) return false;
    return true;
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exp_.size(); ++i)
      if (exp_[i] > other.exp_[i]) return false;
    return true;
  }

  Monomial times(const Monomial& other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exp_.size(); ++i) r.exp_[i] += other.exp_[i];
    return r;
  }

  // Requires other.divides(*this).
  Monomial quotient_by(const Monomial& other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exp_.size(); ++i) {
      if (other.exp_[i] > r.exp_[i])
        throw std::logic_error("monomial quotient: not divisible");
      r.exp_[i] -= other.exp_[i];
    }
    return r;
  }

  Monomial lcm_with(const Monomial& other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exp_.size(); ++i)
      r.exp_[i] = std::max(r.exp_[i], other.exp_[i]);
    return r;
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < exp_.size(); ++i)
      if (exp_[i]) s.push_back(i);
    return s;
  }

  bool operator==(const Monomial& other) const { return exp_ == other.exp_; }
  bool operator!=(const Monomial& other) const { return exp_ != other.exp_; }

 private:
  std::vector<std::uint32_t> exp_;
};

}  // namespace fd::polycore

#endif
