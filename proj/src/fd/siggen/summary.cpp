#include "fd/siggen/summary.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fd::siggen {

using polycore::Polynomial;
using polycore::VarClass;
using polycore::VarUniverse;

ExhaustiveSummary ExhaustiveSummary::make(VarUniverse::Ptr model_universe,
                                          std::vector<SummaryEntry> entries,
                                          std::vector<AuxInverse> aux,
                                          std::string m0_tag) {
  if (entries.empty())
    throw std::invalid_argument("summary needs at least one entry");
  std::set<std::string> names;
  for (const auto& e : entries) {
    if (!names.insert(e.slot).second)
      throw std::invalid_argument("duplicate slot name: '" + e.slot + "'");
    if (e.gamma.universe() != model_universe &&
        !e.gamma.universe()->same_content(*model_universe))
      throw std::invalid_argument("summary entry over a foreign universe");
    for (auto v : e.gamma.support()) {
      auto c = model_universe->var_class(v);
      if (c == VarClass::summary_slot)
        throw std::invalid_argument(
            "summary coefficient may not reference slot variables");
    }
  }
  ExhaustiveSummary s;
  s.universe_ = std::move(model_universe);
  s.entries_ = std::move(entries);
  s.aux_ = std::move(aux);
  s.m0_ = std::move(m0_tag);
  s.fault_vars_ = s.universe_->indices_of(VarClass::fault);
  s.param_vars_ = s.universe_->indices_of(VarClass::parameter);
  if (s.fault_vars_.empty())
    throw std::invalid_argument("model declares no fault variables");
  return s;
}

ExhaustiveSummary ExhaustiveSummary::with_known_params(
    const std::map<std::string, polycore::Rational>& values) const {
  std::vector<Polynomial> constants;
  std::vector<const Polynomial*> repl(universe_->size(), nullptr);
  constants.reserve(values.size());
  for (const auto& [name, value] : values) {
    auto idx = universe_->index_of(name);
    if (!idx || universe_->var_class(*idx) != VarClass::parameter)
      throw std::invalid_argument("known value for non-parameter '" + name +
                                  "'");
    constants.push_back(Polynomial::constant(universe_, value));
  }
  std::size_t k = 0;
  for (const auto& [name, value] : values)
    repl[*universe_->index_of(name)] = &constants[k++];

  ExhaustiveSummary out(*this);
  for (auto& e : out.entries_) e.gamma = e.gamma.substituted(repl);
  for (auto& a : out.aux_) a.denominator = a.denominator.substituted(repl);
  return out;
}

std::string FaultPattern::label() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (std::size_t i = 0; i < 32; ++i) {
    if (mask & (1u << i)) {
      if (!first) os << ",";
      os << (i + 1);
      first = false;
    }
  }
  os << "}";
  return os.str();
}

std::vector<FaultPattern> all_patterns(std::size_t fault_count) {
  if (fault_count >= 31)
    throw std::invalid_argument("too many faults for pattern enumeration");
  std::vector<FaultPattern> out;
  out.reserve(1u << fault_count);
  for (std::uint32_t m = 0; m < (1u << fault_count); ++m) out.push_back({m});
  std::sort(out.begin(), out.end(), [](FaultPattern a, FaultPattern b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.mask < b.mask;
  });
  return out;
}

}  // namespace fd::siggen
