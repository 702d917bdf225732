#include "fd/polycore/universe.hpp"

#include <stdexcept>

namespace fd::polycore {

const char* var_class_name(VarClass c) {
  switch (c) {
    case VarClass::parameter: return "parameter";
    case VarClass::fault: return "fault";
    case VarClass::auxiliary: return "auxiliary";
    case VarClass::summary_slot: return "slot";
  }
  return "?";
}

VarUniverse::Ptr VarUniverse::make(
    std::vector<std::pair<std::string, VarClass>> vars) {
  auto u = std::shared_ptr<VarUniverse>(new VarUniverse());
  u->names_.reserve(vars.size());
  u->classes_.reserve(vars.size());
  for (auto& [name, cls] : vars) {
    if (name.empty())
      throw std::invalid_argument("empty variable name");
    if (u->index_.count(name))
      throw std::invalid_argument("duplicate variable name: '" + name + "'");
    u->index_.emplace(name, u->names_.size());
    u->names_.push_back(std::move(name));
    u->classes_.push_back(cls);
  }
  return u;
}

std::optional<std::size_t> VarUniverse::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> VarUniverse::indices_of(VarClass c) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (classes_[i] == c) out.push_back(i);
  return out;
}

bool VarUniverse::same_content(const VarUniverse& other) const {
  return names_ == other.names_ && classes_ == other.classes_;
}

}  // namespace fd::polycore
