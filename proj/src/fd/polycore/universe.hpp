#ifndef FD_POLYCORE_UNIVERSE_HPP
#define FD_POLYCORE_UNIVERSE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fd::polycore {

enum class VarClass { parameter, fault, auxiliary, summary_slot };

const char* var_class_name(VarClass c);

/// Ordered set of named variables. Declaration order is the total
/// precedence order: index 0 is the most significant variable.
/// Immutable after construction; shared by every polynomial over it.
class VarUniverse {
 public:
  using Ptr = std::shared_ptr<const VarUniverse>;

  // Throws std::invalid_argument on duplicate or empty names.
  static Ptr make(std::vector<std::pair<std::string, VarClass>> vars);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  VarClass var_class(std::size_t i) const { return classes_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index_of(std::string_view name) const;

  // Indices of all variables of the given class, in precedence order.
  std::vector<std::size_t> indices_of(VarClass c) const;

  bool same_content(const VarUniverse& other) const;

 private:
  VarUniverse() = default;
  std::vector<std::string> names_;
  std::vector<VarClass> classes_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace fd::polycore

#endif
