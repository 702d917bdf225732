#ifndef FD_IO_MODELFILE_HPP
#define FD_IO_MODELFILE_HPP

#include <map>
#include <optional>
#include <string>

#include "fd/siggen/summary.hpp"
#include "fd/sigtable/constraints.hpp"
#include "fd/simlab/estimate.hpp"

namespace fd::io {

class ModelFileError : public std::runtime_error {
 public:
  ModelFileError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_number(line) {}
  std::size_t line_number;
};

/// Parsed model description: variable declarations, the summary entries
/// (slot, coefficient, signal monomial, input flag), constraints, optional
/// known parameter values and the estimator wiring. The format is
/// documented in docs/formats.md.
struct ModelFile {
  std::string name;
  polycore::VarUniverse::Ptr universe;  // parameters, faults, fraction auxiliaries
  std::optional<siggen::ExhaustiveSummary> summary;
  sigtable::ConstraintSet constraints;
  std::map<std::string, polycore::Rational> known_params;
  bool has_estimator = false;
  simlab::EstimatorSpec estimator;
};

ModelFile parse_model_text(const std::string& text,
                           const std::string& name_hint = "model");
ModelFile load_model_file(const std::string& path);

}  // namespace fd::io

#endif
