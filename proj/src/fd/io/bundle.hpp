#ifndef FD_IO_BUNDLE_HPP
#define FD_IO_BUNDLE_HPP

#include <json.hpp>
#include <string>

#include "fd/analysis.hpp"

namespace fd::io {

inline constexpr const char* kBundleSchema = "fdiag-bundle/1";
inline constexpr const char* kReportSchema = "fdiag-report/1";

/// Versioned, schema-checked text artifact decoupling the symbolic
/// precomputation from the numeric runs. Serialization is deterministic;
/// saving a loaded bundle reproduces the file byte for byte.
nlohmann::ordered_json bundle_to_json(const Analysis& analysis);
Analysis bundle_from_json(const nlohmann::ordered_json& j);

void save_bundle(const Analysis& analysis, const std::string& path);
Analysis load_bundle(const std::string& path);

nlohmann::ordered_json report_to_json(const simlab::DetectionReport& report);

const char* disc_status_name(simlab::DiscStatus s);

}  // namespace fd::io

#endif
