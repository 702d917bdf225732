#ifndef FD_IO_SCENARIOFILE_HPP
#define FD_IO_SCENARIOFILE_HPP

#include <string>

#include "fd/simlab/scenario.hpp"

namespace fd::io {

simlab::Scenario parse_scenario_text(const std::string& text,
                                     const std::string& name_hint = "scenario");
simlab::Scenario load_scenario_file(const std::string& path);

}  // namespace fd::io

#endif
