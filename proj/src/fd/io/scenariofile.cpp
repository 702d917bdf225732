#include "fd/io/scenariofile.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fd::io {

using simlab::ControllerConfig;
using simlab::Scenario;

Scenario parse_scenario_text(const std::string& text,
                             const std::string& name_hint) {
  Scenario sc;
  sc.name = name_hint;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    auto fail = [&](const std::string& msg) -> std::runtime_error {
      return std::runtime_error("scenario line " + std::to_string(lineno) +
                                ": " + msg);
    };
    auto num = [&]() {
      double v;
      if (!(ls >> v)) throw fail("expected a number after '" + kw + "'");
      return v;
    };
    if (kw == "scenario") {
      ls >> sc.name;
    } else if (kw == "params") {
      for (auto& p : sc.params) p = num();
    } else if (kw == "faults") {
      for (auto& f : sc.faults) f = num();
    } else if (kw == "inject") {
      sc.inject_time = num();
    } else if (kw == "horizon") {
      sc.t_begin = num();
      sc.t_end = num();
    } else if (kw == "sampling") {
      sc.sampling = num();
    } else if (kw == "noise") {
      sc.noise_amp = num();
    } else if (kw == "seed") {
      sc.seed = static_cast<std::uint64_t>(num());
    } else if (kw == "init") {
      sc.x1_init = num();
      sc.x2_init = num();
    } else if (kw == "rk_dt") {
      sc.rk_dt = num();
    } else if (kw == "exclude_halfwidth") {
      sc.exclusion_halfwidth = static_cast<int>(num());
    } else if (kw == "controller") {
      std::string mode;
      if (!(ls >> mode)) throw fail("controller needs a mode");
      if (mode == "fixed") {
        sc.controller.mode = ControllerConfig::Mode::fixed;
        sc.controller.fixed_u = num();
      } else if (mode == "proportional") {
        sc.controller.mode = ControllerConfig::Mode::proportional;
      } else {
        throw fail("unknown controller mode '" + mode + "'");
      }
    } else if (kw == "ref") {
      sc.controller.ref_low = num();
      sc.controller.ref_high = num();
    } else if (kw == "period") {
      sc.controller.period = num();
    } else if (kw == "phase") {
      sc.controller.phase = num();
    } else if (kw == "gain") {
      sc.controller.gain = num();
    } else if (kw == "umax") {
      sc.controller.u_max = num();
    } else if (kw == "cutoff") {
      sc.controller.cutoff_level = num();
      sc.controller.resume_level = num();
    } else if (kw == "reference_times") {
      double d = num(), disc = num();
      sc.reference_times = {d, disc};
    } else {
      throw fail("unknown keyword '" + kw + "'");
    }
  }
  sc.validate();
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string base = path;
  auto slash = base.find_last_of('/');
  if (slash != std::string::npos) base = base.substr(slash + 1);
  auto dot = base.find_last_of('.');
  if (dot != std::string::npos) base = base.substr(0, dot);
  return parse_scenario_text(ss.str(), base);
}

}  // namespace fd::io
