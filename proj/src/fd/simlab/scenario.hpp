#ifndef FD_SIMLAB_SCENARIO_HPP
#define FD_SIMLAB_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fd::simlab {

/// Two-tank level controller. The proportional mode tracks a square
/// reference with the measured output scaled by the output gain as level
/// feedback, clamped actuation, and an overflow guard driven by the true
/// upper level (an independent float switch): actuation is forced to zero
/// above cutoff_level until the level falls back below resume_level.
struct ControllerConfig {
  enum class Mode { proportional, fixed };
  Mode mode = Mode::proportional;
  double fixed_u = 1.0;

  double ref_low = 1.0;
  double ref_high = 2.5;
  double period = 20.0;  // full square-wave period; switches every period/2
  double phase = 5.0;    // first switch time
  double gain = 2.0;
  double u_max = 10.0;
  double cutoff_level = 8.5;
  double resume_level = 8.0;

  double reference(double t) const;
  // Switch instants within [t0, t1] (proportional mode only).
  std::vector<double> switch_times(double t0, double t1) const;
};

struct Scenario {
  std::string name = "scenario";
  std::array<double, 5> params{0.3, 0.3, 0.3, 0.3, 1.0};
  std::array<double, 3> faults{0.0, 0.0, 0.0};
  double inject_time = 20.0;
  double t_begin = 0.0;
  double t_end = 50.0;
  double sampling = 0.5;
  double noise_amp = 1e-3;
  std::uint64_t seed = 1;
  double x1_init = 1.0;
  double x2_init = 0.6;
  double rk_dt = 0.01;
  // Samples dropped around reference switches when assembling linear
  // systems (the reference jump puts a kink in the output derivative).
  int exclusion_halfwidth = 2;
  ControllerConfig controller;
  // Reference detection/discrimination delays for benchmark comparison.
  std::optional<std::pair<double, double>> reference_times;

  void validate() const;  // throws std::invalid_argument
};

/// Sampled input/output record of one run. y carries the measurement noise;
/// y_deriv is filled by the smoothing-spline differentiator; y_true_deriv
/// and the states come from the integrator and are for validation only.
struct TimeSeries {
  std::vector<double> t, u, y, y_deriv, y_true_deriv, x1, x2;
  std::vector<bool> excluded;

  std::size_t size() const { return t.size(); }
  bool has_deriv() const { return y_deriv.size() == t.size(); }
  void validate() const;  // strictly increasing times, consistent lengths
};

std::string series_csv(const TimeSeries& s);

}  // namespace fd::simlab

#endif
