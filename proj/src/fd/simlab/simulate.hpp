#ifndef FD_SIMLAB_SIMULATE_HPP
#define FD_SIMLAB_SIMULATE_HPP

#include <stdexcept>

#include "fd/simlab/scenario.hpp"

namespace fd::simlab {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrates the faulty two-tank model with classical RK4 at the fixed
/// scenario step and samples it on the measurement grid:
///   x1' = p1 (u + f1) - p2 (1 - f3) sqrt(x1)
///   x2' = p3 (1 - f3) sqrt(x1) - p4 sqrt(x2)
///   y   = p5 (1 - f3) sqrt(x1) + f2 + eta
/// Faults act from the injection time on. The controller loop closes on the
/// noise-free output; the recorded measurements carry truncated Gaussian
/// noise (sigma = amp/3, support [-amp, amp], seeded). Levels outside
/// [0, 10] abort with SimulationError.
TimeSeries simulate(const Scenario& scenario);

}  // namespace fd::simlab

#endif
