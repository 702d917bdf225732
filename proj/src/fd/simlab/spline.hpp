#ifndef FD_SIMLAB_SPLINE_HPP
#define FD_SIMLAB_SPLINE_HPP

#include <span>
#include <vector>

#include "fd/simlab/scenario.hpp"

namespace fd::simlab {

struct SplineConfig {
  // Smoothing weight grid for generalized cross-validation, with a floor
  // that keeps the fit from interpolating measurement noise.
  double lambda_min = 1e-10;
  double lambda_max = 1e4;
  int lambda_grid = 29;
  double lambda_floor = 1e-6;
};

struct SplineFit {
  std::vector<double> value;  // fitted values at the knots
  std::vector<double> deriv;  // analytic first derivative at the knots
  double lambda = 0.0;        // chosen smoothing weight
};

/// Natural cubic smoothing spline with knots at the samples; the smoothing
/// weight minimizes the GCV score over a log grid, floored by the config.
/// Throws std::invalid_argument for fewer than 6 points or a non-increasing
/// grid.
SplineFit smooth_spline_gcv(std::span<const double> t,
                            std::span<const double> y,
                            const SplineConfig& cfg = {});

/// Fills series.y_deriv from a GCV spline over the whole series.
void estimate_derivative(TimeSeries& series, const SplineConfig& cfg = {});

}  // namespace fd::simlab

#endif
