#include "fd/simlab/simulate.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace fd::simlab {

namespace {

double guarded_sqrt(double x) { return std::sqrt(std::max(x, 0.0)); }

struct NoiseSource {
  std::mt19937_64 rng;
  double amp;
  explicit NoiseSource(std::uint64_t seed, double amplitude)
      : rng(seed), amp(amplitude) {}

  double uniform01() {
    // 53-bit mantissa in (0, 1]
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  }

  double draw() {
    if (amp <= 0) return 0.0;
    for (;;) {
      double u1 = uniform01(), u2 = uniform01();
      double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
      double eta = z * amp / 3.0;
      if (std::fabs(eta) <= amp) return eta;
    }
  }
};

struct Plant {
  const Scenario& sc;
  bool cutoff_engaged = false;

  bool faults_on(double t) const { return t >= sc.inject_time; }

  double true_output(double t, double x1v) const {
    double f2 = faults_on(t) ? sc.faults[1] : 0.0;
    double f3 = faults_on(t) ? sc.faults[2] : 0.0;
    return sc.params[4] * (1.0 - f3) * guarded_sqrt(x1v) + f2;
  }

  double control(double t, double x1v) const {
    const auto& c = sc.controller;
    if (c.mode == ControllerConfig::Mode::fixed) return c.fixed_u;
    if (cutoff_engaged) return 0.0;
    double level_est = true_output(t, x1v) / sc.params[4];
    double u = c.gain * (c.reference(t) - level_est);
    return std::clamp(u, 0.0, c.u_max);
  }

  void derivatives(double t, double x1v, double x2v, double u, double& d1,
                   double& d2) const {
    double f1 = faults_on(t) ? sc.faults[0] : 0.0;
    double f3 = faults_on(t) ? sc.faults[2] : 0.0;
    const auto& p = sc.params;
    d1 = p[0] * (u + f1) - p[1] * (1.0 - f3) * guarded_sqrt(x1v);
    d2 = p[2] * (1.0 - f3) * guarded_sqrt(x1v) - p[3] * guarded_sqrt(x2v);
  }
};

}  // namespace

TimeSeries simulate(const Scenario& sc) {
  sc.validate();
  Plant plant{sc};
  NoiseSource noise(sc.seed, sc.noise_amp);

  const double dt = sc.rk_dt;
  const auto steps_per_sample =
      static_cast<std::size_t>(std::llround(sc.sampling / dt));
  const auto total_samples = static_cast<std::size_t>(
      std::floor((sc.t_end - sc.t_begin) / sc.sampling + 1e-9)) + 1;

  TimeSeries out;
  double x1 = sc.x1_init, x2 = sc.x2_init;
  double t = sc.t_begin;

  auto record = [&](double time) {
    double u_now = plant.control(time, x1);
    double ybar = plant.true_output(time, x1);
    double d1, d2;
    plant.derivatives(time, x1, x2, u_now, d1, d2);
    double s1 = guarded_sqrt(x1);
    double f3 = plant.faults_on(time) ? sc.faults[2] : 0.0;
    double ydot =
        sc.params[4] * (1.0 - f3) * d1 / (2.0 * std::max(s1, 1e-9));
    out.t.push_back(time);
    out.u.push_back(u_now);
    out.y.push_back(ybar + noise.draw());
    out.y_true_deriv.push_back(ydot);
    out.x1.push_back(x1);
    out.x2.push_back(x2);
  };

  record(t);
  for (std::size_t s = 1; s < total_samples; ++s) {
    for (std::size_t k = 0; k < steps_per_sample; ++k) {
      // overflow float switch, evaluated at the step boundary
      if (!plant.cutoff_engaged && x1 >= sc.controller.cutoff_level)
        plant.cutoff_engaged = true;
      else if (plant.cutoff_engaged && x1 <= sc.controller.resume_level)
        plant.cutoff_engaged = false;

      auto rhs = [&](double tt, double a, double b, double& d1, double& d2) {
        double u = plant.control(tt, a);
        plant.derivatives(tt, a, b, u, d1, d2);
      };
      double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
      rhs(t, x1, x2, k1a, k1b);
      rhs(t + dt / 2, x1 + dt / 2 * k1a, x2 + dt / 2 * k1b, k2a, k2b);
      rhs(t + dt / 2, x1 + dt / 2 * k2a, x2 + dt / 2 * k2b, k3a, k3b);
      rhs(t + dt, x1 + dt * k3a, x2 + dt * k3b, k4a, k4b);
      x1 += dt / 6 * (k1a + 2 * k2a + 2 * k3a + k4a);
      x2 += dt / 6 * (k1b + 2 * k2b + 2 * k3b + k4b);
      t += dt;
      if (x1 < 0 && x1 > -1e-9) x1 = 0;
      if (x2 < 0 && x2 > -1e-9) x2 = 0;
      if (x1 < 0 || x1 > 10 || x2 < 0 || x2 > 10) {
        std::ostringstream os;
        os << "water level left [0, 10] at t=" << t << " (x1=" << x1
           << ", x2=" << x2 << ")";
        throw SimulationError(os.str());
      }
    }
    t = sc.t_begin + static_cast<double>(s) * sc.sampling;  // avoid drift
    record(t);
  }

  // Rows near reference switches are flagged; the derivative estimate has a
  // kink there.
  out.excluded.assign(out.size(), false);
  for (double s : sc.controller.switch_times(sc.t_begin, sc.t_end)) {
    for (std::size_t i = 0; i < out.size(); ++i)
      if (std::fabs(out.t[i] - s) <=
          sc.exclusion_halfwidth * sc.sampling + 1e-9)
        out.excluded[i] = true;
  }
  out.validate();
  return out;
}

}  // namespace fd::simlab
