#include "fd/simlab/scenario.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fd::simlab {

double ControllerConfig::reference(double t) const {
  if (mode == Mode::fixed) return fixed_u;
  double half = period / 2.0;
  if (t < phase) return ref_low;
  auto k = static_cast<long>(std::floor((t - phase) / half));
  return (k % 2 == 0) ? ref_high : ref_low;
}

std::vector<double> ControllerConfig::switch_times(double t0, double t1) const {
  std::vector<double> out;
  if (mode == Mode::fixed) return out;
  double half = period / 2.0;
  for (double s = phase; s <= t1 + 1e-9; s += half)
    if (s >= t0 - 1e-9) out.push_back(s);
  return out;
}

void Scenario::validate() const {
  if (!(faults[2] >= 0.0 && faults[2] < 1.0))
    throw std::invalid_argument("clogging fault must satisfy 0 <= f3 < 1");
  if (!(sampling > 0)) throw std::invalid_argument("sampling period must be positive");
  if (!(t_end > t_begin)) throw std::invalid_argument("empty horizon");
  if (inject_time < t_begin)
    throw std::invalid_argument("injection before the horizon start");
  if (!(rk_dt > 0) || rk_dt > sampling)
    throw std::invalid_argument("integrator step must lie in (0, sampling]");
  double ratio = sampling / rk_dt;
  if (std::fabs(ratio - std::round(ratio)) > 1e-9)
    throw std::invalid_argument("sampling period must be a multiple of the integrator step");
  for (double p : params)
    if (!(p > 0)) throw std::invalid_argument("parameters must be positive");
  if (x1_init < 0 || x1_init > 10 || x2_init < 0 || x2_init > 10)
    throw std::invalid_argument("initial levels must lie in [0, 10]");
  if (noise_amp < 0) throw std::invalid_argument("negative noise amplitude");
}

void TimeSeries::validate() const {
  auto n = t.size();
  if (u.size() != n || y.size() != n || y_true_deriv.size() != n ||
      x1.size() != n || x2.size() != n || excluded.size() != n)
    throw std::logic_error("inconsistent series lengths");
  if (!y_deriv.empty() && y_deriv.size() != n)
    throw std::logic_error("inconsistent derivative length");
  for (std::size_t i = 1; i < n; ++i)
    if (!(t[i] > t[i - 1]))
      throw std::logic_error("sample times must be strictly increasing");
}

std::string series_csv(const TimeSeries& s) {
  std::ostringstream os;
  os << "t,u,y,y_deriv,y_true_deriv,x1,x2,excluded\n";
  os.precision(17);
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << s.t[i] << ',' << s.u[i] << ',' << s.y[i] << ','
       << (s.has_deriv() ? s.y_deriv[i] : 0.0) << ',' << s.y_true_deriv[i]
       << ',' << s.x1[i] << ',' << s.x2[i] << ',' << (s.excluded[i] ? 1 : 0)
       << "\n";
  }
  return os.str();
}

}  // namespace fd::simlab
