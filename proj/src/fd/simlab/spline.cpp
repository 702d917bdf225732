#include "fd/simlab/spline.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace fd::simlab {

namespace {

struct SplineMatrices {
  Eigen::MatrixXd Q;   // n x (n-2)
  Eigen::MatrixXd R;   // (n-2) x (n-2)
  std::vector<double> h;
};

SplineMatrices build_matrices(std::span<const double> t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  SplineMatrices m;
  m.h.resize(t.size() - 1);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    m.h[i] = t[i + 1] - t[i];
    if (!(m.h[i] > 0))
      throw std::invalid_argument("sample grid must be strictly increasing");
  }
  m.Q = Eigen::MatrixXd::Zero(n, n - 2);
  m.R = Eigen::MatrixXd::Zero(n - 2, n - 2);
  for (Eigen::Index j = 0; j < n - 2; ++j) {
    double h0 = m.h[static_cast<std::size_t>(j)];
    double h1 = m.h[static_cast<std::size_t>(j) + 1];
    m.Q(j, j) = 1.0 / h0;
    m.Q(j + 1, j) = -1.0 / h0 - 1.0 / h1;
    m.Q(j + 2, j) = 1.0 / h1;
    m.R(j, j) = (h0 + h1) / 3.0;
    if (j + 1 < n - 2) {
      m.R(j, j + 1) = h1 / 6.0;
      m.R(j + 1, j) = h1 / 6.0;
    }
  }
  return m;
}

}  // namespace

SplineFit smooth_spline_gcv(std::span<const double> t,
                            std::span<const double> y,
                            const SplineConfig& cfg) {
  if (t.size() != y.size())
    throw std::invalid_argument("t/y length mismatch");
  if (t.size() < 6)
    throw std::invalid_argument("need at least 6 samples for the spline");

  const auto n = static_cast<Eigen::Index>(t.size());
  SplineMatrices m = build_matrices(t);
  Eigen::VectorXd yv(n);
  for (Eigen::Index i = 0; i < n; ++i) yv(i) = y[static_cast<std::size_t>(i)];
  Eigen::MatrixXd QtQ = m.Q.transpose() * m.Q;
  Eigen::VectorXd Qty = m.Q.transpose() * yv;

  auto solve_for = [&](double lambda, Eigen::VectorXd& gamma,
                       Eigen::VectorXd& fitted) {
    Eigen::MatrixXd M = m.R + lambda * QtQ;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
    gamma = ldlt.solve(Qty);
    fitted = yv - lambda * (m.Q * gamma);
    return ldlt;
  };

  double best_lambda = cfg.lambda_floor;
  double best_score = std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg.lambda_grid; ++k) {
    double frac = cfg.lambda_grid == 1
                      ? 0.0
                      : static_cast<double>(k) / (cfg.lambda_grid - 1);
    double lambda = cfg.lambda_min *
                    std::pow(cfg.lambda_max / cfg.lambda_min, frac);
    if (lambda < cfg.lambda_floor) lambda = cfg.lambda_floor;
    Eigen::VectorXd gamma, fitted;
    auto ldlt = solve_for(lambda, gamma, fitted);
    // trace(I - A) = lambda * trace(M^{-1} Q^T Q)
    Eigen::MatrixXd Minv_QtQ = ldlt.solve(QtQ);
    double tr = lambda * Minv_QtQ.trace();
    if (tr < 1e-12) tr = 1e-12;
    double rss = (yv - fitted).squaredNorm();
    double score = static_cast<double>(n) * rss / (tr * tr);
    if (score < best_score - 1e-15) {
      best_score = score;
      best_lambda = lambda;
    }
  }

  Eigen::VectorXd gamma, fitted;
  solve_for(best_lambda, gamma, fitted);

  SplineFit fit;
  fit.lambda = best_lambda;
  fit.value.resize(t.size());
  for (Eigen::Index i = 0; i < n; ++i)
    fit.value[static_cast<std::size_t>(i)] = fitted(i);

  // Natural spline second derivatives: zero at both ends.
  std::vector<double> M2(t.size(), 0.0);
  for (Eigen::Index j = 0; j < n - 2; ++j)
    M2[static_cast<std::size_t>(j) + 1] = gamma(j);

  fit.deriv.resize(t.size());
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    double h = m.h[i];
    fit.deriv[i] = (fit.value[i + 1] - fit.value[i]) / h -
                   h * (2.0 * M2[i] + M2[i + 1]) / 6.0;
  }
  {
    std::size_t i = t.size() - 1;
    double h = m.h[i - 1];
    fit.deriv[i] = (fit.value[i] - fit.value[i - 1]) / h +
                   h * (M2[i - 1] + 2.0 * M2[i]) / 6.0;
  }
  return fit;
}

void estimate_derivative(TimeSeries& series, const SplineConfig& cfg) {
  SplineFit fit = smooth_spline_gcv(series.t, series.y, cfg);
  series.y_deriv = fit.deriv;
}

}  // namespace fd::simlab
