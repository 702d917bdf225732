#ifndef FD_SIMLAB_ESTIMATE_HPP
#define FD_SIMLAB_ESTIMATE_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "fd/simlab/scenario.hpp"

namespace fd::simlab {

/// Monomial in the measured signals u, y and the output derivative yp,
/// e.g. "1", "u", "y*yp", "y^2". These tag the terms of the input-output
/// relation whose coefficients the linear systems estimate.
struct SignalMono {
  int eu = 0, ey = 0, eyp = 0;
  double eval(double u, double y, double yp) const;
  std::string str() const;
};

/// Small signed combination of signal monomials (used for the known,
/// fault-independent part of the relation).
struct SignalPoly {
  std::vector<std::pair<double, SignalMono>> terms;
  double eval(double u, double y, double yp) const;
};

SignalMono parse_signal_mono(const std::string& text);
SignalPoly parse_signal_poly(const std::string& text);

/// How the linear estimation systems are wired to the summary slots:
/// column k of the fault-free (resp. faulty) system multiplies x0_cols[k]
/// (resp. xf_cols[k]); the right-hand side is
///   b_i = -( m0(t_i) + sum const_coeffs[j] * const_cols[j](t_i) ).
struct EstimatorSpec {
  std::vector<SignalMono> x0_cols;
  std::vector<SignalMono> xf_cols;
  SignalPoly m0;
  std::vector<double> const_coeffs;
  std::vector<SignalMono> const_cols;

  // Slot bookkeeping (indices into the summary entry list).
  std::vector<std::size_t> x0_slots;
  std::vector<std::size_t> xf_slots;
  std::vector<std::pair<std::size_t, double>> const_slots;
};

struct LinearSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<std::size_t> rows;  // series indices used
};

/// Rows (x0 columns at t_i | b_i) for the given sample indices.
/// Throws std::invalid_argument for fewer than 2 rows or missing derivative.
LinearSystem assemble_fault_free(const TimeSeries& series,
                                 const std::vector<std::size_t>& indices,
                                 const EstimatorSpec& spec);

/// Same with the faulty columns; needs at least 4 rows.
LinearSystem assemble_faulty(const TimeSeries& series,
                             const std::vector<std::size_t>& indices,
                             const EstimatorSpec& spec);

class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(Eigen::Index rank, Eigen::Index cols)
      : std::runtime_error("rank-deficient least-squares system (rank " +
                           std::to_string(rank) + " of " +
                           std::to_string(cols) + ")"),
        effective_rank(rank) {}
  Eigen::Index effective_rank;
};

/// Minimum-norm-residual solution by Householder QR with column pivoting;
/// deterministic, no iteration or initial guess.
Eigen::VectorXd solve_least_squares(const Eigen::MatrixXd& A,
                                    const Eigen::VectorXd& b);

}  // namespace fd::simlab

#endif
