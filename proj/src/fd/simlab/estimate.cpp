#include "fd/simlab/estimate.hpp"

#include <cmath>
#include <sstream>

#include "fd/polycore/parser.hpp"

namespace fd::simlab {

namespace {

double ipow(double b, int e) {
  double r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

polycore::VarUniverse::Ptr signal_universe() {
  static polycore::VarUniverse::Ptr u = polycore::VarUniverse::make(
      {{"u", polycore::VarClass::parameter},
       {"y", polycore::VarClass::parameter},
       {"yp", polycore::VarClass::parameter}});
  return u;
}

}  // namespace

double SignalMono::eval(double u, double y, double yp) const {
  return ipow(u, eu) * ipow(y, ey) * ipow(yp, eyp);
}

std::string SignalMono::str() const {
  std::ostringstream os;
  bool any = false;
  auto emit = [&](const char* n, int e) {
    if (!e) return;
    if (any) os << "*";
    os << n;
    if (e > 1) os << "^" << e;
    any = true;
  };
  emit("u", eu);
  emit("y", ey);
  emit("yp", eyp);
  return any ? os.str() : "1";
}

double SignalPoly::eval(double u, double y, double yp) const {
  double acc = 0;
  for (const auto& [c, m] : terms) acc += c * m.eval(u, y, yp);
  return acc;
}

SignalPoly parse_signal_poly(const std::string& text) {
  auto u = signal_universe();
  polycore::Polynomial p = polycore::parse_poly(text, u);
  SignalPoly out;
  for (const auto& t : p.terms()) {
    SignalMono m;
    m.eu = static_cast<int>(t.mono.exponent(0));
    m.ey = static_cast<int>(t.mono.exponent(1));
    m.eyp = static_cast<int>(t.mono.exponent(2));
    out.terms.push_back({polycore::to_double(t.coeff), m});
  }
  return out;
}

SignalMono parse_signal_mono(const std::string& text) {
  SignalPoly p = parse_signal_poly(text);
  if (p.terms.size() != 1 || p.terms[0].first != 1.0)
    throw std::invalid_argument("signal tag must be a plain monomial: '" +
                                text + "'");
  return p.terms[0].second;
}

namespace {

LinearSystem assemble(const TimeSeries& series,
                      const std::vector<std::size_t>& indices,
                      const std::vector<SignalMono>& cols,
                      const EstimatorSpec& spec, std::size_t min_rows,
                      const char* what) {
  if (!series.has_deriv())
    throw std::invalid_argument("derivative estimate missing from series");
  if (indices.size() < min_rows)
    throw std::invalid_argument(std::string(what) + " needs at least " +
                                std::to_string(min_rows) + " rows, got " +
                                std::to_string(indices.size()));
  LinearSystem sys;
  sys.rows = indices;
  sys.A.resize(static_cast<Eigen::Index>(indices.size()),
               static_cast<Eigen::Index>(cols.size()));
  sys.b.resize(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t r = 0; r < indices.size(); ++r) {
    std::size_t i = indices[r];
    double u = series.u[i], y = series.y[i], yp = series.y_deriv[i];
    for (std::size_t c = 0; c < cols.size(); ++c)
      sys.A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          cols[c].eval(u, y, yp);
    double known = spec.m0.eval(u, y, yp);
    for (std::size_t j = 0; j < spec.const_cols.size(); ++j)
      known += spec.const_coeffs[j] * spec.const_cols[j].eval(u, y, yp);
    sys.b(static_cast<Eigen::Index>(r)) = -known;
  }
  return sys;
}

}  // namespace

LinearSystem assemble_fault_free(const TimeSeries& series,
                                 const std::vector<std::size_t>& indices,
                                 const EstimatorSpec& spec) {
  return assemble(series, indices, spec.x0_cols, spec, 2, "fault-free system");
}

LinearSystem assemble_faulty(const TimeSeries& series,
                             const std::vector<std::size_t>& indices,
                             const EstimatorSpec& spec) {
  return assemble(series, indices, spec.xf_cols, spec, 4, "faulty system");
}

Eigen::VectorXd solve_least_squares(const Eigen::MatrixXd& A,
                                    const Eigen::VectorXd& b) {
  if (A.rows() < A.cols())
    throw std::invalid_argument("least squares needs rows >= columns");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < A.cols()) throw RankDeficientError(qr.rank(), A.cols());
  return qr.solve(b);
}

}  // namespace fd::simlab
