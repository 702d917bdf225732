#ifndef FD_SIMLAB_PIPELINE_HPP
#define FD_SIMLAB_PIPELINE_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "fd/exec.hpp"
#include "fd/sigtable/table.hpp"
#include "fd/simlab/estimate.hpp"
#include "fd/simlab/scenario.hpp"
#include "fd/simlab/simulate.hpp"
#include "fd/simlab/spline.hpp"

namespace fd::simlab {

/// Everything the numeric stage needs from the precomputed analysis.
struct DiagnosisModel {
  const siggen::AnalysisContext* ctx = nullptr;
  const siggen::SignatureResult* sig = nullptr;
  const sigtable::SignatureTable* table = nullptr;
  EstimatorSpec estimator;
};

struct DetectionConfig {
  double threshold = 1e-3;  // ||X0_hat - X0_nominal||_2 alarm level
  std::size_t min_rows = 10;
  // Decide at epoch k from rows up to k - lag; the smoothing spline leaks a
  // jump over about two samples, so the lag keeps alarms causal.
  int decision_lag = 2;
  // Natural-spline boundary bias makes the first rows unreliable.
  int head_skip = 2;
};

struct ClassifyConfig {
  // Component value counts as zero when |v| <= tau_abs + tau_rel * scale,
  // scale being the term-magnitude sum at the estimated slot values.
  double tau_abs = 5e-3;
  double tau_rel = 2e-2;
  int persist = 3;            // consecutive single-row matches to conclude
  std::size_t min_window = 4; // faulty system needs 4 unknowns
  int endpoint_skip = 2;      // spline-segment endpoint rows dropped
};

struct PipelineConfig {
  DetectionConfig detect;
  ClassifyConfig classify;
  SplineConfig spline;
};

struct DetectStep {
  double t;
  Eigen::VectorXd x0;
  double deviation;
};

struct DetectionOutcome {
  bool detected = false;
  std::size_t index = 0;
  double time = 0.0;
  double deviation = 0.0;
  std::vector<DetectStep> steps;
};

/// Growing-window scan of the fault-free system against the nominal
/// coefficients; alarms at the first epoch whose deviation crosses the
/// threshold.
DetectionOutcome detect(const TimeSeries& series, const EstimatorSpec& spec,
                        const Eigen::VectorXd& nominal,
                        const DetectionConfig& cfg);

struct DiscStep {
  double t;
  Eigen::VectorXd xf;
  std::vector<double> phi;
  std::vector<double> component_values;
  std::vector<bool> component_zero;
  std::vector<std::string> matches;
};

enum class DiscStatus { unique, ambiguous, none_matched, insufficient_data };

struct DiscriminationOutcome {
  DiscStatus status = DiscStatus::insufficient_data;
  std::vector<std::string> patterns;  // final candidate row labels
  double time = 0.0;
  std::vector<DiscStep> steps;
};

/// Growing-window solve of the faulty system on the samples after the
/// detection epoch (a fresh spline fit over that segment), slot estimates
/// mapped through the estimator wiring, components classified against the
/// expected-value table. Concludes at the first row match that persists.
DiscriminationOutcome discriminate(const TimeSeries& series,
                                   std::size_t detect_index,
                                   const DiagnosisModel& model,
                                   const std::array<double, 5>& params,
                                   const ClassifyConfig& ccfg,
                                   const SplineConfig& scfg);

struct DetectionReport {
  std::string scenario_name;
  bool detected = false;
  double detect_time = 0.0;
  double detect_delay = 0.0;
  double detect_deviation = 0.0;
  DiscStatus disc_status = DiscStatus::insufficient_data;
  std::vector<std::string> patterns;
  double disc_time = 0.0;
  double disc_delay = 0.0;
  std::vector<DetectStep> detect_steps;
  std::vector<DiscStep> disc_steps;
  std::string error;  // stage-labeled failure, empty on success
  TimeSeries series;
};

Eigen::VectorXd nominal_x0(const DiagnosisModel& model,
                           const std::array<double, 5>& params);

/// simulate -> differentiate -> detect -> discriminate. Failures are
/// reported with a stage label instead of thrown, so batches can continue.
DetectionReport run_scenario(const Scenario& scenario,
                             const DiagnosisModel& model,
                             const PipelineConfig& cfg = {});

/// Independent scenarios, optionally OpenMP-parallel; reports come back in
/// input order either way.
std::vector<DetectionReport> run_batch(const std::vector<Scenario>& scenarios,
                                       const DiagnosisModel& model,
                                       const PipelineConfig& cfg,
                                       ExecMode exec = ExecMode::openmp);

}  // namespace fd::simlab

#endif
