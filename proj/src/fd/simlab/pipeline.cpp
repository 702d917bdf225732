#include "fd/simlab/pipeline.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fd/polycore/numeric.hpp"

namespace fd::simlab {

using polycore::CompiledPoly;

DetectionOutcome detect(const TimeSeries& series, const EstimatorSpec& spec,
                        const Eigen::VectorXd& nominal,
                        const DetectionConfig& cfg) {
  if (series.size() < cfg.min_rows)
    throw std::invalid_argument("series shorter than the startup window");
  DetectionOutcome out;
  std::vector<std::size_t> rows;
  for (std::size_t k = 0; k < series.size(); ++k) {
    std::ptrdiff_t last =
        static_cast<std::ptrdiff_t>(k) - cfg.decision_lag;
    rows.clear();
    for (std::ptrdiff_t i = cfg.head_skip; i <= last; ++i)
      if (!series.excluded[static_cast<std::size_t>(i)])
        rows.push_back(static_cast<std::size_t>(i));
    if (rows.size() < cfg.min_rows) continue;
    LinearSystem sys = assemble_fault_free(series, rows, spec);
    Eigen::VectorXd x0 = solve_least_squares(sys.A, sys.b);
    double dev = (x0 - nominal).norm();
    out.steps.push_back({series.t[k], x0, dev});
    if (dev > cfg.threshold) {
      out.detected = true;
      out.index = k;
      out.time = series.t[k];
      out.deviation = dev;
      return out;
    }
  }
  return out;
}

namespace {

struct ComponentEvaluator {
  const DiagnosisModel& model;
  std::vector<CompiledPoly> comps;
  std::vector<double> assignment;  // over the analysis universe

  ComponentEvaluator(const DiagnosisModel& m, const std::array<double, 5>& p)
      : model(m) {
    for (const auto& c : m.sig->signature.components)
      comps.emplace_back(c.poly);
    assignment.assign(m.ctx->universe()->size(), 0.0);
    const auto& pv = m.ctx->param_vars();
    if (pv.size() != p.size())
      throw std::invalid_argument(
          "scenario supplies " + std::to_string(p.size()) +
          " parameters but the model declares " + std::to_string(pv.size()));
    for (std::size_t i = 0; i < pv.size(); ++i) assignment[pv[i]] = p[i];
  }

  void set_phi(const std::vector<double>& phi) {
    const auto& sv = model.ctx->slot_vars();
    for (std::size_t i = 0; i < sv.size(); ++i) assignment[sv[i]] = phi[i];
  }

  // value and zero/nonzero classification per component
  void classify(const ClassifyConfig& cfg, std::vector<double>& values,
                std::vector<bool>& zero) {
    values.resize(comps.size());
    zero.resize(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
      double scale = 0;
      double v = comps[i].eval_scaled(assignment, scale);
      values[i] = v;
      zero[i] = std::fabs(v) <= cfg.tau_abs + cfg.tau_rel * scale;
    }
  }
};

std::vector<std::string> match_rows(const sigtable::SignatureTable& table,
                                    const std::vector<bool>& zero) {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    bool ok = true;
    for (std::size_t c = 0; c < table.columns && ok; ++c) {
      switch (table.cells[r][c].kind) {
        case sigtable::CellKind::Zero:
          ok = zero[c];
          break;
        case sigtable::CellKind::NonZero:
          ok = !zero[c];
          break;
        case sigtable::CellKind::MayVanish:
          break;
      }
    }
    if (ok) out.push_back(table.rows[r].label());
  }
  return out;
}

}  // namespace

Eigen::VectorXd nominal_x0(const DiagnosisModel& model,
                           const std::array<double, 5>& params) {
  const auto& ctx = *model.ctx;
  std::vector<double> assignment(ctx.universe()->size(), 0.0);
  const auto& pv = ctx.param_vars();
  if (pv.size() != params.size())
    throw std::invalid_argument("parameter count mismatch for this model");
  for (std::size_t i = 0; i < pv.size(); ++i) assignment[pv[i]] = params[i];
  // faults stay zero
  Eigen::VectorXd nominal(
      static_cast<Eigen::Index>(model.estimator.x0_slots.size()));
  for (std::size_t k = 0; k < model.estimator.x0_slots.size(); ++k)
    nominal(static_cast<Eigen::Index>(k)) =
        ctx.gamma(model.estimator.x0_slots[k]).eval_double(assignment);
  return nominal;
}

DiscriminationOutcome discriminate(const TimeSeries& series,
                                   std::size_t detect_index,
                                   const DiagnosisModel& model,
                                   const std::array<double, 5>& params,
                                   const ClassifyConfig& ccfg,
                                   const SplineConfig& scfg) {
  DiscriminationOutcome out;
  const std::size_t n = series.size();
  if (detect_index >= n) return out;
  const std::size_t seg = n - detect_index;
  if (seg < std::max<std::size_t>(6, ccfg.min_window + 2u)) return out;

  // Fresh derivative estimate over the post-detection segment only: the
  // fault transient sits at the segment boundary instead of inside it.
  std::vector<double> seg_t(series.t.begin() + static_cast<std::ptrdiff_t>(detect_index), series.t.end());
  std::vector<double> seg_y(series.y.begin() + static_cast<std::ptrdiff_t>(detect_index), series.y.end());
  SplineFit fit = smooth_spline_gcv(seg_t, seg_y, scfg);
  TimeSeries local = series;
  if (!local.has_deriv()) local.y_deriv.assign(n, 0.0);
  for (std::size_t j = 0; j < seg; ++j)
    local.y_deriv[detect_index + j] = fit.deriv[j];

  // Usable rows: inside the segment, away from its spline endpoints, not
  // switch-adjacent.
  auto usable = [&](std::size_t i) {
    std::size_t j = i - detect_index;
    if (j < static_cast<std::size_t>(ccfg.endpoint_skip)) return false;
    if (j + static_cast<std::size_t>(ccfg.endpoint_skip) >= seg) return false;
    return !series.excluded[i];
  };

  ComponentEvaluator eval(model, params);
  const auto& est = model.estimator;
  const std::size_t slot_count = model.ctx->slot_vars().size();

  std::vector<std::size_t> rows;
  std::vector<std::string> prev_match;
  int streak = 0;

  for (std::size_t k = detect_index; k < n; ++k) {
    if (usable(k)) rows.push_back(k);
    if (rows.size() < ccfg.min_window) continue;

    LinearSystem sys = assemble_faulty(local, rows, est);
    Eigen::VectorXd xf;
    try {
      xf = solve_least_squares(sys.A, sys.b);
    } catch (const RankDeficientError&) {
      continue;  // wait for more excitation
    }

    std::vector<double> phi(slot_count, 0.0);
    for (std::size_t c = 0; c < est.xf_slots.size(); ++c)
      phi[est.xf_slots[c]] = xf(static_cast<Eigen::Index>(c));
    for (const auto& [slot, value] : est.const_slots) phi[slot] = value;

    eval.set_phi(phi);
    DiscStep step;
    step.t = series.t[k];
    step.xf = xf;
    step.phi = phi;
    eval.classify(ccfg, step.component_values, step.component_zero);
    step.matches = match_rows(*model.table, step.component_zero);
    out.steps.push_back(step);

    if (step.matches.size() == 1 && step.matches == prev_match) {
      ++streak;
    } else if (step.matches.size() == 1) {
      prev_match = step.matches;
      streak = 1;
    } else {
      prev_match.clear();
      streak = 0;
    }
    if (streak >= ccfg.persist) {
      out.status = DiscStatus::unique;
      out.patterns = prev_match;
      out.time = series.t[k];
      return out;
    }
  }

  if (out.steps.empty()) {
    out.status = DiscStatus::insufficient_data;
    return out;
  }
  const auto& last = out.steps.back().matches;
  if (last.empty()) {
    out.status = DiscStatus::none_matched;
  } else {
    out.status = DiscStatus::ambiguous;
    out.patterns = last;
    out.time = out.steps.back().t;
  }
  return out;
}

DetectionReport run_scenario(const Scenario& scenario,
                             const DiagnosisModel& model,
                             const PipelineConfig& cfg) {
  DetectionReport report;
  report.scenario_name = scenario.name;
  if (model.ctx->fault_count() != scenario.faults.size()) {
    report.error = "configure: scenario fault vector has " +
                   std::to_string(scenario.faults.size()) +
                   " entries but the model declares " +
                   std::to_string(model.ctx->fault_count()) + " faults";
    return report;
  }
  try {
    report.series = simulate(scenario);
  } catch (const std::exception& e) {
    report.error = std::string("simulate: ") + e.what();
    return report;
  }
  try {
    estimate_derivative(report.series, cfg.spline);
  } catch (const std::exception& e) {
    report.error = std::string("differentiate: ") + e.what();
    return report;
  }
  DetectionOutcome det;
  try {
    Eigen::VectorXd nominal = nominal_x0(model, scenario.params);
    det = detect(report.series, model.estimator, nominal, cfg.detect);
  } catch (const std::exception& e) {
    report.error = std::string("detect: ") + e.what();
    return report;
  }
  report.detected = det.detected;
  report.detect_steps = std::move(det.steps);
  if (!det.detected) return report;
  report.detect_time = det.time;
  report.detect_delay = det.time - scenario.inject_time;
  report.detect_deviation = det.deviation;

  try {
    DiscriminationOutcome disc =
        discriminate(report.series, det.index, model, scenario.params,
                     cfg.classify, cfg.spline);
    report.disc_status = disc.status;
    report.patterns = disc.patterns;
    report.disc_time = disc.time;
    report.disc_delay = disc.time - scenario.inject_time;
    report.disc_steps = std::move(disc.steps);
  } catch (const std::exception& e) {
    report.error = std::string("discriminate: ") + e.what();
  }
  return report;
}

std::vector<DetectionReport> run_batch(const std::vector<Scenario>& scenarios,
                                       const DiagnosisModel& model,
                                       const PipelineConfig& cfg,
                                       ExecMode exec) {
  std::vector<DetectionReport> reports(scenarios.size());
  if (exec == ExecMode::openmp) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(scenarios.size()); ++i)
      reports[static_cast<std::size_t>(i)] =
          run_scenario(scenarios[static_cast<std::size_t>(i)], model, cfg);
  } else {
    for (std::size_t i = 0; i < scenarios.size(); ++i)
      reports[i] = run_scenario(scenarios[i], model, cfg);
  }
  return reports;
}

}  // namespace fd::simlab
