// fdiag: algebraic multi-fault diagnosis toolkit.
//
//   fdiag analyze <model> [-o bundle] [--table file] [--format md|csv]
//   fdiag run <bundle> <scenario> [--report file] [--dump-series file]
//   fdiag bench <bundle> <scenario...> [--seeds N] [--noiseless]
//
// Exit codes: 0 success, 1 usage or parse failure, 2 symbolic failure
// (including the empty-signature warning), 3 numeric failure or ambiguous
// discrimination.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "fd/analysis.hpp"
#include "fd/io/bundle.hpp"
#include "fd/io/modelfile.hpp"
#include "fd/io/scenariofile.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSymbolic = 2;
constexpr int kExitNumeric = 3;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << content;
}

std::string true_pattern_label(const fd::simlab::Scenario& sc) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < sc.faults.size(); ++i)
    if (sc.faults[i] != 0.0) mask |= (1u << i);
  return fd::siggen::FaultPattern{mask}.label();
}

int cmd_analyze(const std::string& model_path, const std::string& bundle_path,
                const std::string& table_path, const std::string& format,
                std::uint64_t seed, bool substitute, bool serial) {
  fd::io::ModelFile model;
  try {
    model = fd::io::load_model_file(model_path);
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  }

  fd::AnalysisOptions options;
  options.exec = serial ? fd::ExecMode::serial : fd::ExecMode::openmp;
  options.witness.seed = seed;
  options.substitute_known = substitute;

  fd::Analysis analysis = [&]() {
    try {
      return fd::run_analysis(std::move(model), options);
    } catch (const std::exception& e) {
      std::cerr << "symbolic analysis failed: " << e.what() << "\n";
      std::exit(kExitSymbolic);
    }
  }();

  if (!bundle_path.empty()) fd::io::save_bundle(analysis, bundle_path);

  if (analysis.sig.empty_signature) {
    std::cerr << "warning: the signature is empty (no component discriminates "
                 "any fault pattern)\n";
    return kExitSymbolic;
  }

  std::cout << "signature components (" << analysis.sig.signature.components.size()
            << "):\n";
  for (std::size_t i = 0; i < analysis.sig.signature.components.size(); ++i) {
    const auto& c = analysis.sig.signature.components[i];
    std::cout << "  ASig" << (i + 1) << " = " << c.poly.to_string() << "   [";
    for (std::size_t k = 0; k < c.provenance.size(); ++k)
      std::cout << (k ? " " : "") << c.provenance[k].label();
    std::cout << "]\n";
  }

  std::string rendered = format == "csv"
                             ? fd::sigtable::render_csv(*analysis.table)
                             : fd::sigtable::render_markdown(*analysis.table);
  std::cout << "\nexpected-value table (0 zero, !0 nonzero, ? may vanish):\n"
            << rendered;
  if (!table_path.empty()) write_file(table_path, rendered);

  std::cout << "\nverdict: "
            << fd::sigtable::overall_verdict_name(analysis.verdict->overall)
            << "\n";
  std::cout << "input-independent columns:";
  for (std::size_t c = 0; c < analysis.table->columns; ++c)
    if (analysis.table->input_independent[c]) std::cout << " ASig" << (c + 1);
  std::cout << "\nanalysis time: " << analysis.analyze_seconds << " s\n";
  return kExitOk;
}

int cmd_run(const std::string& bundle_path, const std::string& scenario_path,
            const std::string& report_path, const std::string& series_path,
            double zero_threshold, std::optional<std::uint64_t> seed,
            std::optional<double> noise_amp, std::optional<double> sampling) {
  fd::Analysis analysis = [&]() {
    try {
      return fd::io::load_bundle(bundle_path);
    } catch (const std::exception& e) {
      std::cerr << "cannot load bundle: " << e.what() << "\n";
      std::exit(kExitUsage);
    }
  }();

  fd::simlab::Scenario scenario;
  try {
    scenario = fd::io::load_scenario_file(scenario_path);
    if (seed) scenario.seed = *seed;
    if (noise_amp) scenario.noise_amp = *noise_amp;
    if (sampling) scenario.sampling = *sampling;
    scenario.validate();
  } catch (const std::exception& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitUsage;
  }

  fd::simlab::PipelineConfig cfg;
  if (zero_threshold > 0) cfg.classify.tau_abs = zero_threshold;

  fd::simlab::DiagnosisModel dm;
  try {
    dm = fd::diagnosis_model(analysis);
  } catch (const std::exception& e) {
    std::cerr << "bundle unusable for runs: " << e.what() << "\n";
    return kExitSymbolic;
  }

  fd::simlab::DetectionReport report =
      fd::simlab::run_scenario(scenario, dm, cfg);

  if (!report_path.empty())
    write_file(report_path, fd::io::report_to_json(report).dump(2) + "\n");
  if (!series_path.empty())
    write_file(series_path, fd::simlab::series_csv(report.series));

  if (!report.error.empty()) {
    std::cerr << "run failed at stage " << report.error << "\n";
    return kExitNumeric;
  }
  if (!report.detected) {
    std::cout << "no fault detected over [" << scenario.t_begin << ", "
              << scenario.t_end << "]\n";
    return kExitOk;
  }
  std::cout << "detection: t=" << report.detect_time << " s (delay "
            << report.detect_delay << " s, deviation "
            << report.detect_deviation << ")\n";
  switch (report.disc_status) {
    case fd::simlab::DiscStatus::unique:
      std::cout << "discrimination: pattern " << report.patterns.front()
                << " at t=" << report.disc_time << " s (delay "
                << report.disc_delay << " s)\n";
      return kExitOk;
    case fd::simlab::DiscStatus::ambiguous: {
      std::cout << "discrimination: ambiguous among";
      for (const auto& p : report.patterns) std::cout << " " << p;
      std::cout << " at end of data\n";
      return kExitNumeric;
    }
    case fd::simlab::DiscStatus::none_matched:
      std::cout << "discrimination: no table row matches the estimates\n";
      return kExitNumeric;
    case fd::simlab::DiscStatus::insufficient_data:
      std::cout << "discrimination: not enough post-detection data\n";
      return kExitNumeric;
  }
  return kExitOk;
}

int cmd_bench(const std::string& bundle_path,
              const std::vector<std::string>& scenario_paths, int seeds,
              bool noiseless, bool serial) {
  fd::Analysis analysis = [&]() {
    try {
      return fd::io::load_bundle(bundle_path);
    } catch (const std::exception& e) {
      std::cerr << "cannot load bundle: " << e.what() << "\n";
      std::exit(kExitUsage);
    }
  }();
  fd::simlab::DiagnosisModel dm;
  try {
    dm = fd::diagnosis_model(analysis);
  } catch (const std::exception& e) {
    std::cerr << "bundle unusable for runs: " << e.what() << "\n";
    return kExitSymbolic;
  }

  std::vector<fd::simlab::Scenario> scenarios;
  for (const auto& path : scenario_paths) {
    try {
      scenarios.push_back(fd::io::load_scenario_file(path));
    } catch (const std::exception& e) {
      std::cerr << "scenario error: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  fd::simlab::PipelineConfig cfg;
  std::vector<fd::simlab::Scenario> jobs;
  for (const auto& base : scenarios) {
    for (int s = 0; s < seeds; ++s) {
      fd::simlab::Scenario sc = base;
      sc.seed = base.seed + static_cast<std::uint64_t>(s);
      if (noiseless) sc.noise_amp = 0.0;
      jobs.push_back(sc);
    }
  }
  auto reports = fd::simlab::run_batch(
      jobs, dm, cfg, serial ? fd::ExecMode::serial : fd::ExecMode::openmp);

  std::cout << "scenario              ref(det/disc)   median(det/disc)   "
               "correct   verdict\n";
  bool all_ok = true;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const auto& base = scenarios[i];
    std::string want = true_pattern_label(base);
    std::vector<double> det, disc;
    int correct = 0;
    for (int s = 0; s < seeds; ++s) {
      const auto& r = reports[i * static_cast<std::size_t>(seeds) +
                              static_cast<std::size_t>(s)];
      if (!r.error.empty() || !r.detected) continue;
      det.push_back(r.detect_delay);
      if (r.disc_status == fd::simlab::DiscStatus::unique &&
          r.patterns.front() == want) {
        ++correct;
        disc.push_back(r.disc_delay);
      }
    }
    auto median = [](std::vector<double> v) -> double {
      if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
      std::sort(v.begin(), v.end());
      return v[v.size() / 2];
    };
    bool ok = correct >= (seeds + 1) * 9 / 10 ||
              (seeds == 1 && correct == 1);
    all_ok = all_ok && ok;
    char buf[256];
    double ref_det = base.reference_times ? base.reference_times->first : -1;
    double ref_disc = base.reference_times ? base.reference_times->second : -1;
    std::snprintf(buf, sizeof buf,
                  "%-20s  %5.1f/%-5.1f     %5.2f/%-5.2f       %d/%d      %s",
                  base.name.c_str(), ref_det, ref_disc, median(det),
                  median(disc), correct, seeds, ok ? "pass" : "FAIL");
    std::cout << buf << "\n";
  }
  return all_ok ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebraic multi-fault diagnosis toolkit"};
  app.require_subcommand(1);

  std::string model_path, bundle_path, table_path, format = "md";
  std::string scenario_path, report_path, series_path;
  std::uint64_t seed = fd::sigtable::WitnessConfig{}.seed;
  bool substitute = false, serial = false, noiseless = false;
  double zero_threshold = 0.0;
  int seeds = 1;
  std::vector<std::string> scenario_paths;
  std::optional<std::uint64_t> run_seed;
  std::optional<double> run_noise, run_sampling;

  auto* analyze = app.add_subcommand("analyze", "symbolic analysis of a model");
  analyze->add_option("model", model_path)->required();
  analyze->add_option("-o,--bundle", bundle_path);
  analyze->add_option("--table", table_path);
  analyze->add_option("--format", format)->check(CLI::IsMember({"md", "csv"}));
  analyze->add_option("--seed", seed);
  analyze->add_flag("--substitute-params", substitute);
  analyze->add_flag("--serial", serial);

  auto* run = app.add_subcommand("run", "run one scenario against a bundle");
  run->add_option("bundle", bundle_path)->required();
  run->add_option("scenario", scenario_path)->required();
  run->add_option("--report", report_path);
  run->add_option("--dump-series", series_path);
  run->add_option("--zero-threshold", zero_threshold);
  run->add_option("--seed", run_seed);
  run->add_option("--noise-amp", run_noise);
  run->add_option("--sampling", run_sampling);

  auto* bench = app.add_subcommand("bench", "run the scenario batch");
  bench->add_option("bundle", bundle_path)->required();
  bench->add_option("scenarios", scenario_paths)->required();
  bench->add_option("--seeds", seeds);
  bench->add_flag("--noiseless", noiseless);
  bench->add_flag("--serial", serial);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed())
      return cmd_analyze(model_path, bundle_path, table_path, format, seed,
                         substitute, serial);
    if (run->parsed())
      return cmd_run(bundle_path, scenario_path, report_path, series_path,
                     zero_threshold, run_seed, run_noise, run_sampling);
    if (bench->parsed())
      return cmd_bench(bundle_path, scenario_paths, seeds, noiseless, serial);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
