// Compares the serial reference implementations of the three data-parallel
// kernels against their OpenMP counterparts: pattern bases + signature,
// table cell evaluation, and the scenario batch. Verifies that both paths
// produce identical results, then reports wall times and speedups.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fd/analysis.hpp"
#include "fd/io/modelfile.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Synthetic five-fault model: 32 patterns, enough work to show scaling.
std::string synthetic_model() {
  return R"MODEL(model synthetic5
param p1 p2 p3
fault f1 f2 f3 f4 f5
slot s1 gamma "p1*(f1+1)*(f2-2)" tag "u"
slot s2 gamma "p2*f2^2+p1*f3" tag "y"
slot s3 gamma "p3*(f3+1)^2-p3" tag "yp"
slot s4 gamma "f4*p1*p2+f5" tag "y*yp"
slot s5 gamma "p2*(f5-1)^2*(f1+p3)" tag "1"
m0 "0"
constraint p1 > 0
constraint p2 > 0
constraint p3 > 0
)MODEL";
}

std::string signature_digest(const fd::Analysis& a) {
  std::ostringstream os;
  for (const auto& c : a.sig.signature.components) os << c.poly.to_string() << ";";
  if (a.table)
    for (const auto& row : a.table->cells)
      for (const auto& cell : row)
        os << fd::sigtable::cell_kind_symbol(cell.kind);
  return os.str();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both paths run serially\n");
#endif

  fd::io::ModelFile model = fd::io::parse_model_text(synthetic_model());

  fd::AnalysisOptions serial_opts, parallel_opts;
  serial_opts.exec = fd::ExecMode::serial;
  parallel_opts.exec = fd::ExecMode::openmp;
  serial_opts.witness.samples = 4000;
  parallel_opts.witness.samples = 4000;

  auto t0 = Clock::now();
  fd::Analysis serial = fd::run_analysis(model, serial_opts);
  double t_serial = seconds_since(t0);

  t0 = Clock::now();
  fd::Analysis parallel = fd::run_analysis(model, parallel_opts);
  double t_parallel = seconds_since(t0);

  bool same = signature_digest(serial) == signature_digest(parallel);
  std::printf("symbolic analysis (32 patterns, %zu components):\n",
              serial.sig.signature.components.size());
  std::printf("  serial  %.3f s\n  openmp  %.3f s  (speedup %.2fx)\n",
              t_serial, t_parallel, t_serial / t_parallel);
  std::printf("  results identical: %s\n", same ? "yes" : "NO");
  if (!same) return 1;

  // Scenario batch on the shipped two-tank model.
  const char* wt_path = FD_FIXTURE_DIR "/watertank.model";
  fd::io::ModelFile wt = fd::io::load_model_file(wt_path);
  fd::AnalysisOptions wopts;
  fd::Analysis wt_serial = fd::run_analysis(wt, wopts);
  fd::simlab::DiagnosisModel dm = fd::diagnosis_model(wt_serial);

  std::vector<fd::simlab::Scenario> jobs;
  for (int i = 0; i < 24; ++i) {
    fd::simlab::Scenario sc;
    sc.name = "job" + std::to_string(i);
    sc.faults = {0.5 * (i % 2), 0.5 * ((i / 2) % 2), 0.1 * (i % 3)};
    sc.seed = static_cast<std::uint64_t>(100 + i);
    jobs.push_back(sc);
  }
  fd::simlab::PipelineConfig pcfg;

  t0 = Clock::now();
  auto serial_reports = fd::simlab::run_batch(jobs, dm, pcfg, fd::ExecMode::serial);
  double t_bserial = seconds_since(t0);
  t0 = Clock::now();
  auto parallel_reports = fd::simlab::run_batch(jobs, dm, pcfg, fd::ExecMode::openmp);
  double t_bparallel = seconds_since(t0);

  bool batch_same = true;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (serial_reports[i].detected != parallel_reports[i].detected ||
        serial_reports[i].patterns != parallel_reports[i].patterns ||
        serial_reports[i].detect_time != parallel_reports[i].detect_time)
      batch_same = false;
  }
  std::printf("scenario batch (%zu runs):\n", jobs.size());
  std::printf("  serial  %.3f s\n  openmp  %.3f s  (speedup %.2fx)\n",
              t_bserial, t_bparallel, t_bserial / t_bparallel);
  std::printf("  results identical: %s\n", batch_same ? "yes" : "NO");
  return batch_same ? 0 : 1;
}
