#ifndef FD_EXEC_HPP
#define FD_EXEC_HPP

namespace fd {

// Execution policy for the data-parallel kernels (pattern bases, table
// cells, scenario batches). Serial is the reference implementation; the
// OpenMP path must produce bit-identical results and is checked against it
// in the tests and the kernel benchmark.
enum class ExecMode { serial, openmp };

}  // namespace fd

#endif
