// Compares the serial reference implementations against the OpenMP ones:
// basin rendering (pixel-parallel) and the benchmark harness (cell-parallel).
// Verifies identical output, then reports timings.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mproots/basins.hpp"
#include "mproots/bench.hpp"

using namespace mproots;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

int main(int argc, char** argv) {
  int size = argc > 1 ? std::stoi(argv[1]) : 384;

  BasinConfig cfg;
  cfg.polynomial = {{-1, 0}, {0, 0}, {0, 0}, {1, 0}};  // z^3 - 1
  cfg.width = size;
  cfg.height = size;
  cfg.method = MethodKind::Om8;

  std::printf("threads: %d\n", threads());

  auto t0 = std::chrono::steady_clock::now();
  BasinImage serial = render_basin_serial(cfg);
  double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  BasinImage parallel = render_basin(cfg);
  double t_parallel = seconds_since(t0);

  bool identical = serial.rgb == parallel.rgb;
  std::printf("basin %dx%d: serial %.3fs, openmp %.3fs, speedup %.2fx, identical: %s\n",
              size, size, t_serial, t_parallel, t_serial / t_parallel,
              identical ? "yes" : "NO");

  // Benchmark harness cells (each cell owns its function session). The
  // tolerance protocol at reduced precision keeps this quick.
  Precision prec(200);
  auto method = MethodSpec::om8(FamilyParams::defaults(prec));
  auto cases = reference_cases({method});

  t0 = std::chrono::steady_clock::now();
  BenchmarkReport report = run_tolerance(cases, Real::from_decimal("1e-50", prec), prec);
  double t_cells = seconds_since(t0);
  std::printf("bench table (28 cells, %d digits): %.3fs with OpenMP scheduling\n",
              prec.digits(), t_cells);

  return identical ? 0 : 1;
}
