// Timing comparison between the OpenMP kernels and the serial reference
// on a desk-scale block. Build and run:
//   cmake --build build --target bench_kernels && ./build/tools/bench_kernels [nt nx]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kgflow/kernels.hpp"

namespace k = kgflow::kernels;
using k::cdouble;
using clk = std::chrono::steady_clock;

namespace {

double ms_since(clk::time_point t0) {
  return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = clk::now();
    fn();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

} // namespace

int main(int argc, char** argv) {
  const int nt = argc > 1 ? std::atoi(argv[1]) : 1024;
  const int nx = argc > 2 ? std::atoi(argv[2]) : 2048;
  const size_t n = static_cast<size_t>(nt) * nx;

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> f(n), out(n);
  for (auto& v : f) v = dist(rng);
  std::vector<cdouble> cf(n), cout_(n);
  for (auto& v : cf) v = cdouble(dist(rng), dist(rng));
  std::vector<double> V(nx), Ax(nx);
  for (int j = 0; j < nx; ++j) { V[j] = dist(rng); Ax[j] = dist(rng); }

  kgflow::PhysParams p;
#ifdef _OPENMP
  std::printf("block %d x %d, OpenMP threads: %d\n", nt, nx, omp_get_max_threads());
#else
  std::printf("block %d x %d, OpenMP not enabled\n", nt, nx);
#endif
  std::printf("%-18s %12s %12s %8s\n", "kernel", "serial [ms]", "omp [ms]", "speedup");

  struct Row { const char* name; double ser, par; };
  std::vector<Row> rows;

  rows.push_back({"ddx", time_best_of(3, [&] { k::serial::ddx(f.data(), out.data(), nt, nx, 0.01); }),
                  time_best_of(3, [&] { k::ddx(f.data(), out.data(), nt, nx, 0.01); })});
  rows.push_back({"ddt", time_best_of(3, [&] { k::serial::ddt(f.data(), out.data(), nt, nx, 0.01); }),
                  time_best_of(3, [&] { k::ddt(f.data(), out.data(), nt, nx, 0.01); })});
  rows.push_back({"d2dx", time_best_of(3, [&] { k::serial::d2dx(f.data(), out.data(), nt, nx, 0.01); }),
                  time_best_of(3, [&] { k::d2dx(f.data(), out.data(), nt, nx, 0.01); })});
  rows.push_back({"ddx (complex)",
                  time_best_of(3, [&] { k::serial::ddx(cf.data(), cout_.data(), nt, nx, 0.01); }),
                  time_best_of(3, [&] { k::ddx(cf.data(), cout_.data(), nt, nx, 0.01); })});

  // Leapfrog sweep over the whole block, reusing rows as time levels.
  auto kg_sweep_ser = [&] {
    for (int nstep = 2; nstep < nt; ++nstep)
      k::serial::kg_step(&cf[(nstep - 2) * static_cast<size_t>(nx)],
                         &cf[(nstep - 1) * static_cast<size_t>(nx)],
                         &cout_[nstep * static_cast<size_t>(nx)], V.data(), Ax.data(), nx, 0.01,
                         0.005, p, true);
  };
  auto kg_sweep_omp = [&] {
    for (int nstep = 2; nstep < nt; ++nstep)
      k::kg_step(&cf[(nstep - 2) * static_cast<size_t>(nx)],
                 &cf[(nstep - 1) * static_cast<size_t>(nx)],
                 &cout_[nstep * static_cast<size_t>(nx)], V.data(), Ax.data(), nx, 0.01, 0.005, p,
                 true);
  };
  rows.push_back({"kg_step sweep", time_best_of(3, kg_sweep_ser), time_best_of(3, kg_sweep_omp)});

  for (const auto& r : rows)
    std::printf("%-18s %12.3f %12.3f %8.2fx\n", r.name, r.ser, r.par, r.ser / r.par);
  return 0;
}
