// Times the serial reference kernels against the OpenMP ones and reports the
// speedup.  Also checks that both produce bitwise-identical output, which the
// row-partitioned parallelization is supposed to guarantee.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "projopt/kernels.hpp"
#include "projopt/ncm.hpp"
#include "projopt/parallel.hpp"
#include "projopt/rng.hpp"
#include "projopt/sym_matrix.hpp"

using namespace projopt;

namespace {

using Clock = std::chrono::steady_clock;

std::vector<double> random_buf(SubstreamRng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

// Runs fn repeatedly until ~target_ms have elapsed (at least 3 runs) and
// returns the best single-run time in milliseconds.
double best_ms(const std::function<void()>& fn, double target_ms) {
  fn();  // warm-up
  double best = 1e300;
  double total = 0.0;
  int runs = 0;
  while (runs < 3 || total < target_ms) {
    const auto t0 = Clock::now();
    fn();
    const double ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    best = std::min(best, ms);
    total += ms;
    ++runs;
    if (runs > 10000) break;
  }
  return best;
}

void print_row(const std::string& name, int n, double serial_ms,
               double omp_ms, bool match) {
  std::printf("%-14s %6d %12.3f %12.3f %9.2fx   %s\n", name.c_str(), n,
              serial_ms, omp_ms, serial_ms / omp_ms,
              match ? "bitwise" : "DIFFERS");
}

void bench_size(int n, double target_ms, SubstreamRng& rng) {
  const auto a = random_buf(rng, static_cast<std::size_t>(n) * n);
  const auto b = random_buf(rng, static_cast<std::size_t>(n) * n);
  const auto x = random_buf(rng, n);
  std::vector<double> c1(static_cast<std::size_t>(n) * n);
  std::vector<double> c2(static_cast<std::size_t>(n) * n);
  std::vector<double> work(static_cast<std::size_t>(n) * n);

  const auto same = [&](const std::vector<double>& u,
                        const std::vector<double>& v) {
    return std::memcmp(u.data(), v.data(), u.size() * sizeof(double)) == 0;
  };

  {
    const double s = best_ms(
        [&] { kern::serial::mul(a.data(), b.data(), c1.data(), n, n, n); },
        target_ms);
    const double p = best_ms(
        [&] { kern::omp::mul(a.data(), b.data(), c2.data(), n, n, n); },
        target_ms);
    print_row("mul", n, s, p, same(c1, c2));
  }
  {
    const double s = best_ms(
        [&] { kern::serial::mul_bt(a.data(), b.data(), c1.data(), n, n, n); },
        target_ms);
    const double p = best_ms(
        [&] { kern::omp::mul_bt(a.data(), b.data(), c2.data(), n, n, n); },
        target_ms);
    print_row("mul_bt", n, s, p, same(c1, c2));
  }
  {
    const double s = best_ms(
        [&] { kern::serial::mul_at(a.data(), b.data(), c1.data(), n, n, n); },
        target_ms);
    const double p = best_ms(
        [&] { kern::omp::mul_at(a.data(), b.data(), c2.data(), n, n, n); },
        target_ms);
    print_row("mul_at", n, s, p, same(c1, c2));
  }
  {
    std::vector<double> y1(n), y2(n);
    const double s = best_ms(
        [&] { kern::serial::matvec(a.data(), x.data(), y1.data(), n, n); },
        target_ms);
    const double p = best_ms(
        [&] { kern::omp::matvec(a.data(), x.data(), y2.data(), n, n); },
        target_ms);
    print_row("matvec", n, s, p, same(y1, y2));
  }
  {
    const double s = best_ms(
        [&] {
          kern::serial::sandwich_diag(a.data(), x.data(), c1.data(), n,
                                      work.data());
        },
        target_ms);
    const double p = best_ms(
        [&] {
          kern::omp::sandwich_diag(a.data(), x.data(), c2.data(), n,
                                   work.data());
        },
        target_ms);
    print_row("sandwich_diag", n, s, p, same(c1, c2));
  }
}

// End-to-end: one correlation projection, dominated by eigendecompositions,
// run under each execution policy.
void bench_projection(int n, SubstreamRng& rng) {
  SymMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) g.set(i, j, rng.uniform(-1.0, 1.0));
  for (int i = 0; i < n; ++i) g.set(i, i, 1.0);

  const auto t0 = Clock::now();
  const auto rs = project_elliptope_newton(g, 1e-7, 200, 1e-2, Exec::Serial);
  const double s =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  const auto t1 = Clock::now();
  const auto rp = project_elliptope_newton(g, 1e-7, 200, 1e-2, Exec::Parallel);
  const double p =
      std::chrono::duration<double, std::milli>(Clock::now() - t1).count();

  SymMatrix diff = rs.x;
  diff -= rp.x;
  std::printf("%-14s %6d %12.3f %12.3f %9.2fx   %s\n", "ncm_newton", n, s, p,
              s / p, frob_norm(diff) == 0.0 ? "bitwise" : "DIFFERS");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel benchmark: serial reference vs OpenMP"};
  std::string sizes_arg = "64,128,256,512";
  double target_ms = 50.0;
  int proj_n = 400;
  app.add_option("--sizes", sizes_arg, "comma-separated square sizes")
      ->capture_default_str();
  app.add_option("--target-ms", target_ms,
                 "time budget per measurement, best run is reported")
      ->capture_default_str();
  app.add_option("--projection-n", proj_n,
                 "size of the end-to-end correlation projection (0 skips)")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::vector<int> sizes;
  std::size_t pos = 0;
  while (pos < sizes_arg.size()) {
    const auto comma = sizes_arg.find(',', pos);
    const auto tok = sizes_arg.substr(pos, comma - pos);
    sizes.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

#ifdef _OPENMP
  std::printf("built with OpenMP\n");
#else
  std::printf("built without OpenMP; omp namespace falls back to plain loops\n");
#endif
  std::printf("%-14s %6s %12s %12s %10s   %s\n", "kernel", "n", "serial_ms",
              "omp_ms", "speedup", "output");

  SubstreamRng rng(2024, 0);
  for (const int n : sizes) bench_size(n, target_ms, rng);
  if (proj_n > 0) bench_projection(proj_n, rng);
  return 0;
}
