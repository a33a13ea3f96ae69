// Serial vs OpenMP comparison of the chunk-parallel kernels: the sphere
// Monte Carlo experiment, the 2-d direction sweep, the Bernstein subspace
// search, and a full verification sweep. Both paths must produce identical
// results; the benchmark asserts that before timing.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "nwidth/parallel.hpp"
#include "nwidth/recovery.hpp"
#include "nwidth/verify.hpp"

using namespace nwidth;

namespace {

double time_ms(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

struct BenchCase {
  std::string name;
  std::function<double()> run;  // returns a checksum
};

}  // namespace

int main() {
  SearchConfig cfg;
  cfg.restarts = 64;
  cfg.max_iters = 200;

  const Instance simplex3(Operator{Eigen::MatrixXd::Identity(3, 3), Norm::L2, Norm::L2},
                          ConvexBody::simplex(3));
  const Instance ball2(Operator{Eigen::MatrixXd::Identity(2, 2), Norm::L1, Norm::Linf},
                       ConvexBody::lp_ball(Norm::L1, 1.0, 2));

  std::vector<BenchCase> cases;
  cases.push_back({"mc_sphere n=4 2e6",
                   [&] { return sphere_mc_lower_bound(4, 2000000, 7).mean_error_lb; }});
  cases.push_back({"gelfand grid 2d",
                   [&] { return gelfand(ball2, 1, InfoClass::all(), cfg).upper; }});
  cases.push_back({"bernstein simplex3 n=1",
                   [&] { return bernstein(simplex3, 1, cfg).lower; }});
  cases.push_back({"verify suite (1e4 mc)", [&] {
                     const VerifyRun run = run_default_suite(cfg, 10000);
                     return static_cast<double>(run.reports.size()) +
                            (run.all_certified_hold ? 0.5 : 0.0);
                   }});

  std::printf("%-24s %12s %12s %9s %8s\n", "case", "serial[ms]", "openmp[ms]", "speedup",
              "match");
  int mismatches = 0;
  for (const BenchCase& c : cases) {
    par::set_enabled(false);
    double serial_result = 0.0;
    const double serial_ms = time_ms([&] { serial_result = c.run(); });
    par::set_enabled(true);
    double parallel_result = 0.0;
    const double parallel_ms = time_ms([&] { parallel_result = c.run(); });
    const bool match = serial_result == parallel_result;
    if (!match) ++mismatches;
    std::printf("%-24s %12.1f %12.1f %8.2fx %8s\n", c.name.c_str(), serial_ms, parallel_ms,
                serial_ms / std::max(1e-9, parallel_ms), match ? "yes" : "NO");
  }
  std::printf("workers: %d\n", par::worker_count());
  return mismatches;
}
