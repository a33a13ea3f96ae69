#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nwidth/widths.hpp"

namespace nwidth {

/// Parsed command line. Identical configs produce byte-identical artifacts
/// (wall-clock columns and the timestamp header are suppressed under
/// deterministic).
struct RunConfig {
  std::string command;  // compute | witness | verify | mc | table
  std::vector<std::string> instance_paths;
  int n_lo = 0;
  int n_hi = 0;
  std::vector<std::string> kinds;  // empty = all five
  std::string variant = "general";
  std::uint64_t seed = 42;
  int restarts = 64;
  int max_iters = 500;
  double tol = 1e-8;
  double eps = 1e-3;
  std::string info = "all";  // all | std
  long long samples = 100000;
  std::string out;           // empty = stdout
  std::string format = "csv";  // csv | json
  std::string suite = "default";
  bool deterministic = false;

  SearchConfig search() const {
    return SearchConfig{restarts, max_iters, tol, seed};
  }
};

/// Dispatches one command; writes artifacts to config.out or stdout.
/// verify returns nonzero when a certified theorem check fails; parse errors
/// return 2; per-item numerical failures become error rows, not aborts.
int run(const RunConfig& config);

/// Parses argv (CLI11) and runs.
int run_cli(int argc, const char* const* argv);

}  // namespace nwidth
