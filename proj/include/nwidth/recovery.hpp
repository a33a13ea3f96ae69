#pragma once

#include <cstdint>

#include "nwidth/solve.hpp"
#include "nwidth/widths.hpp"

namespace nwidth {

/// A non-adaptive measurement plan: the functionals applied to every input,
/// each required to belong to the admissible class (exact coefficient match
/// when the class is finite).
struct InformationMap {
  std::vector<Functional> functionals;
  InfoClass admissible;

  InformationMap(std::vector<Functional> fs, InfoClass cls);
  int count() const { return static_cast<int>(functionals.size()); }
  Eigen::MatrixXd rows(int ambient) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

/// Worst-case behaviour of the optimal (center) reconstruction for a fixed
/// measurement plan. The witnesses are an indistinguishable input pair
/// realizing the radius of information.
struct RecoveryReport {
  double worst_case_error = 0.0;
  double radius_of_information = 0.0;
  Eigen::VectorXd witness_f;
  Eigen::VectorXd witness_g;
  bool certified = false;
};

/// Center-of-consistent-set reconstruction: returns the Chebyshev center of
/// S({x ∈ F : N(x) = y}). Throws std::domain_error on inconsistent y.
Eigen::VectorXd optimal_recovery(const Instance& inst, const InformationMap& info,
                                 const Eigen::VectorXd& y);

/// Radius of information of the plan: sup of half-image-diameters over
/// indistinguishable pairs, evaluated on the kernel section of the
/// half-difference body. The center algorithm attains it.
RecoveryReport worst_case_error(const Instance& inst, const InformationMap& info,
                                const SearchConfig& cfg = {});

/// Empirical lower-bound experiment on the Euclidean unit sphere of ℝ^{2n}
/// with coordinate measurements: the tail second moment concentrates at 1/2
/// and the mean conditional radius dominates it. Chunked, deterministic
/// under the seed, parallel-safe.
struct McResult {
  int n = 0;
  long long samples = 0;
  std::uint64_t seed = 0;
  double coord_second_moment = 0.0;
  double mean_error_lb = 0.0;
  double stderr_estimate = 0.0;
};
McResult sphere_mc_lower_bound(int n, long long samples, std::uint64_t seed);

}  // namespace nwidth
