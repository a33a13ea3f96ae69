#include "nwidth/recovery.hpp"

#include <cmath>
#include <stdexcept>

#include "nwidth/parallel.hpp"
#include "nwidth/rng.hpp"

namespace nwidth {

InformationMap::InformationMap(std::vector<Functional> fs, InfoClass cls)
    : functionals(std::move(fs)), admissible(std::move(cls)) {
  if (!admissible.all_linear) {
    for (const Functional& f : functionals) {
      bool found = false;
      for (const Functional& g : admissible.set) {
        if (f.coefficients.size() == g.coefficients.size() &&
            (f.coefficients.array() == g.coefficients.array()).all()) {
          found = true;
          break;
        }
      }
      if (!found)
        throw std::invalid_argument(
            "InformationMap: functional not in the admissible class");
    }
  }
}

Eigen::MatrixXd InformationMap::rows(int ambient) const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(functionals.size()), ambient);
  for (std::size_t i = 0; i < functionals.size(); ++i) {
    if (functionals[i].coefficients.size() != ambient)
      throw std::invalid_argument("InformationMap: functional dimension mismatch");
    m.row(static_cast<Eigen::Index>(i)) = functionals[i].coefficients.transpose();
  }
  return m;
}

Eigen::VectorXd InformationMap::apply(const Eigen::VectorXd& x) const {
  return rows(static_cast<int>(x.size())) * x;
}

Eigen::VectorXd optimal_recovery(const Instance& inst, const InformationMap& info,
                                 const Eigen::VectorXd& y) {
  if (y.size() != info.count())
    throw std::invalid_argument("optimal_recovery: observation count mismatch");
  const ChebResult cheb =
      chebyshev_center(inst, info.rows(inst.source_dim()), y, inst.op.target_norm);
  return cheb.center;
}

RecoveryReport worst_case_error(const Instance& inst, const InformationMap& info,
                                const SearchConfig& cfg) {
  const int d = inst.source_dim();
  const Eigen::MatrixXd rows = info.rows(d);
  const SectionMax sm =
      max_seminorm_on_section(inst, nullspace(info.functionals, d), cfg);
  RecoveryReport report;
  report.radius_of_information = sm.value;
  report.worst_case_error = sm.value;  // the center algorithm attains it
  report.witness_f = sm.f;
  report.witness_g = sm.g;
  report.certified = sm.certified;
  // the pair is indistinguishable by construction (p lies in ker N)
  if ((rows * (sm.f - sm.g)).lpNorm<Eigen::Infinity>() > 1e-7)
    report.certified = false;
  return report;
}

McResult sphere_mc_lower_bound(int n, long long samples, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sphere_mc_lower_bound: n must be >= 1");
  if (samples < 1) throw std::invalid_argument("sphere_mc_lower_bound: samples must be >= 1");

  struct Sums {
    double tail_sq = 0.0;   // Σ over samples of Σ_{i>n} f_i²
    double radius = 0.0;    // Σ of r_y = sqrt(tail)
    double radius_sq = 0.0; // Σ of r_y² (for the standard error)
  };
  const std::size_t chunk = 4096;
  const int dim = 2 * n;
  const Sums total = par::chunked_reduce(
      static_cast<std::size_t>(samples), chunk, Sums{},
      [&](std::size_t chunk_index, std::size_t begin, std::size_t end) {
        Rng rng = Rng::for_stream(seed, chunk_index);
        Sums s;
        Eigen::VectorXd f(dim);
        for (std::size_t i = begin; i < end; ++i) {
          for (int j = 0; j < dim; ++j) f[j] = rng.normal();
          const double norm = f.norm();
          if (norm < 1e-300) continue;
          f /= norm;
          const double tail = f.tail(n).squaredNorm();
          s.tail_sq += tail;
          const double r = std::sqrt(tail);
          s.radius += r;
          s.radius_sq += tail;
        }
        return s;
      },
      [](Sums a, Sums b) {
        a.tail_sq += b.tail_sq;
        a.radius += b.radius;
        a.radius_sq += b.radius_sq;
        return a;
      });

  McResult res;
  res.n = n;
  res.samples = samples;
  res.seed = seed;
  const double count = static_cast<double>(samples);
  res.coord_second_moment = total.tail_sq / count;
  res.mean_error_lb = total.radius / count;
  const double mean_r = res.mean_error_lb;
  const double var = std::max(0.0, total.radius_sq / count - mean_r * mean_r);
  res.stderr_estimate = std::sqrt(var / count);
  return res;
}

}  // namespace nwidth
