#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nwidth/solve.hpp"

namespace nwidth {

enum class WidthKind { Gelfand, Kolmogorov, Bernstein, Hilbert, Approximation };

std::string width_name(WidthKind k);
WidthKind width_from_name(const std::string& name);

/// Which functionals a Gelfand-type computation may measure with: the whole
/// dual space, or a finite admissible set (e.g. coordinate evaluations).
struct InfoClass {
  bool all_linear = true;
  std::vector<Functional> set;

  static InfoClass all() { return InfoClass{}; }
  static InfoClass finite(std::vector<Functional> fs);
};

/// Standard information on ℓ∞-style coordinates: the d coordinate
/// evaluations, with coefficients in the dual of the source norm.
InfoClass standard_information(const Instance& inst);

/// Certified two-sided estimate of one width. A side is certified when it is
/// backed by a machine-checked certificate (exact section suprema, inscribed
/// balls, compression certificates, exhaustive grids); heuristic search
/// results are reported with the flag down and are excluded from theorem
/// verification. exact means both sides certified and gap ≤ 1e-6.
struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_certified = false;
  bool upper_certified = false;
  bool exact = false;
  nlohmann::json lower_witness;
  nlohmann::json upper_witness;
};

Bounds gelfand(const Instance& inst, int n, const InfoClass& info, const SearchConfig& cfg);
Bounds kolmogorov(const Instance& inst, int n, const SearchConfig& cfg);
Bounds bernstein(const Instance& inst, int n, const SearchConfig& cfg);
Bounds hilbert(const Instance& inst, int n, const SearchConfig& cfg);
Bounds approximation(const Instance& inst, int n, const SearchConfig& cfg);

Bounds compute_width(const Instance& inst, WidthKind kind, int n,
                     const InfoClass& info, const SearchConfig& cfg);

/// True when every width admits the singular-value oracle: both norms L2 and
/// a centered Euclidean-ball body.
bool svd_exact_regime(const Instance& inst);

/// r·σ_{k+1} for k = 0..dim−1 in the oracle regime; throws otherwise.
std::vector<double> singular_widths(const Instance& inst);

}  // namespace nwidth
