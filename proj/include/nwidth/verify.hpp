#pragma once

#include <string>
#include <vector>

#include "nwidth/recovery.hpp"
#include "nwidth/widths.hpp"
#include "nwidth/witness.hpp"

namespace nwidth {

/// One verified inequality on one instance. Checks consume only the bound
/// side that makes the test sound (certified lower on the left, certified
/// upper on the right); sides_certified records whether that discipline was
/// satisfiable, and a certified proven inequality that fails to hold is a
/// build-failing event.
struct InequalityReport {
  std::string name;
  std::string instance_id;
  int n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double factor = 1.0;
  double margin = 0.0;  // rhs − lhs
  bool holds = false;
  bool sides_certified = false;
  std::string note;
};

struct RateReport {
  std::string name;
  double alpha = 0.0;
  double residual = 0.0;
};

struct SuiteInstance {
  std::string id;
  Instance inst;
};

/// The shipped verification suite: Hilbert–Hilbert diagonals, ℓ1→ℓ∞ and
/// ℓ1→ℓ2 identities (m ∈ {2,3,4}), simplices under ℓ2 and ℓ∞, seeded random
/// V-polytopes, and shifted bodies.
std::vector<SuiteInstance> default_suite(std::uint64_t seed);

/// All five widths at one (instance, n).
struct WidthTable {
  Bounds gelfand;
  Bounds kolmogorov;
  Bounds bernstein;
  Bounds hilbert;
  Bounds approximation;
};
WidthTable width_table(const Instance& inst, int n, const SearchConfig& cfg);

/// h_n ≤ b_n ≤ c_n on certified sides.
InequalityReport check_ordering(const std::string& id, const WidthTable& t, int n);

/// Geometric-mean certificate of a compression chain:
/// (∏ step bounds)^{1/q} ≤ q^γ (1+eps) (∏ σ_{k+1}(S_q))^{1/q}.
InequalityReport check_geometric_mean(const std::string& id, const Instance& inst,
                                      int n, ChainVariant variant,
                                      const SearchConfig& cfg);
InequalityReport check_geometric_mean(const std::string& id, const WitnessChain& chain,
                                      const ChainCertificate& cert);

/// c_n ≤ (n+1)·b_n for Hilbert targets (√(n+1) when the body is symmetric).
InequalityReport check_hilbert_target(const std::string& id, const Instance& inst,
                                      const WidthTable& t, int n);

/// For non-increasing positive z with z_k ≤ c·z_{2k} (k ≤ n/2):
/// (∏_{k≤n} z_k)^{1/n} ≤ c⁴ z_n. Reports not-applicable when the
/// hypothesis fails.
InequalityReport check_regularity(const std::vector<double>& z, double c);

/// (∏_{k≤n} z_k)^{1/n} ≤ sqrt(z_1 · z_{n/2}) for non-increasing positive z.
InequalityReport check_superpolynomial(const std::vector<double>& z, int n);

/// Carl-style width-level consequence:
/// c_{2n−1} ≤ 12^{α+1} n^{−α+γ} sup_{k<2n} (k+1)^α h_k, with the h-sequence
/// standing proxy for twice the randomized minimal errors.
InequalityReport check_carl(const std::string& id, const Instance& inst,
                            const std::vector<WidthTable>& tables, int n, double alpha);

/// Least-squares polynomial decay rate of a positive sequence (1-based index).
RateReport fit_rate(const std::vector<double>& z);

/// (i) d_n against the geometric mean of Hilbert bounds, (ii) c_n ≤ d_n for
/// Hilbert targets, (iii) d_n ≤ (n+1)²·b_n.
std::vector<InequalityReport> check_kolmogorov_relations(const std::string& id,
                                                         const Instance& inst,
                                                         const std::vector<WidthTable>& tables,
                                                         int n);

struct VerifyRun {
  std::vector<InequalityReport> reports;
  std::vector<RateReport> rates;
  std::vector<McResult> mc;
  bool all_certified_hold = true;
};

/// Runs every check family over the shipped suite. Deterministic under the
/// seed; instance-level tasks may run concurrently.
VerifyRun run_default_suite(const SearchConfig& cfg, long long mc_samples = 100000);

}  // namespace nwidth
