#pragma once

#include <vector>

#include "nwidth/solve.hpp"

namespace nwidth {

/// The four flavors of the greedy compression chain. Each flavor changes the
/// scaling of the assembled operators (and, for the Hilbert-source case, the
/// constraint set of the inner maximization).
enum class ChainVariant { General, SymmetricF, HilbertTarget, HilbertSourceBall };

std::string chain_variant_name(ChainVariant v);
ChainVariant chain_variant_from_name(const std::string& name);

/// Variants whose preconditions the instance satisfies (General is always
/// admissible; SymmetricF needs a symmetric body; HilbertTarget an L2 target;
/// HilbertSourceBall an L2 source with a centered Euclidean-ball body).
std::vector<ChainVariant> admissible_variants(const Instance& inst);

/// One greedy step: p maximizes ‖Sp‖ over the current kernel section,
/// realized as p = (f−g)/2 with f, g in the body; lambda norms Sp in the
/// target norm and L = lambda∘S closes the induction.
struct ChainStep {
  Eigen::VectorXd p;
  Eigen::VectorXd f;
  Eigen::VectorXd g;
  Functional lambda;  // in Y′, ‖lambda‖_dual ≤ 1, lambda(Sp) = ‖Sp‖
  Functional L;       // in X′, L = lambda ∘ S
  double value = 0.0;  // ‖Sp‖
  bool certified = false;
};

/// The assembled chain: compression S_n = B·S·A is lower-triangular with
/// diagonal entries (a_scale·b_scale)·value_k, A(B_{ℓ2})+shift ⊆ F and
/// ‖B‖ ≤ 1, which makes every σ_{k+1}(S_n) a certified Hilbert-number lower
/// bound and the determinant identity a machine-checkable certificate.
struct WitnessChain {
  ChainVariant variant = ChainVariant::General;
  double eps = 1e-3;
  std::vector<ChainStep> steps;
  Eigen::MatrixXd a_op;       // source_dim × q, scaling included
  Eigen::MatrixXd b_op;       // q × target_dim, scaling included
  Eigen::VectorXd shift;      // the translate g
  Eigen::MatrixXd compressed; // S_n = b_op · S · a_op
  double a_scale = 1.0;
  double b_scale = 1.0;
  double gamma = 1.5;      // exponent in the geometric-mean estimate
  int index_stride = 1;    // 2 for HilbertSourceBall: step k bounds index 2k

  int length() const { return static_cast<int>(steps.size()); }
};

/// Runs the greedy induction for up to n steps. Sections that collapse
/// (supremum below 1e-12) truncate the chain. eps > 0 is the slack carried
/// into every certificate; the inner maximizer is exact in the polytopal and
/// ball regimes, so eps only weakens the reported bounds.
WitnessChain build_chain(const Instance& inst, int n, ChainVariant variant,
                         double eps, const SearchConfig& cfg);

struct ChainCertificate {
  bool containment_ok = false;   // A(B_{ℓ2}) + shift ⊆ F
  bool contraction_ok = false;   // ‖B‖ ≤ 1
  bool triangular_ok = false;    // S_n lower-triangular
  double det_lower = 0.0;        // ∏ (a_scale·b_scale·value_k)
  double det_actual = 0.0;       // ∏ σ_i(S_n)
  std::vector<double> sigma;
  std::vector<double> per_step_hilbert_lb;  // σ_{k+1}(S_n)

  bool all_ok() const { return containment_ok && contraction_ok && triangular_ok; }
};

/// Checks every certificate ingredient; failures are recorded in the flags,
/// never thrown.
ChainCertificate certify_chain(const WitnessChain& chain, const Instance& inst);

/// value_k/(1+eps) for a certified-exact step; throws std::runtime_error with
/// "uncertified" for heuristic steps. Wait-free: returns the stored value.
double chain_gelfand_lower(const WitnessChain& chain, int k);

}  // namespace nwidth
