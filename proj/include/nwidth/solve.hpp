#pragma once

#include <cstdint>
#include <optional>

#include "nwidth/instance.hpp"
#include "nwidth/linalg.hpp"

namespace nwidth {

/// Knobs for the randomized searches. Results are deterministic functions of
/// the seed; restarts may run concurrently without changing the outcome.
struct SearchConfig {
  int restarts = 64;
  int max_iters = 500;
  double tol = 1e-8;
  std::uint64_t seed = 42;
};

/// Maximum of ‖Sp‖ over p ∈ half_difference(F) ∩ span(sub), with a realizing
/// pair f, g ∈ F such that p = (f−g)/2. certified means the supremum was
/// evaluated exactly (polytope vertices or restricted-operator closed form);
/// otherwise the value is a best-of-restarts ascent and only a lower estimate.
struct SectionMax {
  double value = 0.0;
  Eigen::VectorXd p;
  Eigen::VectorXd f;
  Eigen::VectorXd g;
  bool certified = false;
};
SectionMax max_seminorm_on_section(const Instance& inst, const Subspace& sub,
                                   const SearchConfig& cfg);

/// Largest ball of the seminorm ‖S·‖ inside F along an affine slice.
struct BallFit {
  double radius = 0.0;
  Eigen::VectorXd center;
  bool certified = false;
};

/// center ∈ point + span(sub) with center + {v ∈ span : ‖Sv‖ ≤ radius} ⊆ F.
/// Throws std::invalid_argument when S is not injective on the subspace.
BallFit inscribed_ball(const Instance& inst, const Eigen::VectorXd& point,
                       const Subspace& sub, const SearchConfig& cfg);

/// Same containment but the center ranges over all of ℝ^d (one LP); the
/// subspace search uses this and certifies the winner through inscribed_ball.
BallFit inscribed_ball_free_center(const Instance& inst, const Subspace& sub,
                                   const SearchConfig& cfg);

/// Chebyshev center of S({x ∈ F : rows·x = y}) in the target norm.
/// Throws std::domain_error when the observations are inconsistent with F.
struct ChebResult {
  Eigen::VectorXd center;
  double radius = 0.0;
  bool certified = false;
};
ChebResult chebyshev_center(const Instance& inst, const Eigen::MatrixXd& rows,
                            const Eigen::VectorXd& y, Norm target);

/// Exact smallest enclosing Euclidean ball of a point set (columns).
ChebResult min_enclosing_ball(const Eigen::MatrixXd& points);

/// ‖B‖ as an operator from the `from` norm into ℓ2 (exact closed forms;
/// the Linf case enumerates sign patterns up to 20 columns, then falls back
/// to the √m·σ_max upper bound).
double op_norm_to_l2(const Eigen::MatrixXd& b, Norm from);

/// max / min of ‖Mz‖_t over the Euclidean unit sphere in the column space.
/// nullopt when the sign-pattern enumeration would exceed the desk-scale cap.
std::optional<double> restricted_norm_max(const Eigen::MatrixXd& m, Norm t);
std::optional<double> restricted_norm_min(const Eigen::MatrixXd& m, Norm t);

/// Vertices of {z : ‖Mz‖_t ≤ 1} for t ∈ {L1, Linf} (M injective).
std::optional<Eigen::MatrixXd> seminorm_ball_vertices(const Eigen::MatrixXd& m, Norm t);

}  // namespace nwidth
