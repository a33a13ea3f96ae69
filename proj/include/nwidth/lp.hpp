#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

namespace nwidth {

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class Relation { LessEq, GreaterEq, Equal };
enum class Sense { Minimize, Maximize };

/// Dense linear program
///   sense  objective·x
///   s.t.   constraint_matrix.row(i)·x  (relation i)  offsets[i]
///          lower ≤ x ≤ upper   (±infinity allowed)
struct LpProblem {
  Sense sense = Sense::Maximize;
  Eigen::VectorXd objective;
  Eigen::MatrixXd constraint_matrix;
  Eigen::VectorXd offsets;
  std::vector<Relation> relations;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static constexpr double kInf = std::numeric_limits<double>::infinity();

  /// Problem with n free variables and no rows yet.
  static LpProblem free_vars(int n, Sense sense = Sense::Maximize);
  /// Problem with n variables bounded below by zero.
  static LpProblem nonneg_vars(int n, Sense sense = Sense::Maximize);

  void add_row(const Eigen::VectorXd& coeffs, Relation rel, double rhs);
  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(offsets.size()); }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Eigen::VectorXd x;
};

/// Two-phase dense simplex with Bland's anti-cycling rule and a 1e-9 pivot
/// tolerance. Feasible bounded problems are solved to optimality; infeasible
/// and unbounded problems are reported distinctly.
LpSolution lp_solve(const LpProblem& problem);

}  // namespace nwidth
