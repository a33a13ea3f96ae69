#include "nwidth/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace nwidth {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr int kMaxIterations = 200000;

// Simplex tableau over A·u = b, u ≥ 0, b ≥ 0, with explicit basis bookkeeping.
struct Tableau {
  Eigen::MatrixXd a;       // m × n
  Eigen::VectorXd b;       // m, kept nonnegative
  std::vector<int> basis;  // m basic column indices

  int rows() const { return static_cast<int>(b.size()); }
  int cols() const { return static_cast<int>(a.cols()); }

  void pivot(int row, int col) {
    const double piv = a(row, col);
    a.row(row) /= piv;
    b[row] /= piv;
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const double factor = a(i, col);
      if (factor == 0.0) continue;
      a.row(i) -= factor * a.row(row);
      b[i] -= factor * b[row];
      if (b[i] < 0.0 && b[i] > -kPivotTol) b[i] = 0.0;
    }
    basis[row] = col;
  }

  // Minimizes cost·u with Bland's rule. allowed_cols limits entering columns
  // (used to keep artificials out in phase 2). Returns false on unbounded.
  bool minimize(const Eigen::VectorXd& cost, int allowed_cols) {
    for (int iter = 0; iter < kMaxIterations; ++iter) {
      // reduced costs from the basis: r = c − cBᵀ·A (computed fresh for
      // numerical hygiene; tableaus here are small)
      Eigen::VectorXd multipliers(rows());
      for (int i = 0; i < rows(); ++i) multipliers[i] = cost[basis[i]];
      Eigen::VectorXd reduced = cost.head(allowed_cols) -
                                a.leftCols(allowed_cols).transpose() * multipliers;

      int entering = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (reduced[j] < -kPivotTol) {
          entering = j;  // Bland: lowest index
          break;
        }
      }
      if (entering < 0) return true;  // optimal

      int leaving = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < rows(); ++i) {
        if (a(i, entering) > kPivotTol) {
          const double ratio = b[i] / a(i, entering);
          if (leaving < 0 || ratio < best_ratio - kPivotTol ||
              (std::abs(ratio - best_ratio) <= kPivotTol &&
               basis[i] < basis[leaving])) {
            leaving = i;
            best_ratio = ratio;
          }
        }
      }
      if (leaving < 0) return false;  // unbounded direction
      pivot(leaving, entering);
    }
    throw std::runtime_error("lp_solve: simplex iteration limit exceeded");
  }
};

}  // namespace

LpProblem LpProblem::free_vars(int n, Sense sense) {
  LpProblem p;
  p.sense = sense;
  p.objective = Eigen::VectorXd::Zero(n);
  p.constraint_matrix.resize(0, n);
  p.offsets.resize(0);
  p.lower = Eigen::VectorXd::Constant(n, -kInf);
  p.upper = Eigen::VectorXd::Constant(n, kInf);
  return p;
}

LpProblem LpProblem::nonneg_vars(int n, Sense sense) {
  LpProblem p = free_vars(n, sense);
  p.lower.setZero();
  return p;
}

void LpProblem::add_row(const Eigen::VectorXd& coeffs, Relation rel, double rhs) {
  if (coeffs.size() != objective.size())
    throw std::invalid_argument("LpProblem::add_row: dimension mismatch");
  constraint_matrix.conservativeResize(constraint_matrix.rows() + 1, Eigen::NoChange);
  constraint_matrix.row(constraint_matrix.rows() - 1) = coeffs.transpose();
  offsets.conservativeResize(offsets.size() + 1);
  offsets[offsets.size() - 1] = rhs;
  relations.push_back(rel);
}

LpSolution lp_solve(const LpProblem& problem) {
  const int n0 = problem.num_vars();
  const int m0 = problem.num_rows();
  if (problem.constraint_matrix.cols() != n0 ||
      static_cast<int>(problem.relations.size()) != m0)
    throw std::invalid_argument("lp_solve: inconsistent problem dimensions");

  // Variable substitutions mapping original x to nonnegative u:
  //   lower finite:        x = lo + u           (extra row if upper finite)
  //   only upper finite:   x = hi − u
  //   both infinite:       x = u⁺ − u⁻
  struct VarMap {
    int col_pos;       // column of u (or u⁺)
    int col_neg = -1;  // column of u⁻ for free variables
    double shift = 0.0;
    double sign = 1.0;
  };
  std::vector<VarMap> vmap(n0);
  int ncols = 0;
  int extra_rows = 0;
  for (int j = 0; j < n0; ++j) {
    const double lo = problem.lower[j];
    const double hi = problem.upper[j];
    if (std::isfinite(lo)) {
      vmap[j] = {ncols++, -1, lo, 1.0};
      if (std::isfinite(hi)) ++extra_rows;
    } else if (std::isfinite(hi)) {
      vmap[j] = {ncols++, -1, hi, -1.0};
    } else {
      vmap[j].col_pos = ncols++;
      vmap[j].col_neg = ncols++;
    }
  }

  // Rows: original rows (slack/surplus for inequalities) + bound rows.
  int nslack = 0;
  for (const Relation rel : problem.relations)
    if (rel != Relation::Equal) ++nslack;
  const int mrows = m0 + extra_rows;
  const int nreal = ncols + nslack + extra_rows;

  Tableau t;
  t.a = Eigen::MatrixXd::Zero(mrows, nreal + mrows);  // + artificials
  t.b = Eigen::VectorXd::Zero(mrows);

  int slack_col = ncols;
  for (int i = 0; i < m0; ++i) {
    double rhs = problem.offsets[i];
    for (int j = 0; j < n0; ++j) {
      const double c = problem.constraint_matrix(i, j);
      if (c == 0.0) continue;
      rhs -= c * vmap[j].shift;
      t.a(i, vmap[j].col_pos) += c * vmap[j].sign;
      if (vmap[j].col_neg >= 0) t.a(i, vmap[j].col_neg) -= c;
    }
    if (problem.relations[i] == Relation::LessEq)
      t.a(i, slack_col++) = 1.0;
    else if (problem.relations[i] == Relation::GreaterEq)
      t.a(i, slack_col++) = -1.0;
    t.b[i] = rhs;
  }
  int bound_row = m0;
  for (int j = 0; j < n0; ++j) {
    if (std::isfinite(problem.lower[j]) && std::isfinite(problem.upper[j])) {
      t.a(bound_row, vmap[j].col_pos) = 1.0;
      t.a(bound_row, slack_col++) = 1.0;
      t.b[bound_row] = problem.upper[j] - problem.lower[j];
      ++bound_row;
    }
  }
  for (int i = 0; i < mrows; ++i) {
    if (t.b[i] < 0.0) {
      t.a.row(i) = -t.a.row(i);
      t.b[i] = -t.b[i];
    }
    t.a(i, nreal + i) = 1.0;  // artificial
    t.basis.push_back(nreal + i);
  }

  // Phase 1: minimize the sum of artificials.
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(nreal + mrows);
  phase1.tail(mrows).setOnes();
  if (!t.minimize(phase1, nreal + mrows))
    throw std::runtime_error("lp_solve: phase 1 unbounded");
  double infeas = 0.0;
  for (int i = 0; i < mrows; ++i)
    if (t.basis[i] >= nreal) infeas += t.b[i];
  if (infeas > 1e-7) return {LpStatus::Infeasible, 0.0, {}};

  // Drive remaining zero-level artificials out of the basis; rows where no
  // real pivot exists are redundant and get cleared.
  for (int i = 0; i < t.rows(); ++i) {
    if (t.basis[i] < nreal) continue;
    int col = -1;
    for (int j = 0; j < nreal; ++j) {
      if (std::abs(t.a(i, j)) > 1e-7) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      t.pivot(i, col);
    } else {
      t.a.row(i).setZero();
      t.b[i] = 0.0;
      t.a(i, t.basis[i]) = 1.0;  // keep the artificial as a placeholder basis
    }
  }

  // Phase 2 on the real objective (converted to minimization).
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(nreal + mrows);
  const double sense = problem.sense == Sense::Maximize ? -1.0 : 1.0;
  for (int j = 0; j < n0; ++j) {
    const double c = sense * problem.objective[j];
    cost[vmap[j].col_pos] += c * vmap[j].sign;
    if (vmap[j].col_neg >= 0) cost[vmap[j].col_neg] -= c;
  }
  if (!t.minimize(cost, nreal)) return {LpStatus::Unbounded, 0.0, {}};

  Eigen::VectorXd u = Eigen::VectorXd::Zero(nreal + mrows);
  for (int i = 0; i < t.rows(); ++i) u[t.basis[i]] = t.b[i];
  Eigen::VectorXd x(n0);
  for (int j = 0; j < n0; ++j) {
    double v = vmap[j].shift + vmap[j].sign * u[vmap[j].col_pos];
    if (vmap[j].col_neg >= 0) v -= u[vmap[j].col_neg];
    x[j] = v;
  }
  return {LpStatus::Optimal, problem.objective.dot(x), x};
}

}  // namespace nwidth
