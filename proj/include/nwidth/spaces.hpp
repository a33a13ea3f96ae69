#pragma once

#include <Eigen/Dense>
#include <string>

namespace nwidth {

/// Which sequence-space norm a vector or functional is measured in.
/// Only the three solver-friendly cases are supported.
enum class Norm { L1, L2, Linf };

Norm dual(Norm t);
std::string norm_name(Norm t);
Norm norm_from_name(const std::string& name);

/// ‖v‖ in the given norm.
double norm_eval(const Eigen::VectorXd& v, Norm t);

/// A continuous linear functional together with the norm its coefficients are
/// measured in (the dual of the space it acts on).
struct Functional {
  Eigen::VectorXd coefficients;
  Norm dual_norm = Norm::L2;

  double operator()(const Eigen::VectorXd& x) const { return coefficients.dot(x); }
  double norm() const { return norm_eval(coefficients, dual_norm); }
};

/// A functional λ with ‖λ‖_dual ≤ 1 and λ(y) = ‖y‖ exactly (closed form per
/// norm). Ties in the Linf case go to the smallest maximizing coordinate;
/// zero coordinates in the L1 case get sign +1. Throws on y = 0.
Functional norming_functional(const Eigen::VectorXd& y, Norm t);

/// Dense linear operator between finite-dimensional normed sequence spaces.
struct Operator {
  Eigen::MatrixXd matrix;  // rows = target dim, cols = source dim
  Norm source_norm = Norm::L2;
  Norm target_norm = Norm::L2;

  int source_dim() const { return static_cast<int>(matrix.cols()); }
  int target_dim() const { return static_cast<int>(matrix.rows()); }
};

/// Linear subspace given by an orthonormal basis (columns).
struct Subspace {
  Eigen::MatrixXd basis;  // ambient × dim, basisᵀ·basis = I within 1e-10
  int ambient = 0;

  int dim() const { return static_cast<int>(basis.cols()); }
};

}  // namespace nwidth
