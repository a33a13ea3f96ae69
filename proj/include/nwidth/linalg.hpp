#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nwidth/rng.hpp"
#include "nwidth/spaces.hpp"

namespace nwidth {

struct Svd {
  Eigen::MatrixXd u;       // left singular vectors (columns)
  Eigen::VectorXd sigma;   // singular values, descending
  Eigen::MatrixXd v;       // right singular vectors (columns)
};

/// Full SVD; u·diag(sigma)·vᵀ reconstructs the input within 1e-10·‖m‖.
Svd svd(const Eigen::MatrixXd& m);

/// k-th singular value (1-based); zero beyond the rank/profile.
double singular_value(const Eigen::MatrixXd& m, int k);

/// Orthonormal basis (columns) of the joint kernel of the given row vectors.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& rows, int ambient);

/// Joint kernel of a set of functionals as a Subspace.
Subspace nullspace(const std::vector<Functional>& rows, int ambient);

/// Orthonormal basis of the orthogonal complement of span(basis columns).
Eigen::MatrixXd orth_complement(const Eigen::MatrixXd& basis, int ambient);

/// Orthonormalizes the columns of m (rank-revealing; drops dependent columns).
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m);

/// dim × k orthonormal frame from the QR factorization of a Gaussian matrix.
Eigen::MatrixXd random_frame(int dim, int k, Rng& rng);

}  // namespace nwidth
