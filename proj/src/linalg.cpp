#include "nwidth/linalg.hpp"

#include <stdexcept>

namespace nwidth {

Svd svd(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) throw std::invalid_argument("svd: non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

double singular_value(const Eigen::MatrixXd& m, int k) {
  if (k < 1) throw std::invalid_argument("singular_value: k is 1-based");
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  return k <= s.size() ? s[k - 1] : 0.0;
}

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& rows, int ambient) {
  if (rows.rows() == 0) return Eigen::MatrixXd::Identity(ambient, ambient);
  if (rows.cols() != ambient)
    throw std::invalid_argument("kernel_basis: ambient dimension mismatch");
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(rows, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = dec.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, s.size() > 0 ? s[0] : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > cutoff) ++rank;
  return dec.matrixV().rightCols(ambient - rank);
}

Subspace nullspace(const std::vector<Functional>& rows, int ambient) {
  if (ambient < 1) throw std::invalid_argument("nullspace: ambient dim >= 1 required");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), ambient);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].coefficients.size() != ambient)
      throw std::invalid_argument("nullspace: functional dimension mismatch");
    m.row(static_cast<Eigen::Index>(i)) = rows[i].coefficients.transpose();
  }
  return Subspace{kernel_basis(m, ambient), ambient};
}

Eigen::MatrixXd orth_complement(const Eigen::MatrixXd& basis, int ambient) {
  if (basis.cols() == 0) return Eigen::MatrixXd::Identity(ambient, ambient);
  return kernel_basis(basis.transpose(), ambient);
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return m;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  const int rank = static_cast<int>(qr.rank());
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), rank);
  return q;
}

Eigen::MatrixXd random_frame(int dim, int k, Rng& rng) {
  Eigen::MatrixXd g(dim, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(dim, k);
}

}  // namespace nwidth
