#include "nwidth/geometry.hpp"

#include <vector>

#include "nwidth/linalg.hpp"
#include "nwidth/lp.hpp"

namespace nwidth {

namespace {

constexpr double kGeomTol = 1e-9;

// Lexicographic subset iteration over {0, .., n−1} choose k.
bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool column_present(const std::vector<Eigen::VectorXd>& cols, const Eigen::VectorXd& v) {
  for (const auto& c : cols)
    if ((c - v).lpNorm<Eigen::Infinity>() <= 1e-9) return true;
  return false;
}

Eigen::MatrixXd to_matrix(const std::vector<Eigen::VectorXd>& cols, Eigen::Index dim) {
  Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j];
  return m;
}

}  // namespace

long long binomial_capped(int n, int k, long long cap) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

Eigen::MatrixXd prune_extreme(const Eigen::MatrixXd& points) {
  const Eigen::Index d = points.rows();
  std::vector<Eigen::VectorXd> unique;
  for (Eigen::Index j = 0; j < points.cols(); ++j)
    if (!column_present(unique, points.col(j))) unique.push_back(points.col(j));

  std::vector<Eigen::VectorXd> extreme;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    if (unique.size() == 1) {
      extreme.push_back(unique[i]);
      break;
    }
    // v_i is redundant iff it lies within L∞-distance tol of conv(others)
    const int nothers = static_cast<int>(unique.size()) - 1;
    LpProblem lp = LpProblem::nonneg_vars(nothers + 1, Sense::Minimize);
    lp.lower[nothers] = -LpProblem::kInf;  // t
    lp.objective[nothers] = 1.0;
    Eigen::VectorXd row(nothers + 1);
    for (Eigen::Index coord = 0; coord < d; ++coord) {
      int c = 0;
      for (std::size_t j = 0; j < unique.size(); ++j) {
        if (j == i) continue;
        row[c++] = unique[j][coord];
      }
      row[nothers] = -1.0;
      lp.add_row(row, Relation::LessEq, unique[i][coord]);
      row[nothers] = 1.0;
      lp.add_row(row, Relation::GreaterEq, unique[i][coord]);
    }
    row.setOnes();
    row[nothers] = 0.0;
    lp.add_row(row, Relation::Equal, 1.0);
    const LpSolution sol = lp_solve(lp);
    if (sol.status != LpStatus::Optimal || sol.value > kGeomTol)
      extreme.push_back(unique[i]);
  }
  return to_matrix(extreme, d);
}

std::optional<SectionVertices> polytope_section(const Eigen::MatrixXd& points,
                                                const Eigen::MatrixXd& rows,
                                                const Eigen::VectorXd& rhs,
                                                long long basis_cap) {
  const Eigen::Index n = points.cols();
  const Eigen::Index d = points.rows();
  // Barycentric feasible set {θ ≥ 0 : 1ᵀθ = 1, (rows·points)θ = rhs}; its
  // basic feasible solutions map onto the section's vertices.
  Eigen::MatrixXd eq(rows.rows() + 1, n);
  eq.row(0).setOnes();
  if (rows.rows() > 0) eq.bottomRows(rows.rows()) = rows * points;
  Eigen::VectorXd eqr(rows.rows() + 1);
  eqr[0] = 1.0;
  eqr.tail(rows.rows()) = rhs;

  // Row-reduce to an independent subsystem (Gaussian elimination with
  // partial pivoting on the augmented matrix).
  Eigen::MatrixXd aug(eq.rows(), n + 1);
  aug.leftCols(n) = eq;
  aug.col(n) = eqr;
  std::vector<int> pivot_rows;
  Eigen::Index row_cursor = 0;
  for (Eigen::Index col = 0; col < n && row_cursor < aug.rows(); ++col) {
    Eigen::Index best = row_cursor;
    for (Eigen::Index r = row_cursor + 1; r < aug.rows(); ++r)
      if (std::abs(aug(r, col)) > std::abs(aug(best, col))) best = r;
    if (std::abs(aug(best, col)) < 1e-11) continue;
    aug.row(best).swap(aug.row(row_cursor));
    for (Eigen::Index r = 0; r < aug.rows(); ++r) {
      if (r == row_cursor) continue;
      aug.row(r) -= (aug(r, col) / aug(row_cursor, col)) * aug.row(row_cursor);
    }
    ++row_cursor;
  }
  const Eigen::Index rank = row_cursor;
  for (Eigen::Index r = rank; r < aug.rows(); ++r)
    if (std::abs(aug(r, n)) > 1e-8) return SectionVertices{Eigen::MatrixXd(d, 0), Eigen::MatrixXd(n, 0)};
  const Eigen::MatrixXd red = aug.topLeftCorner(rank, n);
  const Eigen::VectorXd redr = aug.col(n).head(rank);

  if (binomial_capped(static_cast<int>(n), static_cast<int>(rank), basis_cap) > basis_cap)
    return std::nullopt;

  std::vector<Eigen::VectorXd> verts, thetas;
  std::vector<int> idx(static_cast<std::size_t>(rank));
  for (Eigen::Index i = 0; i < rank; ++i) idx[static_cast<std::size_t>(i)] = static_cast<int>(i);
  Eigen::MatrixXd basis(rank, rank);
  do {
    for (Eigen::Index c = 0; c < rank; ++c) basis.col(c) = red.col(idx[static_cast<std::size_t>(c)]);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd tb = lu.solve(redr);
    if ((basis * tb - redr).lpNorm<Eigen::Infinity>() > 1e-8) continue;
    if (tb.minCoeff() < -kGeomTol) continue;
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
    for (Eigen::Index c = 0; c < rank; ++c)
      theta[idx[static_cast<std::size_t>(c)]] = std::max(0.0, tb[c]);
    const Eigen::VectorXd x = points * theta;
    if (!column_present(verts, x)) {
      verts.push_back(x);
      thetas.push_back(theta);
    }
  } while (next_combination(idx, static_cast<int>(n)));

  return SectionVertices{to_matrix(verts, d), to_matrix(thetas, n)};
}

std::optional<Eigen::MatrixXd> hpoly_vertices(const Eigen::MatrixXd& a,
                                              const Eigen::VectorXd& b,
                                              const Eigen::MatrixXd& eq_rows,
                                              const Eigen::VectorXd& eq_rhs,
                                              long long basis_cap) {
  const int d = static_cast<int>(a.cols());
  Eigen::MatrixXd ai = a;
  Eigen::VectorXd bi = b;
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd frame = Eigen::MatrixXd::Identity(d, d);
  if (eq_rows.rows() > 0) {
    // Parameterize the affine slice x = x0 + N z and restrict the rows.
    const Eigen::VectorXd x0 =
        eq_rows.completeOrthogonalDecomposition().solve(eq_rhs);
    if ((eq_rows * x0 - eq_rhs).lpNorm<Eigen::Infinity>() > 1e-8)
      return Eigen::MatrixXd(d, 0);
    frame = kernel_basis(eq_rows, d);
    origin = x0;
    bi = b - a * x0;
    ai = a * frame;
  }
  const int dz = static_cast<int>(ai.cols());
  if (dz == 0) {
    // single point; verify feasibility
    if (bi.size() == 0 || bi.minCoeff() > -1e-9) {
      Eigen::MatrixXd one(d, 1);
      one.col(0) = origin;
      return one;
    }
    return Eigen::MatrixXd(d, 0);
  }
  const int m = static_cast<int>(ai.rows());
  if (binomial_capped(m, dz, basis_cap) > basis_cap) return std::nullopt;

  std::vector<Eigen::VectorXd> verts;
  std::vector<int> idx(static_cast<std::size_t>(dz));
  for (int i = 0; i < dz; ++i) idx[static_cast<std::size_t>(i)] = i;
  Eigen::MatrixXd sys(dz, dz);
  Eigen::VectorXd rhs(dz);
  if (m >= dz) {
    do {
      for (int r = 0; r < dz; ++r) {
        sys.row(r) = ai.row(idx[static_cast<std::size_t>(r)]);
        rhs[r] = bi[idx[static_cast<std::size_t>(r)]];
      }
      const Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
      if (!lu.isInvertible()) continue;
      const Eigen::VectorXd z = lu.solve(rhs);
      if ((sys * z - rhs).lpNorm<Eigen::Infinity>() > 1e-7) continue;
      bool feasible = true;
      for (int r = 0; r < m && feasible; ++r) {
        const double scale = std::max(1.0, ai.row(r).lpNorm<Eigen::Infinity>());
        if (ai.row(r).dot(z) > bi[r] + 1e-8 * scale) feasible = false;
      }
      if (!feasible) continue;
      const Eigen::VectorXd x = origin + frame * z;
      if (!column_present(verts, x)) verts.push_back(x);
    } while (next_combination(idx, m));
  }
  return to_matrix(verts, d);
}

std::optional<Eigen::MatrixXd> hpoly_vertices(const Eigen::MatrixXd& a,
                                              const Eigen::VectorXd& b,
                                              long long basis_cap) {
  return hpoly_vertices(a, b, Eigen::MatrixXd(0, a.cols()), Eigen::VectorXd(0),
                        basis_cap);
}

std::optional<FacetList> facets_from_vertices(const Eigen::MatrixXd& vertices,
                                              long long subset_cap) {
  const int d = static_cast<int>(vertices.rows());
  const int n = static_cast<int>(vertices.cols());
  if (n < d + 1) return std::nullopt;
  Eigen::MatrixXd centered = vertices.colwise() - vertices.rowwise().mean();
  if (Eigen::JacobiSVD<Eigen::MatrixXd>(centered).singularValues()[d - 1] < 1e-10)
    return std::nullopt;  // not full-dimensional
  if (binomial_capped(n, d, subset_cap) > subset_cap) return std::nullopt;

  std::vector<Eigen::VectorXd> normals;
  std::vector<double> offsets;
  auto already = [&](const Eigen::VectorXd& nv, double off) {
    for (std::size_t i = 0; i < normals.size(); ++i)
      if ((normals[i] - nv).lpNorm<Eigen::Infinity>() <= 1e-8 &&
          std::abs(offsets[i] - off) <= 1e-8)
        return true;
    return false;
  };

  std::vector<int> idx(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
  do {
    Eigen::MatrixXd diffs(d - 1, d);
    for (int r = 1; r < d; ++r)
      diffs.row(r - 1) =
          (vertices.col(idx[static_cast<std::size_t>(r)]) - vertices.col(idx[0])).transpose();
    const Eigen::MatrixXd ker = kernel_basis(diffs, d);
    if (ker.cols() != 1) continue;  // degenerate subset
    Eigen::VectorXd normal = ker.col(0).normalized();
    double off = normal.dot(vertices.col(idx[0]));
    int below = 0, above = 0;
    for (int j = 0; j < n; ++j) {
      const double s = normal.dot(vertices.col(j)) - off;
      if (s > 1e-9) ++above;
      if (s < -1e-9) ++below;
    }
    if (above > 0 && below > 0) continue;  // interior hyperplane
    if (above > 0) {
      normal = -normal;
      off = -off;
    }
    if (!already(normal, off)) {
      normals.push_back(normal);
      offsets.push_back(off);
    }
  } while (next_combination(idx, n));

  FacetList f;
  f.a.resize(static_cast<Eigen::Index>(normals.size()), d);
  f.b.resize(static_cast<Eigen::Index>(normals.size()));
  for (std::size_t i = 0; i < normals.size(); ++i) {
    f.a.row(static_cast<Eigen::Index>(i)) = normals[i].transpose();
    f.b[static_cast<Eigen::Index>(i)] = offsets[i];
  }
  return f;
}

}  // namespace nwidth
