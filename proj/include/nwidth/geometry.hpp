#pragma once

#include <Eigen/Dense>
#include <optional>

namespace nwidth {

/// Point-set combinatorics used by the convex-body and section machinery.
/// All routines are exact up to the stated tolerances and enumerate basic
/// solutions; caps keep the combinatorics at desk scale.

/// Extreme points of conv(points) (columns), duplicates removed.
Eigen::MatrixXd prune_extreme(const Eigen::MatrixXd& points);

/// Vertices of conv(points) ∩ {x : rows·x = rhs}. weights.col(j) holds
/// barycentric coordinates over the input points for vertex j.
struct SectionVertices {
  Eigen::MatrixXd x;        // d × M
  Eigen::MatrixXd weights;  // N × M
};
std::optional<SectionVertices> polytope_section(const Eigen::MatrixXd& points,
                                                const Eigen::MatrixXd& rows,
                                                const Eigen::VectorXd& rhs,
                                                long long basis_cap = 4000000);

/// Vertices of the bounded polyhedron {x : a·x ≤ b, eq_rows·x = eq_rhs}.
std::optional<Eigen::MatrixXd> hpoly_vertices(const Eigen::MatrixXd& a,
                                              const Eigen::VectorXd& b,
                                              const Eigen::MatrixXd& eq_rows,
                                              const Eigen::VectorXd& eq_rhs,
                                              long long basis_cap = 4000000);
std::optional<Eigen::MatrixXd> hpoly_vertices(const Eigen::MatrixXd& a,
                                              const Eigen::VectorXd& b,
                                              long long basis_cap = 4000000);

/// Facet description {x : a·x ≤ b} of the full-dimensional conv(vertices).
struct FacetList {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};
std::optional<FacetList> facets_from_vertices(const Eigen::MatrixXd& vertices,
                                              long long subset_cap = 4000000);

/// C(n, k) clamped to avoid overflow.
long long binomial_capped(int n, int k, long long cap);

}  // namespace nwidth
