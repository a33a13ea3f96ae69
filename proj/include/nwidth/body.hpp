#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <variant>

#include "nwidth/geometry.hpp"
#include "nwidth/spaces.hpp"

namespace nwidth {

class ConvexBody;

/// Ball {‖x‖_norm ≤ radius} centered at the origin.
struct LpBallBody {
  Norm norm = Norm::L2;
  double radius = 1.0;
  int dim = 1;
};

/// conv(columns of vertices).
struct VPolytopeBody {
  Eigen::MatrixXd vertices;
};

/// {x : a·x ≤ b}; checked nonempty and bounded at construction.
struct HPolytopeBody {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

/// {x ≥ 0, Σx ≤ 1}.
struct SimplexBody {
  int dim = 1;
};

struct ShiftedBody {
  std::shared_ptr<const ConvexBody> inner;
  Eigen::VectorXd offset;
};

/// Nonempty bounded convex subset of ℝ^d with exact membership, support and
/// symmetrization primitives. Immutable after construction.
class ConvexBody {
 public:
  using Variant = std::variant<LpBallBody, VPolytopeBody, HPolytopeBody, SimplexBody, ShiftedBody>;

  static ConvexBody lp_ball(Norm norm, double radius, int dim);
  static ConvexBody vpolytope(Eigen::MatrixXd vertices);
  static ConvexBody hpolytope(Eigen::MatrixXd a, Eigen::VectorXd b);
  static ConvexBody simplex(int dim);
  static ConvexBody shifted(ConvexBody inner, Eigen::VectorXd offset);

  const Variant& variant() const { return v_; }
  int ambient_dim() const;

  /// For (possibly shifted) Euclidean balls: center and radius.
  struct Ball {
    Eigen::VectorXd center;
    double radius;
  };
  std::optional<Ball> euclidean_ball() const;

  /// A point in the relative interior (vertex average or ball center).
  Eigen::VectorXd interior_point() const;

  bool is_symmetric(double tol = 1e-9) const;

 private:
  explicit ConvexBody(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// True iff x lies within distance tol of the body (exact inequality test for
/// balls/H-polytopes/simplices; an LP for V-polytopes).
bool membership(const ConvexBody& body, const Eigen::VectorXd& x, double tol = 1e-9);

/// sup_{x∈body} f·x, exact for all variants.
double support_value(const ConvexBody& body, const Eigen::VectorXd& f);
double support_value(const ConvexBody& body, const Functional& f);

/// {(f−g)/2 : f,g ∈ body}: the identical ball for symmetric balls, a
/// V-polytope for polytopal bodies. Throws on unsupported combinations.
ConvexBody half_difference_body(const ConvexBody& body);

/// Vertex description (extreme points as columns); nullopt for Euclidean
/// balls and for enumerations beyond the desk-scale caps.
std::optional<Eigen::MatrixXd> vform(const ConvexBody& body);

/// Facet description {a·x ≤ b}; nullopt for Euclidean balls / over-cap cases.
std::optional<FacetList> hform(const ConvexBody& body);

/// Vertices of the half-difference body together with realizing pairs:
/// vertices.col(j) = (fpart.col(j) − gpart.col(j))/2 with both parts in body.
struct HalfDifference {
  Eigen::MatrixXd vertices;
  Eigen::MatrixXd fpart;
  Eigen::MatrixXd gpart;
};
std::optional<HalfDifference> half_difference_vform(const ConvexBody& body);

}  // namespace nwidth
