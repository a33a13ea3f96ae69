#include "nwidth/body.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nwidth/lp.hpp"

namespace nwidth {

namespace {

constexpr long long kVertexCap = 1 << 14;

Eigen::VectorXd sign_pattern(int mask, int d, double scale) {
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = ((mask >> i) & 1) ? scale : -scale;
  return v;
}

}  // namespace

ConvexBody ConvexBody::lp_ball(Norm norm, double radius, int dim) {
  if (!(radius > 0.0)) throw std::invalid_argument("lp_ball: radius must be positive");
  if (dim < 1) throw std::invalid_argument("lp_ball: dimension must be >= 1");
  return ConvexBody(LpBallBody{norm, radius, dim});
}

ConvexBody ConvexBody::vpolytope(Eigen::MatrixXd vertices) {
  if (vertices.cols() < 1) throw std::invalid_argument("vpolytope: vertex list empty");
  if (!vertices.allFinite()) throw std::invalid_argument("vpolytope: non-finite vertex");
  return ConvexBody(VPolytopeBody{std::move(vertices)});
}

ConvexBody ConvexBody::hpolytope(Eigen::MatrixXd a, Eigen::VectorXd b) {
  if (a.rows() != b.size()) throw std::invalid_argument("hpolytope: row count mismatch");
  const int d = static_cast<int>(a.cols());
  // nonempty + bounded via LPs at construction
  for (int dir = 0; dir < 2 * d; ++dir) {
    LpProblem lp = LpProblem::free_vars(d, Sense::Maximize);
    lp.objective[dir / 2] = dir % 2 == 0 ? 1.0 : -1.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      lp.add_row(a.row(i).transpose(), Relation::LessEq, b[i]);
    const LpSolution sol = lp_solve(lp);
    if (sol.status == LpStatus::Infeasible)
      throw std::invalid_argument("hpolytope: empty feasible set");
    if (sol.status == LpStatus::Unbounded)
      throw std::invalid_argument("hpolytope: unbounded feasible set");
  }
  return ConvexBody(HPolytopeBody{std::move(a), std::move(b)});
}

ConvexBody ConvexBody::simplex(int dim) {
  if (dim < 1) throw std::invalid_argument("simplex: dimension must be >= 1");
  return ConvexBody(SimplexBody{dim});
}

ConvexBody ConvexBody::shifted(ConvexBody inner, Eigen::VectorXd offset) {
  if (offset.size() != inner.ambient_dim())
    throw std::invalid_argument("shifted: offset dimension mismatch");
  return ConvexBody(ShiftedBody{std::make_shared<const ConvexBody>(std::move(inner)),
                                std::move(offset)});
}

int ConvexBody::ambient_dim() const {
  return std::visit(
      [](const auto& b) -> int {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, LpBallBody>) return b.dim;
        else if constexpr (std::is_same_v<T, VPolytopeBody>) return static_cast<int>(b.vertices.rows());
        else if constexpr (std::is_same_v<T, HPolytopeBody>) return static_cast<int>(b.a.cols());
        else if constexpr (std::is_same_v<T, SimplexBody>) return b.dim;
        else return static_cast<int>(b.offset.size());
      },
      v_);
}

std::optional<ConvexBody::Ball> ConvexBody::euclidean_ball() const {
  if (const auto* ball = std::get_if<LpBallBody>(&v_)) {
    if (ball->norm == Norm::L2)
      return Ball{Eigen::VectorXd::Zero(ball->dim), ball->radius};
    return std::nullopt;
  }
  if (const auto* sh = std::get_if<ShiftedBody>(&v_)) {
    if (auto inner = sh->inner->euclidean_ball())
      return Ball{inner->center + sh->offset, inner->radius};
  }
  return std::nullopt;
}

Eigen::VectorXd ConvexBody::interior_point() const {
  if (const auto* sh = std::get_if<ShiftedBody>(&v_))
    return sh->inner->interior_point() + sh->offset;
  if (std::holds_alternative<LpBallBody>(v_))
    return Eigen::VectorXd::Zero(ambient_dim());
  if (const auto* sx = std::get_if<SimplexBody>(&v_))
    return Eigen::VectorXd::Constant(sx->dim, 1.0 / (2.0 * sx->dim));
  const auto verts = vform(*this);
  if (!verts || verts->cols() == 0)
    throw std::runtime_error("interior_point: vertex enumeration failed");
  return verts->rowwise().mean();
}

bool ConvexBody::is_symmetric(double tol) const {
  if (std::holds_alternative<LpBallBody>(v_)) return true;
  if (std::holds_alternative<SimplexBody>(v_)) return false;
  if (const auto* sh = std::get_if<ShiftedBody>(&v_)) {
    if (sh->offset.lpNorm<Eigen::Infinity>() <= tol) return sh->inner->is_symmetric(tol);
  }
  const auto verts = vform(*this);
  if (!verts) return false;
  for (Eigen::Index j = 0; j < verts->cols(); ++j) {
    bool found = false;
    for (Eigen::Index l = 0; l < verts->cols() && !found; ++l)
      if ((verts->col(j) + verts->col(l)).lpNorm<Eigen::Infinity>() <= tol) found = true;
    if (!found) return false;
  }
  return true;
}

bool membership(const ConvexBody& body, const Eigen::VectorXd& x, double tol) {
  if (x.size() != body.ambient_dim())
    throw std::invalid_argument("membership: dimension mismatch");
  return std::visit(
      [&](const auto& b) -> bool {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, LpBallBody>) {
          return norm_eval(x, b.norm) <= b.radius + tol;
        } else if constexpr (std::is_same_v<T, HPolytopeBody>) {
          for (Eigen::Index i = 0; i < b.a.rows(); ++i) {
            const double scale = std::max(1.0, b.a.row(i).template lpNorm<Eigen::Infinity>());
            if (b.a.row(i).dot(x) > b.b[i] + tol * scale) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, SimplexBody>) {
          return x.minCoeff() >= -tol && x.sum() <= 1.0 + tol;
        } else if constexpr (std::is_same_v<T, ShiftedBody>) {
          return membership(*b.inner, x - b.offset, tol);
        } else {  // VPolytopeBody: minimize the L∞ distance to the hull
          const int n = static_cast<int>(b.vertices.cols());
          LpProblem lp = LpProblem::nonneg_vars(n + 1, Sense::Minimize);
          lp.lower[n] = -LpProblem::kInf;
          lp.objective[n] = 1.0;
          Eigen::VectorXd row(n + 1);
          for (Eigen::Index coord = 0; coord < x.size(); ++coord) {
            row.head(n) = b.vertices.row(coord).transpose();
            row[n] = -1.0;
            lp.add_row(row, Relation::LessEq, x[coord]);
            row[n] = 1.0;
            lp.add_row(row, Relation::GreaterEq, x[coord]);
          }
          row.head(n).setOnes();
          row[n] = 0.0;
          lp.add_row(row, Relation::Equal, 1.0);
          const LpSolution sol = lp_solve(lp);
          return sol.status == LpStatus::Optimal && sol.value <= tol;
        }
      },
      body.variant());
}

double support_value(const ConvexBody& body, const Eigen::VectorXd& f) {
  if (f.size() != body.ambient_dim())
    throw std::invalid_argument("support_value: dimension mismatch");
  return std::visit(
      [&](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, LpBallBody>) {
          return b.radius * norm_eval(f, dual(b.norm));
        } else if constexpr (std::is_same_v<T, VPolytopeBody>) {
          return (f.transpose() * b.vertices).maxCoeff();
        } else if constexpr (std::is_same_v<T, SimplexBody>) {
          return std::max(0.0, f.maxCoeff());
        } else if constexpr (std::is_same_v<T, ShiftedBody>) {
          return support_value(*b.inner, f) + f.dot(b.offset);
        } else {  // HPolytopeBody
          LpProblem lp = LpProblem::free_vars(static_cast<int>(b.a.cols()), Sense::Maximize);
          lp.objective = f;
          for (Eigen::Index i = 0; i < b.a.rows(); ++i)
            lp.add_row(b.a.row(i).transpose(), Relation::LessEq, b.b[i]);
          const LpSolution sol = lp_solve(lp);
          if (sol.status != LpStatus::Optimal)
            throw std::runtime_error("support_value: LP failed on H-polytope");
          return sol.value;
        }
      },
      body.variant());
}

double support_value(const ConvexBody& body, const Functional& f) {
  return support_value(body, f.coefficients);
}

std::optional<Eigen::MatrixXd> vform(const ConvexBody& body) {
  return std::visit(
      [&](const auto& b) -> std::optional<Eigen::MatrixXd> {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, LpBallBody>) {
          if (b.norm == Norm::L1) {
            Eigen::MatrixXd v = Eigen::MatrixXd::Zero(b.dim, 2 * b.dim);
            for (int i = 0; i < b.dim; ++i) {
              v(i, 2 * i) = b.radius;
              v(i, 2 * i + 1) = -b.radius;
            }
            return v;
          }
          if (b.norm == Norm::Linf) {
            if (b.dim > 14) return std::nullopt;
            const int count = 1 << b.dim;
            Eigen::MatrixXd v(b.dim, count);
            for (int mask = 0; mask < count; ++mask)
              v.col(mask) = sign_pattern(mask, b.dim, b.radius);
            return v;
          }
          return std::nullopt;  // Euclidean ball
        } else if constexpr (std::is_same_v<T, VPolytopeBody>) {
          return prune_extreme(b.vertices);
        } else if constexpr (std::is_same_v<T, SimplexBody>) {
          Eigen::MatrixXd v = Eigen::MatrixXd::Zero(b.dim, b.dim + 1);
          v.rightCols(b.dim) = Eigen::MatrixXd::Identity(b.dim, b.dim);
          return v;
        } else if constexpr (std::is_same_v<T, ShiftedBody>) {
          auto inner = vform(*b.inner);
          if (!inner) return std::nullopt;
          return inner->colwise() + b.offset;
        } else {  // HPolytopeBody
          auto verts = hpoly_vertices(b.a, b.b, kVertexCap);
          if (!verts || verts->cols() == 0) return std::nullopt;
          return prune_extreme(*verts);
        }
      },
      body.variant());
}

std::optional<FacetList> hform(const ConvexBody& body) {
  return std::visit(
      [&](const auto& b) -> std::optional<FacetList> {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, LpBallBody>) {
          if (b.norm == Norm::Linf) {
            FacetList f;
            f.a.resize(2 * b.dim, b.dim);
            f.b = Eigen::VectorXd::Constant(2 * b.dim, b.radius);
            f.a.topRows(b.dim) = Eigen::MatrixXd::Identity(b.dim, b.dim);
            f.a.bottomRows(b.dim) = -Eigen::MatrixXd::Identity(b.dim, b.dim);
            return f;
          }
          if (b.norm == Norm::L1) {
            if (b.dim > 14) return std::nullopt;
            const int count = 1 << b.dim;
            FacetList f;
            f.a.resize(count, b.dim);
            f.b = Eigen::VectorXd::Constant(count, b.radius);
            for (int mask = 0; mask < count; ++mask)
              f.a.row(mask) = sign_pattern(mask, b.dim, 1.0).transpose();
            return f;
          }
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, HPolytopeBody>) {
          return FacetList{b.a, b.b};
        } else if constexpr (std::is_same_v<T, SimplexBody>) {
          FacetList f;
          f.a.resize(b.dim + 1, b.dim);
          f.a.topRows(b.dim) = -Eigen::MatrixXd::Identity(b.dim, b.dim);
          f.a.row(b.dim).setOnes();
          f.b = Eigen::VectorXd::Zero(b.dim + 1);
          f.b[b.dim] = 1.0;
          return f;
        } else if constexpr (std::is_same_v<T, ShiftedBody>) {
          auto inner = hform(*b.inner);
          if (!inner) return std::nullopt;
          inner->b += inner->a * b.offset;
          return inner;
        } else {  // VPolytopeBody
          const auto verts = vform(body);
          if (!verts) return std::nullopt;
          return facets_from_vertices(*verts);
        }
      },
      body.variant());
}

std::optional<HalfDifference> half_difference_vform(const ConvexBody& body) {
  if (const auto* sh = std::get_if<ShiftedBody>(&body.variant()))
    return half_difference_vform(*sh->inner);  // shifts cancel
  if (const auto* ball = std::get_if<LpBallBody>(&body.variant())) {
    // symmetric: (F−F)/2 = F; realize p as (p − (−p))/2
    auto verts = vform(body);
    if (!verts) return std::nullopt;
    (void)ball;
    return HalfDifference{*verts, *verts, -(*verts)};
  }
  const auto verts = vform(body);
  if (!verts) return std::nullopt;
  const Eigen::Index n = verts->cols();
  if (n * n > kVertexCap) return std::nullopt;
  Eigen::MatrixXd cand(verts->rows(), n * n);
  Eigen::MatrixXd fpart(verts->rows(), n * n);
  Eigen::MatrixXd gpart(verts->rows(), n * n);
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      fpart.col(c) = verts->col(i);
      gpart.col(c) = verts->col(j);
      cand.col(c) = 0.5 * (verts->col(i) - verts->col(j));
      ++c;
    }
  }
  const Eigen::MatrixXd pruned = prune_extreme(cand);
  HalfDifference hd;
  hd.vertices = pruned;
  hd.fpart.resize(verts->rows(), pruned.cols());
  hd.gpart.resize(verts->rows(), pruned.cols());
  for (Eigen::Index k = 0; k < pruned.cols(); ++k) {
    for (Eigen::Index l = 0; l < cand.cols(); ++l) {
      if ((cand.col(l) - pruned.col(k)).lpNorm<Eigen::Infinity>() <= 1e-9) {
        hd.fpart.col(k) = fpart.col(l);
        hd.gpart.col(k) = gpart.col(l);
        break;
      }
    }
  }
  return hd;
}

ConvexBody half_difference_body(const ConvexBody& body) {
  if (const auto* ball = std::get_if<LpBallBody>(&body.variant()))
    return ConvexBody::lp_ball(ball->norm, ball->radius, ball->dim);
  if (const auto* sh = std::get_if<ShiftedBody>(&body.variant()))
    return half_difference_body(*sh->inner);
  const auto hd = half_difference_vform(body);
  if (!hd) throw std::invalid_argument("half_difference_body: unsupported variant combination");
  return ConvexBody::vpolytope(hd->vertices);
}

}  // namespace nwidth
