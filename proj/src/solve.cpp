#include "nwidth/solve.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nwidth/lp.hpp"
#include "nwidth/parallel.hpp"
#include "nwidth/rng.hpp"

namespace nwidth {

namespace {

constexpr int kSignCap = 20;

// best (value, index) with lowest-index ties, matching the sequential scan
std::size_t argmax_lowest(const Eigen::VectorXd& values) {
  std::size_t best = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = static_cast<std::size_t>(i);
  return best;
}

}  // namespace

double op_norm_to_l2(const Eigen::MatrixXd& b, Norm from) {
  switch (from) {
    case Norm::L2:
      return b.size() == 0 ? 0.0 : Eigen::JacobiSVD<Eigen::MatrixXd>(b).singularValues()[0];
    case Norm::L1: {
      double best = 0.0;
      for (Eigen::Index j = 0; j < b.cols(); ++j) best = std::max(best, b.col(j).norm());
      return best;
    }
    case Norm::Linf: {
      const int m = static_cast<int>(b.cols());
      if (m > kSignCap) {
        const double smax =
            b.size() == 0 ? 0.0 : Eigen::JacobiSVD<Eigen::MatrixXd>(b).singularValues()[0];
        return std::sqrt(static_cast<double>(m)) * smax;  // upper bound
      }
      double best = 0.0;
      Eigen::VectorXd s(m);
      for (long long mask = 0; mask < (1LL << (m - 1)); ++mask) {
        for (int i = 0; i < m; ++i) s[i] = ((mask >> i) & 1) ? 1.0 : -1.0;
        best = std::max(best, (b * s).norm());
      }
      return best;
    }
  }
  throw std::logic_error("unknown norm tag");
}

std::optional<double> restricted_norm_max(const Eigen::MatrixXd& m, Norm t) {
  switch (t) {
    case Norm::L2:
      return m.size() == 0 ? 0.0 : Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()[0];
    case Norm::Linf: {
      double best = 0.0;
      for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).norm());
      return best;
    }
    case Norm::L1: {
      const int rows = static_cast<int>(m.rows());
      if (rows > kSignCap) return std::nullopt;
      double best = 0.0;
      Eigen::VectorXd s(rows);
      for (long long mask = 0; mask < (1LL << (rows > 0 ? rows - 1 : 0)); ++mask) {
        for (int i = 0; i < rows; ++i) s[i] = ((mask >> i) & 1) ? 1.0 : -1.0;
        best = std::max(best, (m.transpose() * s).norm());
      }
      return best;
    }
  }
  throw std::logic_error("unknown norm tag");
}

std::optional<Eigen::MatrixXd> seminorm_ball_vertices(const Eigen::MatrixXd& m, Norm t) {
  const int rows = static_cast<int>(m.rows());
  if (t == Norm::Linf) {
    Eigen::MatrixXd a(2 * rows, m.cols());
    a.topRows(rows) = m;
    a.bottomRows(rows) = -m;
    return hpoly_vertices(a, Eigen::VectorXd::Ones(2 * rows));
  }
  if (t == Norm::L1) {
    if (rows > 14) return std::nullopt;
    const int count = 1 << rows;
    Eigen::MatrixXd a(count, m.cols());
    Eigen::VectorXd s(rows);
    for (int mask = 0; mask < count; ++mask) {
      for (int i = 0; i < rows; ++i) s[i] = ((mask >> i) & 1) ? 1.0 : -1.0;
      a.row(mask) = s.transpose() * m;
    }
    return hpoly_vertices(a, Eigen::VectorXd::Ones(count));
  }
  return std::nullopt;
}

std::optional<double> restricted_norm_min(const Eigen::MatrixXd& m, Norm t) {
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  const double smin = sv.size() < m.cols() ? 0.0 : sv[m.cols() - 1];
  if (t == Norm::L2) return smin;
  if (smin < 1e-12) return 0.0;  // not injective: the seminorm ball is unbounded
  const auto verts = seminorm_ball_vertices(m, t);
  if (!verts) return std::nullopt;
  double reach = 0.0;
  for (Eigen::Index j = 0; j < verts->cols(); ++j)
    reach = std::max(reach, verts->col(j).norm());
  return reach > 0.0 ? 1.0 / reach : 0.0;
}

SectionMax max_seminorm_on_section(const Instance& inst, const Subspace& sub,
                                   const SearchConfig& cfg) {
  const int d = inst.source_dim();
  if (sub.ambient != d)
    throw std::invalid_argument("max_seminorm_on_section: subspace ambient mismatch");
  const Eigen::MatrixXd& s = inst.op.matrix;
  const Norm target = inst.op.target_norm;

  SectionMax out;
  out.p = Eigen::VectorXd::Zero(d);
  out.f = inst.body.interior_point();
  out.g = out.f;
  out.certified = true;
  if (sub.dim() == 0) return out;

  const Eigen::MatrixXd constraint_rows = orth_complement(sub.basis, d).transpose();

  if (const auto hd = half_difference_vform(inst.body)) {
    const auto sec = polytope_section(
        hd->vertices, constraint_rows, Eigen::VectorXd::Zero(constraint_rows.rows()));
    if (sec && sec->x.cols() > 0) {
      Eigen::VectorXd values(sec->x.cols());
      for (Eigen::Index j = 0; j < sec->x.cols(); ++j)
        values[j] = norm_eval(s * sec->x.col(j), target);
      const auto best = argmax_lowest(values);
      out.value = values[static_cast<Eigen::Index>(best)];
      out.p = sec->x.col(static_cast<Eigen::Index>(best));
      const Eigen::VectorXd theta = sec->weights.col(static_cast<Eigen::Index>(best));
      out.f = hd->fpart * theta;
      out.g = hd->gpart * theta;
      return out;
    }
    if (sec && sec->x.cols() == 0) return out;  // degenerate section: only 0
  }

  if (const auto ball = inst.body.euclidean_ball()) {
    const Eigen::MatrixXd m = s * sub.basis;
    Eigen::VectorXd z;
    double value = 0.0;
    bool exact = true;
    switch (target) {
      case Norm::L2: {
        Eigen::JacobiSVD<Eigen::MatrixXd> dec(m, Eigen::ComputeFullV);
        value = dec.singularValues()[0];
        z = dec.matrixV().col(0);
        break;
      }
      case Norm::Linf: {
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < m.rows(); ++i)
          if (m.row(i).norm() > m.row(best).norm()) best = i;
        value = m.row(best).norm();
        z = value > 0 ? (m.row(best).transpose() / value).eval()
                      : Eigen::VectorXd::Zero(m.cols());
        break;
      }
      case Norm::L1: {
        const int rows = static_cast<int>(m.rows());
        if (rows > kSignCap) {
          exact = false;
          break;
        }
        Eigen::VectorXd sgn(rows), bestdir;
        for (long long mask = 0; mask < (1LL << (rows - 1)); ++mask) {
          for (int i = 0; i < rows; ++i) sgn[i] = ((mask >> i) & 1) ? 1.0 : -1.0;
          const Eigen::VectorXd dir = m.transpose() * sgn;
          if (dir.norm() > value) {
            value = dir.norm();
            bestdir = dir;
          }
        }
        z = value > 0 ? (bestdir / value).eval() : Eigen::VectorXd::Zero(m.cols());
        break;
      }
    }
    if (exact) {
      out.value = ball->radius * value;
      out.p = ball->radius * (sub.basis * z);
      out.f = ball->center + out.p;
      out.g = ball->center - out.p;
      return out;
    }
  }

  // Heuristic fallback: best-of-restarts ascent over unit directions in the
  // subspace, scaled to the boundary of the half-difference body.
  const ConvexBody diff = half_difference_body(inst.body);
  const auto* ball = std::get_if<LpBallBody>(&diff.variant());
  if (ball == nullptr)
    throw std::invalid_argument("max_seminorm_on_section: unsupported body for heuristic path");
  const int k = sub.dim();
  auto scaled_value = [&](const Eigen::VectorXd& z) -> std::pair<double, double> {
    const Eigen::VectorXd x = sub.basis * z;
    const double bn = norm_eval(x, ball->norm);
    if (bn < 1e-300) return {0.0, 0.0};
    const double t = ball->radius / bn;
    return {norm_eval(s * (t * x), target), t};
  };
  struct Cand {
    double value = -1.0;
    Eigen::VectorXd z;
    std::size_t index = static_cast<std::size_t>(-1);
  };
  auto run_restart = [&](std::size_t r) {
    Rng rng = Rng::for_stream(cfg.seed, r);
    Eigen::VectorXd z(k);
    for (int i = 0; i < k; ++i) z[i] = rng.normal();
    z.normalize();
    auto [val, t] = scaled_value(z);
    double step = 0.5;
    for (int iter = 0; iter < cfg.max_iters && step > 1e-10; ++iter) {
      Eigen::VectorXd dir(k);
      for (int i = 0; i < k; ++i) dir[i] = rng.normal();
      dir.normalize();
      const Eigen::VectorXd trial = (z + step * dir).normalized();
      auto [tv, tt] = scaled_value(trial);
      if (tv > val) {
        z = trial;
        val = tv;
      } else {
        step *= 0.95;
      }
    }
    return Cand{val, z, r};
  };
  Cand best = par::chunked_reduce(
      static_cast<std::size_t>(std::max(1, cfg.restarts)), 1, Cand{},
      [&](std::size_t chunk, std::size_t begin, std::size_t) { (void)chunk; return run_restart(begin); },
      [](Cand a, Cand b) {
        if (b.value > a.value || (b.value == a.value && b.index < a.index)) return b;
        return a;
      });
  if (best.value > 0.0) {
    auto [val, t] = scaled_value(best.z);
    out.value = val;
    out.p = t * (sub.basis * best.z);
    out.f = out.p;  // half-difference of balls is symmetric about 0
    out.g = -out.p;
    if (const auto fb = inst.body.euclidean_ball(); fb) {
      out.f = fb->center + out.p;
      out.g = fb->center - out.p;
    } else if (const auto* fball = std::get_if<LpBallBody>(&inst.body.variant()); fball == nullptr) {
      // shifted Lp ball: re-anchor the pair at the shift
      if (const auto* sh = std::get_if<ShiftedBody>(&inst.body.variant())) {
        out.f = sh->offset + out.p;
        out.g = sh->offset - out.p;
      }
    }
  }
  out.certified = false;
  return out;
}

namespace {

// Support values h_i = sup{a_iᵀKz : ‖(SK)z‖_t ≤ 1} for every facet row.
std::optional<Eigen::VectorXd> facet_support_of_unit_ball(const Eigen::MatrixXd& facets,
                                                          const Eigen::MatrixXd& k_basis,
                                                          const Eigen::MatrixXd& m, Norm target) {
  const Eigen::Index rows = facets.rows();
  Eigen::VectorXd h(rows);
  if (target == Norm::L2) {
    const Eigen::MatrixXd gram = m.transpose() * m;
    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) return std::nullopt;
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Eigen::VectorXd c = k_basis.transpose() * facets.row(i).transpose();
      h[i] = (m * llt.solve(c)).norm();
    }
    return h;
  }
  const auto verts = seminorm_ball_vertices(m, target);
  if (!verts || verts->cols() == 0) return std::nullopt;
  const Eigen::MatrixXd lifted = k_basis * (*verts);
  for (Eigen::Index i = 0; i < rows; ++i)
    h[i] = (facets.row(i) * lifted).maxCoeff();
  return h;
}

BallFit inscribed_ball_impl(const Instance& inst, const Eigen::VectorXd* point,
                            const Subspace& sub) {
  const int d = inst.source_dim();
  const Eigen::MatrixXd m = inst.op.matrix * sub.basis;
  const auto tau = restricted_norm_min(m, inst.op.target_norm);
  if (!tau || *tau <= 1e-10)
    throw std::invalid_argument("inscribed_ball: S is not injective on the subspace");

  if (const auto hf = hform(inst.body)) {
    const auto h = facet_support_of_unit_ball(hf->a, sub.basis, m, inst.op.target_norm);
    if (h) {
      const int k = sub.dim();
      const int nvars = point != nullptr ? k + 1 : d + 1;
      LpProblem lp = LpProblem::free_vars(nvars, Sense::Maximize);
      lp.lower[nvars - 1] = 0.0;  // radius
      lp.objective[nvars - 1] = 1.0;
      for (Eigen::Index i = 0; i < hf->a.rows(); ++i) {
        Eigen::VectorXd row(nvars);
        if (point != nullptr) {
          row.head(k) = (hf->a.row(i) * sub.basis).transpose();
          row[nvars - 1] = (*h)[i];
          lp.add_row(row, Relation::LessEq, hf->b[i] - hf->a.row(i).dot(*point));
        } else {
          row.head(d) = hf->a.row(i).transpose();
          row[nvars - 1] = (*h)[i];
          lp.add_row(row, Relation::LessEq, hf->b[i]);
        }
      }
      const LpSolution sol = lp_solve(lp);
      if (sol.status != LpStatus::Optimal)
        return {0.0, point != nullptr ? *point : inst.body.interior_point(), false};
      BallFit fit;
      fit.radius = std::max(0.0, sol.x[nvars - 1]);
      fit.center = point != nullptr ? (*point + sub.basis * sol.x.head(k)).eval()
                                    : sol.x.head(d).eval();
      fit.certified = true;
      return fit;
    }
  }

  if (const auto ball = inst.body.euclidean_ball()) {
    BallFit fit;
    if (point != nullptr) {
      const Eigen::VectorXd proj =
          *point + sub.basis * (sub.basis.transpose() * (ball->center - *point));
      const double slack = ball->radius - (proj - ball->center).norm();
      fit.center = proj;
      fit.radius = std::max(0.0, slack) * *tau;
    } else {
      fit.center = ball->center;
      fit.radius = ball->radius * *tau;
    }
    fit.certified = true;
    return fit;
  }
  throw std::invalid_argument("inscribed_ball: unsupported body variant");
}

}  // namespace

BallFit inscribed_ball(const Instance& inst, const Eigen::VectorXd& point,
                       const Subspace& sub, const SearchConfig&) {
  if (point.size() != inst.source_dim())
    throw std::invalid_argument("inscribed_ball: point dimension mismatch");
  return inscribed_ball_impl(inst, &point, sub);
}

BallFit inscribed_ball_free_center(const Instance& inst, const Subspace& sub,
                                   const SearchConfig&) {
  return inscribed_ball_impl(inst, nullptr, sub);
}

ChebResult min_enclosing_ball(const Eigen::MatrixXd& points) {
  const Eigen::Index d = points.rows();
  const Eigen::Index n = points.cols();
  ChebResult res;
  res.center = Eigen::VectorXd::Zero(d);
  res.certified = true;
  if (n == 0) return res;

  struct Ball {
    Eigen::VectorXd c;
    double r2 = -1.0;
    bool contains(const Eigen::VectorXd& p) const {
      return r2 >= 0 && (p - c).squaredNorm() <= r2 * (1 + 1e-12) + 1e-14;
    }
  };
  auto from_support = [&](const std::vector<Eigen::VectorXd>& sup) -> Ball {
    if (sup.empty()) return {Eigen::VectorXd::Zero(d), -1.0};
    if (sup.size() == 1) return {sup[0], 0.0};
    const Eigen::Index k = static_cast<Eigen::Index>(sup.size()) - 1;
    Eigen::MatrixXd diffs(k, d);
    Eigen::VectorXd rhs(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      diffs.row(i) = (sup[static_cast<std::size_t>(i) + 1] - sup[0]).transpose();
      rhs[i] = 0.5 * diffs.row(i).squaredNorm();
    }
    const Eigen::VectorXd beta =
        (diffs * diffs.transpose()).completeOrthogonalDecomposition().solve(rhs);
    const Eigen::VectorXd c = sup[0] + diffs.transpose() * beta;
    return {c, (c - sup[0]).squaredNorm()};
  };

  // Welzl with a deterministic shuffle
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  Rng rng(0x5eedb411);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);

  std::vector<Eigen::VectorXd> support;
  std::function<Ball(Eigen::Index)> welzl = [&](Eigen::Index count) -> Ball {
    if (count == 0 || static_cast<Eigen::Index>(support.size()) == d + 1)
      return from_support(support);
    Ball b = welzl(count - 1);
    const Eigen::VectorXd& p = points.col(order[static_cast<std::size_t>(count - 1)]);
    if (b.contains(p)) return b;
    support.push_back(p);
    b = welzl(count - 1);
    support.pop_back();
    return b;
  };
  const Ball b = welzl(n);
  res.center = b.c;
  res.radius = b.r2 > 0 ? std::sqrt(b.r2) : 0.0;
  return res;
}

ChebResult chebyshev_center(const Instance& inst, const Eigen::MatrixXd& rows,
                            const Eigen::VectorXd& y, Norm target) {
  const int d = inst.source_dim();
  if (rows.rows() != y.size() || (rows.rows() > 0 && rows.cols() != d))
    throw std::invalid_argument("chebyshev_center: observation dimensions mismatch");
  const Eigen::MatrixXd& s = inst.op.matrix;
  const int m = inst.target_dim();

  if (const auto vf = vform(inst.body)) {
    const auto sec = polytope_section(*vf, rows, y);
    if (sec) {
      if (sec->x.cols() == 0)
        throw std::domain_error("chebyshev_center: inconsistent observations");
      Eigen::MatrixXd images = s * sec->x;
      ChebResult res;
      res.certified = true;
      switch (target) {
        case Norm::Linf: {
          const Eigen::VectorXd lo = images.rowwise().minCoeff();
          const Eigen::VectorXd hi = images.rowwise().maxCoeff();
          res.center = 0.5 * (lo + hi);
          res.radius = 0.5 * (hi - lo).maxCoeff();
          return res;
        }
        case Norm::L2:
          return min_enclosing_ball(images);
        case Norm::L1: {
          const int nv = static_cast<int>(images.cols());
          // vars: z (m), t, slack s_ji (nv × m)
          const int nvars = m + 1 + nv * m;
          LpProblem lp = LpProblem::free_vars(nvars, Sense::Minimize);
          lp.objective[m] = 1.0;
          for (int i = m + 1; i < nvars; ++i) lp.lower[i] = 0.0;
          for (int j = 0; j < nv; ++j) {
            Eigen::VectorXd sumrow = Eigen::VectorXd::Zero(nvars);
            for (int i = 0; i < m; ++i) {
              Eigen::VectorXd row = Eigen::VectorXd::Zero(nvars);
              const int sj = m + 1 + j * m + i;
              row[i] = -1.0;
              row[sj] = -1.0;
              lp.add_row(row, Relation::LessEq, -images(i, j));  // q − z ≤ s
              row[i] = 1.0;
              lp.add_row(row, Relation::LessEq, images(i, j));  // z − q ≤ s
              sumrow[sj] = 1.0;
            }
            sumrow[m] = -1.0;
            lp.add_row(sumrow, Relation::LessEq, 0.0);  // Σ_i s_ji ≤ t
          }
          const LpSolution sol = lp_solve(lp);
          if (sol.status != LpStatus::Optimal)
            throw std::runtime_error("chebyshev_center: L1 minimax LP failed");
          res.center = sol.x.head(m);
          res.radius = sol.x[m];
          return res;
        }
      }
    }
  }

  if (const auto ball = inst.body.euclidean_ball()) {
    Eigen::VectorXd anchor = ball->center;
    double slack_radius = ball->radius;
    Eigen::MatrixXd kernel = Eigen::MatrixXd::Identity(d, d);
    if (rows.rows() > 0) {
      const Eigen::VectorXd shift =
          rows.completeOrthogonalDecomposition().solve(y - rows * ball->center);
      anchor = ball->center + shift;
      if ((rows * anchor - y).lpNorm<Eigen::Infinity>() > 1e-8)
        throw std::domain_error("chebyshev_center: inconsistent observations");
      const double dist = shift.norm();
      if (dist > ball->radius + 1e-9)
        throw std::domain_error("chebyshev_center: inconsistent observations");
      slack_radius = std::sqrt(std::max(0.0, ball->radius * ball->radius - dist * dist));
      kernel = kernel_basis(rows, d);
    }
    const auto reach = restricted_norm_max(s * kernel, target);
    ChebResult res;
    res.center = s * anchor;
    res.radius = reach ? slack_radius * *reach : 0.0;
    res.certified = reach.has_value();
    return res;
  }
  throw std::invalid_argument("chebyshev_center: unsupported body variant");
}

}  // namespace nwidth
