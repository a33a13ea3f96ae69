#include "nwidth/widths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nwidth/lp.hpp"
#include "nwidth/parallel.hpp"
#include "nwidth/rng.hpp"
#include "nwidth/witness.hpp"

namespace nwidth {

namespace {

constexpr double kExactGap = 1e-6;
constexpr int kGridDirections = 3600;
constexpr long long kSubsetCap = 20000;

nlohmann::json rows_to_json(const Eigen::MatrixXd& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < rows.cols(); ++j) row.push_back(rows(i, j));
    out.push_back(row);
  }
  return out;
}

void finalize(Bounds& b) {
  b.exact = b.lower_certified && b.upper_certified && (b.upper - b.lower) <= kExactGap;
}

Bounds exact_value(double value, nlohmann::json witness) {
  Bounds b;
  b.lower = b.upper = value;
  b.lower_certified = b.upper_certified = true;
  b.lower_witness = witness;
  b.upper_witness = std::move(witness);
  finalize(b);
  return b;
}

double oracle_sigma(const Instance& inst, int n) {
  const auto ball = inst.body.euclidean_ball();
  const Eigen::VectorXd sv =
      Eigen::JacobiSVD<Eigen::MatrixXd>(inst.op.matrix).singularValues();
  return n < sv.size() ? ball->radius * sv[n] : 0.0;
}

// sup_{x ∈ F} ‖Sx‖ and whether the evaluation is exact.
std::pair<double, bool> sup_image_norm(const Instance& inst) {
  const Eigen::MatrixXd& s = inst.op.matrix;
  if (const auto vf = vform(inst.body)) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < vf->cols(); ++j)
      best = std::max(best, norm_eval(s * vf->col(j), inst.op.target_norm));
    return {best, true};
  }
  if (const auto ball = inst.body.euclidean_ball()) {
    const bool centered = ball->center.lpNorm<Eigen::Infinity>() <= 1e-12;
    switch (inst.op.target_norm) {
      case Norm::Linf: {
        double best = 0.0;
        for (Eigen::Index i = 0; i < s.rows(); ++i)
          best = std::max(best, std::abs(s.row(i).dot(ball->center)) +
                                    ball->radius * s.row(i).norm());
        return {best, true};
      }
      case Norm::L2: {
        const double smax = Eigen::JacobiSVD<Eigen::MatrixXd>(s).singularValues()[0];
        const double value = (s * ball->center).norm() + ball->radius * smax;
        return {centered ? ball->radius * smax : value, centered};
      }
      case Norm::L1: {
        const int m = inst.target_dim();
        if (m > 20) return {0.0, false};
        double best = 0.0;
        Eigen::VectorXd sgn(m);
        for (long long mask = 0; mask < (1LL << m); ++mask) {
          for (int i = 0; i < m; ++i) sgn[i] = ((mask >> i) & 1) ? 1.0 : -1.0;
          best = std::max(best, sgn.dot(s * ball->center) +
                                    ball->radius * (s.transpose() * sgn).norm());
        }
        return {best, true};
      }
    }
  }
  return {0.0, false};
}

// ---------------------------------------------------------------------------
// Gelfand

struct SectionCandidate {
  Eigen::MatrixXd rows;
  std::string origin;
};

SectionMax eval_rows(const Instance& inst, const Eigen::MatrixXd& rows,
                     const SearchConfig& cfg) {
  const Subspace sub{kernel_basis(rows, inst.source_dim()), inst.source_dim()};
  return max_seminorm_on_section(inst, sub, cfg);
}

// one direction of the 2-dimensional exhaustive sweep
double grid_direction_value(const Instance& inst, double angle, const SearchConfig& cfg) {
  Eigen::MatrixXd rows(1, 2);
  rows << std::cos(angle), std::sin(angle);
  return eval_rows(inst, rows, cfg).value;
}

Bounds gelfand_grid_2d(const Instance& inst, const SearchConfig& cfg) {
  struct Best {
    double value = 1e300;
    std::size_t index = 0;
  };
  const Best best = par::chunked_reduce(
      static_cast<std::size_t>(kGridDirections), 64, Best{},
      [&](std::size_t, std::size_t begin, std::size_t end) {
        Best local;
        for (std::size_t i = begin; i < end; ++i) {
          const double angle = 3.14159265358979323846 * static_cast<double>(i) /
                               static_cast<double>(kGridDirections);
          const double v = grid_direction_value(inst, angle, cfg);
          if (v < local.value || (v == local.value && i < local.index)) {
            local.value = v;
            local.index = i;
          }
        }
        return local;
      },
      [](Best a, Best b) {
        if (b.value < a.value || (b.value == a.value && b.index < a.index)) return b;
        return a;
      });
  const double angle = 3.14159265358979323846 * static_cast<double>(best.index) /
                       static_cast<double>(kGridDirections);
  Eigen::MatrixXd rows(1, 2);
  rows << std::cos(angle), std::sin(angle);
  Bounds b = exact_value(best.value, {{"method", "grid-2d"},
                                      {"directions", kGridDirections},
                                      {"functionals", rows_to_json(rows)}});
  return b;
}

// refine a functional frame by decaying random rotations, keeping improvements
Eigen::MatrixXd refine_rows(const Instance& inst, Eigen::MatrixXd rows, double& value,
                            const SearchConfig& cfg, Rng& rng) {
  double step = 0.5;
  for (int iter = 0; iter < cfg.max_iters && step > 1e-6; ++iter) {
    Eigen::MatrixXd trial = rows;
    for (Eigen::Index i = 0; i < trial.rows(); ++i)
      for (Eigen::Index j = 0; j < trial.cols(); ++j)
        trial(i, j) += step * rng.normal();
    const SectionMax sm = eval_rows(inst, trial, cfg);
    if (sm.certified && sm.value < value) {
      rows = trial;
      value = sm.value;
    } else {
      step *= 0.9;
    }
  }
  return rows;
}

Eigen::MatrixXd functionals_to_rows(const std::vector<Functional>& fs, int d,
                                    const std::vector<int>& pick) {
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(pick.size()), d);
  for (std::size_t i = 0; i < pick.size(); ++i)
    rows.row(static_cast<Eigen::Index>(i)) =
        fs[static_cast<std::size_t>(pick[i])].coefficients.transpose();
  return rows;
}

}  // namespace

std::string width_name(WidthKind k) {
  switch (k) {
    case WidthKind::Gelfand: return "gelfand";
    case WidthKind::Kolmogorov: return "kolmogorov";
    case WidthKind::Bernstein: return "bernstein";
    case WidthKind::Hilbert: return "hilbert";
    case WidthKind::Approximation: return "approximation";
  }
  throw std::logic_error("unknown width kind");
}

WidthKind width_from_name(const std::string& name) {
  if (name == "gelfand") return WidthKind::Gelfand;
  if (name == "kolmogorov") return WidthKind::Kolmogorov;
  if (name == "bernstein") return WidthKind::Bernstein;
  if (name == "hilbert") return WidthKind::Hilbert;
  if (name == "approximation") return WidthKind::Approximation;
  throw std::invalid_argument("unknown width kind: " + name);
}

InfoClass InfoClass::finite(std::vector<Functional> fs) {
  if (fs.empty()) throw std::invalid_argument("InfoClass: finite set must be nonempty");
  InfoClass ic;
  ic.all_linear = false;
  ic.set = std::move(fs);
  return ic;
}

InfoClass standard_information(const Instance& inst) {
  std::vector<Functional> fs;
  const int d = inst.source_dim();
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    e[i] = 1.0;
    fs.push_back(Functional{e, dual(inst.op.source_norm)});
  }
  return InfoClass::finite(std::move(fs));
}

bool svd_exact_regime(const Instance& inst) {
  if (inst.op.source_norm != Norm::L2 || inst.op.target_norm != Norm::L2) return false;
  const auto ball = inst.body.euclidean_ball();
  return ball && ball->center.lpNorm<Eigen::Infinity>() <= 1e-12;
}

std::vector<double> singular_widths(const Instance& inst) {
  if (!svd_exact_regime(inst))
    throw std::invalid_argument(
        "singular_widths: requires L2 norms and a centered Euclidean ball body");
  const auto ball = inst.body.euclidean_ball();
  const Eigen::VectorXd sv =
      Eigen::JacobiSVD<Eigen::MatrixXd>(inst.op.matrix).singularValues();
  std::vector<double> out(static_cast<std::size_t>(inst.source_dim()), 0.0);
  for (int k = 0; k < inst.source_dim(); ++k)
    if (k < sv.size()) out[static_cast<std::size_t>(k)] = ball->radius * sv[k];
  return out;
}

Bounds gelfand(const Instance& inst, int n, const InfoClass& info,
               const SearchConfig& cfg) {
  if (n < 0) throw std::invalid_argument("gelfand: n must be >= 0");
  const int d = inst.source_dim();

  if (info.all_linear && svd_exact_regime(inst))
    return exact_value(oracle_sigma(inst, n), {{"method", "svd"}});

  if (n == 0) {
    const SectionMax sm = max_seminorm_on_section(
        inst, Subspace{Eigen::MatrixXd::Identity(d, d), d}, cfg);
    Bounds b;
    b.lower = b.upper = sm.value;
    b.lower_certified = b.upper_certified = sm.certified;
    b.upper_witness = {{"method", "half-diameter"}};
    b.lower_witness = b.upper_witness;
    finalize(b);
    return b;
  }

  if (info.all_linear && n >= d)
    return exact_value(0.0, {{"method", "trivial-kernel"}});

  if (!info.all_linear) {
    const int avail = static_cast<int>(info.set.size());
    const int pick_count = std::min(n, avail);
    if (binomial_capped(avail, pick_count, kSubsetCap) <= kSubsetCap) {
      // exhaustive over all functional subsets: exact for the finite class
      std::vector<int> pick(static_cast<std::size_t>(pick_count));
      for (int i = 0; i < pick_count; ++i) pick[static_cast<std::size_t>(i)] = i;
      double best = 1e300;
      bool all_certified = true;
      std::vector<int> best_pick = pick;
      for (;;) {
        const SectionMax sm =
            eval_rows(inst, functionals_to_rows(info.set, d, pick), cfg);
        all_certified = all_certified && sm.certified;
        if (sm.value < best) {
          best = sm.value;
          best_pick = pick;
        }
        // next combination
        int i = pick_count - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == avail - pick_count + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < pick_count; ++j)
          pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
      }
      Bounds b;
      b.lower = b.upper = best;
      b.lower_certified = b.upper_certified = all_certified;
      nlohmann::json w = {{"method", "finite-exhaustive"},
                          {"functionals", rows_to_json(functionals_to_rows(info.set, d, best_pick))}};
      b.lower_witness = w;
      b.upper_witness = std::move(w);
      finalize(b);
      return b;
    }
    // too many subsets: greedy + random, heuristic
    Rng rng(cfg.seed);
    double best = 1e300;
    std::vector<int> best_pick;
    for (int r = 0; r < std::max(1, cfg.restarts); ++r) {
      std::vector<int> pick;
      for (int i = 0; i < pick_count; ++i)
        pick.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(avail))));
      const SectionMax sm = eval_rows(inst, functionals_to_rows(info.set, d, pick), cfg);
      if (sm.value < best) {
        best = sm.value;
        best_pick = pick;
      }
    }
    Bounds b;
    b.lower = b.upper = best;
    b.upper_certified = true;  // any admissible choice upper-bounds the inf
    b.lower_certified = false;
    b.upper_witness = {{"method", "finite-random"},
                       {"functionals", rows_to_json(functionals_to_rows(info.set, d, best_pick))}};
    b.lower_witness = {{"method", "heuristic-min"}};
    finalize(b);
    return b;
  }

  // AllLinear
  if (d == 2 && n == 1) return gelfand_grid_2d(inst, cfg);

  std::vector<SectionCandidate> cands;
  {
    const Svd dec = svd(inst.op.matrix);
    Eigen::MatrixXd rows(std::min(n, static_cast<int>(dec.v.cols())), d);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) rows.row(i) = dec.v.col(i).transpose();
    cands.push_back({rows, "svd"});
  }
  for (const ChainVariant variant : admissible_variants(inst)) {
    if (variant == ChainVariant::HilbertSourceBall) continue;  // SVD regime already exact
    try {
      const WitnessChain chain = build_chain(inst, n, variant, 1e-3, cfg);
      if (chain.length() == 0) continue;
      Eigen::MatrixXd rows(chain.length(), d);
      for (int k = 0; k < chain.length(); ++k)
        rows.row(k) = chain.steps[static_cast<std::size_t>(k)].L.coefficients.transpose();
      cands.push_back({rows, "chain-" + chain_variant_name(variant)});
    } catch (const std::exception&) {
      // chain construction can fail on exotic bodies; other candidates remain
    }
  }
  if (n >= 1) {
    // previous-level witness keeps the upper bound monotone in n
    const Bounds prev = gelfand(inst, n - 1, info, cfg);
    if (prev.upper_certified && prev.upper_witness.contains("functionals")) {
      const auto& fj = prev.upper_witness["functionals"];
      Eigen::MatrixXd rows(static_cast<Eigen::Index>(fj.size()), d);
      for (std::size_t i = 0; i < fj.size(); ++i)
        for (int j = 0; j < d; ++j) rows(static_cast<Eigen::Index>(i), j) = fj[i][j].get<double>();
      cands.push_back({rows, "previous-level"});
    } else if (prev.upper_certified) {
      cands.push_back({Eigen::MatrixXd::Zero(0, d), "previous-trivial"});
    }
  }
  {
    Rng rng(cfg.seed);
    for (int r = 0; r < std::max(1, cfg.restarts); ++r)
      cands.push_back({random_frame(d, n, rng).transpose(), "random"});
  }

  double best = 1e300;
  std::size_t best_idx = 0;
  bool best_cert = false;
  std::vector<SectionMax> evals(cands.size());
  par::parallel_for(cands.size(), [&](std::size_t i) {
    evals[i] = eval_rows(inst, cands[i].rows, cfg);
  });
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (!evals[i].certified) continue;
    if (evals[i].value < best) {
      best = evals[i].value;
      best_idx = i;
      best_cert = true;
    }
  }
  if (!best_cert) {
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (evals[i].value < best) {
        best = evals[i].value;
        best_idx = i;
      }
  }
  // local refinement of the incumbent
  Eigen::MatrixXd best_rows = cands[best_idx].rows;
  if (best_cert && best_rows.rows() == n) {
    Rng rng(cfg.seed ^ 0x9e37ULL);
    double refined = best;
    const Eigen::MatrixXd rows = refine_rows(inst, best_rows, refined, cfg, rng);
    if (refined < best) {
      best = refined;
      best_rows = rows;
    }
  }

  Bounds b;
  b.upper = best;
  b.upper_certified = best_cert;
  b.upper_witness = {{"method", cands[best_idx].origin},
                     {"functionals", rows_to_json(best_rows)}};
  b.lower = best;  // best estimate; not a certificate for the infimum
  b.lower_certified = false;
  b.lower_witness = {{"method", "heuristic-min"}};
  finalize(b);
  return b;
}

// ---------------------------------------------------------------------------
// Kolmogorov

namespace {

// sup_{f ∈ F} min_{g ∈ span(M)} ‖Sf − g‖; exact in the polytopal and
// centered-ball regimes.
std::pair<double, bool> kolmogorov_value(const Instance& inst, const Eigen::MatrixXd& m_basis) {
  const Eigen::MatrixXd& s = inst.op.matrix;
  const Norm target = inst.op.target_norm;
  const int m = inst.target_dim();
  const int k = static_cast<int>(m_basis.cols());

  auto dist_to_span = [&](const Eigen::VectorXd& q) -> double {
    if (k == 0) return norm_eval(q, target);
    switch (target) {
      case Norm::L2:
        return (q - m_basis * (m_basis.transpose() * q)).norm();
      case Norm::Linf: {
        LpProblem lp = LpProblem::free_vars(k + 1, Sense::Minimize);
        lp.objective[k] = 1.0;
        for (int i = 0; i < m; ++i) {
          Eigen::VectorXd row(k + 1);
          row.head(k) = -m_basis.row(i).transpose();
          row[k] = -1.0;
          lp.add_row(row, Relation::LessEq, -q[i]);
          row.head(k) = m_basis.row(i).transpose();
          lp.add_row(row, Relation::LessEq, q[i]);
        }
        return lp_solve(lp).value;
      }
      case Norm::L1: {
        LpProblem lp = LpProblem::free_vars(k + m, Sense::Minimize);
        for (int i = 0; i < m; ++i) lp.objective[k + i] = 1.0;
        for (int i = 0; i < m; ++i) {
          Eigen::VectorXd row = Eigen::VectorXd::Zero(k + m);
          row.head(k) = -m_basis.row(i).transpose();
          row[k + i] = -1.0;
          lp.add_row(row, Relation::LessEq, -q[i]);
          row.head(k) = m_basis.row(i).transpose();
          lp.add_row(row, Relation::LessEq, q[i]);
        }
        return lp_solve(lp).value;
      }
    }
    throw std::logic_error("unknown norm tag");
  };

  if (const auto vf = vform(inst.body)) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < vf->cols(); ++j)
      best = std::max(best, dist_to_span(s * vf->col(j)));
    return {best, true};
  }
  if (const auto ball = inst.body.euclidean_ball();
      ball && ball->center.lpNorm<Eigen::Infinity>() <= 1e-12) {
    if (target == Norm::L2) {
      const Eigen::MatrixXd resid =
          k == 0 ? s : (s - m_basis * (m_basis.transpose() * s)).eval();
      return {ball->radius *
                  (resid.size() == 0
                       ? 0.0
                       : Eigen::JacobiSVD<Eigen::MatrixXd>(resid).singularValues()[0]),
              true};
    }
    // dual route: sup over the polar section's vertices of r·‖Sᵀu‖₂
    std::optional<Eigen::MatrixXd> polar_vertices;
    if (target == Norm::Linf) {
      Eigen::MatrixXd cross(m, 2 * m);
      cross.setZero();
      for (int i = 0; i < m; ++i) {
        cross(i, 2 * i) = 1.0;
        cross(i, 2 * i + 1) = -1.0;
      }
      if (k == 0) {
        polar_vertices = cross;
      } else if (const auto sec = polytope_section(cross, m_basis.transpose(),
                                                   Eigen::VectorXd::Zero(k))) {
        polar_vertices = sec->x;
      }
    } else {  // L1 target: cube section
      Eigen::MatrixXd a(2 * m, m);
      a.topRows(m) = Eigen::MatrixXd::Identity(m, m);
      a.bottomRows(m) = -Eigen::MatrixXd::Identity(m, m);
      polar_vertices = hpoly_vertices(a, Eigen::VectorXd::Ones(2 * m),
                                      m_basis.transpose(), Eigen::VectorXd::Zero(k));
    }
    if (polar_vertices && polar_vertices->cols() > 0) {
      double best = 0.0;
      for (Eigen::Index j = 0; j < polar_vertices->cols(); ++j)
        best = std::max(best,
                        ball->radius * (s.transpose() * polar_vertices->col(j)).norm());
      return {best, true};
    }
  }
  // fallback: sampled boundary points (heuristic)
  if (const auto* lb = std::get_if<LpBallBody>(&inst.body.variant())) {
    Rng rng(0xd157);
    double best = 0.0;
    for (int trial = 0; trial < 512; ++trial) {
      Eigen::VectorXd x(inst.source_dim());
      for (int i = 0; i < inst.source_dim(); ++i) x[i] = rng.normal();
      x *= lb->radius / std::max(1e-300, norm_eval(x, lb->norm));
      best = std::max(best, dist_to_span(s * x));
    }
    return {best, false};
  }
  return {0.0, false};
}

}  // namespace

Bounds kolmogorov(const Instance& inst, int n, const SearchConfig& cfg) {
  if (n < 0) throw std::invalid_argument("kolmogorov: n must be >= 0");
  const int m = inst.target_dim();

  if (svd_exact_regime(inst)) return exact_value(oracle_sigma(inst, n), {{"method", "svd"}});

  if (n == 0) {
    const auto [value, certified] = sup_image_norm(inst);
    Bounds b;
    b.lower = b.upper = value;
    b.lower_certified = b.upper_certified = certified;
    b.upper_witness = {{"method", "image-norm-sup"}};
    b.lower_witness = b.upper_witness;
    finalize(b);
    return b;
  }

  const int rank = [&] {
    const Eigen::VectorXd sv =
        Eigen::JacobiSVD<Eigen::MatrixXd>(inst.op.matrix).singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > 1e-12 * sv[0]) ++r;
    return r;
  }();
  if (n >= m || n >= rank) {
    // the image space itself is an admissible span
    return exact_value(0.0, {{"method", "range-subspace"}});
  }

  // 2-dim target with one line: exhaustive sweep is exact
  if (m == 2 && n == 1) {
    double best = 1e300;
    int best_i = 0;
    bool cert = true;
    for (int i = 0; i < kGridDirections; ++i) {
      const double angle = 3.14159265358979323846 * i / kGridDirections;
      Eigen::MatrixXd dir(2, 1);
      dir << std::cos(angle), std::sin(angle);
      const auto [v, c] = kolmogorov_value(inst, dir);
      cert = cert && c;
      if (v < best) {
        best = v;
        best_i = i;
      }
    }
    Bounds b;
    b.lower = b.upper = best;
    b.lower_certified = b.upper_certified = cert;
    b.upper_witness = {{"method", "grid-2d"}, {"angle_index", best_i}};
    b.lower_witness = b.upper_witness;
    finalize(b);
    return b;
  }

  struct Cand {
    Eigen::MatrixXd basis;
    std::string origin;
  };
  std::vector<Cand> cands;
  {
    const Svd dec = svd(inst.op.matrix);
    cands.push_back({dec.u.leftCols(std::min(n, m)), "svd-left"});
  }
  if (n >= 1) {
    // previous-level span keeps the upper bound monotone in n
    const Bounds prev = kolmogorov(inst, n - 1, cfg);
    if (prev.upper_certified && prev.upper_witness.contains("basis")) {
      const auto& bj = prev.upper_witness["basis"];
      Eigen::MatrixXd basis(m, static_cast<Eigen::Index>(bj.size()));
      for (std::size_t i = 0; i < bj.size(); ++i)
        for (int j = 0; j < m; ++j)
          basis(j, static_cast<Eigen::Index>(i)) = bj[i][static_cast<std::size_t>(j)].get<double>();
      cands.push_back({basis, "previous-level"});
    } else if (prev.upper_certified) {
      cands.push_back({Eigen::MatrixXd(m, 0), "previous-trivial"});
    }
  }
  if (const auto vf = vform(inst.body)) {
    // spans of leading image directions
    Eigen::MatrixXd images = inst.op.matrix * (*vf);
    Eigen::MatrixXd span = orthonormalize(images);
    cands.push_back({span.leftCols(std::min<Eigen::Index>(n, span.cols())), "image-span"});
  }
  {
    Rng rng(cfg.seed ^ 0x601dULL);
    for (int r = 0; r < std::max(1, cfg.restarts); ++r)
      cands.push_back({random_frame(m, n, rng), "random"});
  }

  double best = 1e300;
  bool best_cert = false;
  std::size_t best_idx = 0;
  std::vector<std::pair<double, bool>> evals(cands.size());
  par::parallel_for(cands.size(), [&](std::size_t i) {
    evals[i] = kolmogorov_value(inst, cands[i].basis);
  });
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (evals[i].second && evals[i].first < best) {
      best = evals[i].first;
      best_idx = i;
      best_cert = true;
    }
  }
  if (!best_cert)
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (evals[i].first < best) {
        best = evals[i].first;
        best_idx = i;
      }

  // coordinate-rotation refinement of the incumbent
  Eigen::MatrixXd basis = cands[best_idx].basis;
  if (best_cert) {
    Rng rng(cfg.seed ^ 0xf17ULL);
    double step = 0.4;
    for (int iter = 0; iter < cfg.max_iters && step > 1e-6; ++iter) {
      Eigen::MatrixXd g(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
      const Eigen::MatrixXd trial = orthonormalize(basis + step * g);
      if (trial.cols() != n) {
        step *= 0.9;
        continue;
      }
      const auto [v, c] = kolmogorov_value(inst, trial);
      if (c && v < best) {
        basis = trial;
        best = v;
      } else {
        step *= 0.9;
      }
    }
  }

  Bounds b;
  b.upper = best;
  b.upper_certified = best_cert;
  b.upper_witness = {{"method", cands[best_idx].origin},
                     {"basis", rows_to_json(basis.transpose())}};
  b.lower = best;
  b.lower_certified = false;
  b.lower_witness = {{"method", "heuristic-min"}};
  finalize(b);
  return b;
}

// ---------------------------------------------------------------------------
// Bernstein

Bounds bernstein(const Instance& inst, int n, const SearchConfig& cfg) {
  if (n < 0) throw std::invalid_argument("bernstein: n must be >= 0");
  const int d = inst.source_dim();

  if (svd_exact_regime(inst)) return exact_value(oracle_sigma(inst, n), {{"method", "svd"}});

  const Bounds gel = gelfand(inst, n, InfoClass::all(), cfg);

  const int k = n + 1;
  const Eigen::VectorXd sv =
      Eigen::JacobiSVD<Eigen::MatrixXd>(inst.op.matrix).singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-12 * std::max(1e-300, sv[0])) ++rank;
  if (k > d || k > rank) {
    Bounds b = exact_value(0.0, {{"method", "no-injective-subspace"}});
    return b;
  }

  struct Cand {
    Eigen::MatrixXd basis;
    std::string origin;
  };
  std::vector<Cand> cands;
  {
    const Svd dec = svd(inst.op.matrix);
    cands.push_back({dec.v.leftCols(k), "svd-right"});
  }
  if (binomial_capped(d, k, 500) <= 500) {
    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
      Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(d, k);
      for (int i = 0; i < k; ++i) basis(pick[static_cast<std::size_t>(i)], i) = 1.0;
      cands.push_back({basis, "coordinate"});
      int i = k - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == d - k + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  {
    Rng rng(cfg.seed ^ 0xbe57ULL);
    for (int r = 0; r < std::max(1, cfg.restarts); ++r)
      cands.push_back({random_frame(d, k, rng), "random"});
  }

  std::vector<BallFit> fits(cands.size());
  par::parallel_for(cands.size(), [&](std::size_t i) {
    const Eigen::MatrixXd m = inst.op.matrix * cands[i].basis;
    const auto tau = restricted_norm_min(m, inst.op.target_norm);
    if (!tau || *tau <= 1e-10) {
      fits[i] = BallFit{};  // S not injective on this span
      return;
    }
    try {
      fits[i] = inscribed_ball_free_center(inst, Subspace{cands[i].basis, d}, cfg);
    } catch (const std::exception&) {
      fits[i] = BallFit{};
    }
  });
  double best = -1.0;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (fits[i].certified && fits[i].radius > best) {
      best = fits[i].radius;
      best_idx = i;
    }
  }

  Bounds b;
  if (best >= 0.0) {
    // rotation refinement around the winner
    Eigen::MatrixXd basis = cands[best_idx].basis;
    Rng rng(cfg.seed ^ 0x9019ULL);
    double step = 0.4;
    BallFit incumbent = fits[best_idx];
    for (int iter = 0; iter < cfg.max_iters && step > 1e-6; ++iter) {
      Eigen::MatrixXd g(d, k);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < k; ++j) g(i, j) = rng.normal();
      const Eigen::MatrixXd trial = orthonormalize(basis + step * g);
      if (trial.cols() != k) {
        step *= 0.9;
        continue;
      }
      const Eigen::MatrixXd m = inst.op.matrix * trial;
      const auto tau = restricted_norm_min(m, inst.op.target_norm);
      if (tau && *tau > 1e-10) {
        try {
          const BallFit fit = inscribed_ball_free_center(inst, Subspace{trial, d}, cfg);
          if (fit.certified && fit.radius > incumbent.radius) {
            incumbent = fit;
            basis = trial;
            step *= 1.05;
            continue;
          }
        } catch (const std::exception&) {
        }
      }
      step *= 0.9;
    }
    // re-certify through the public primitive
    const BallFit certified =
        inscribed_ball(inst, incumbent.center, Subspace{basis, d}, cfg);
    b.lower = certified.certified ? std::max(0.0, certified.radius) : 0.0;
    b.lower_certified = certified.certified;
    b.lower_witness = {{"method", "inscribed-ball"},
                       {"radius", certified.radius},
                       {"basis", rows_to_json(basis.transpose())}};
  } else {
    b.lower = 0.0;
    b.lower_certified = true;  // trivial bound
    b.lower_witness = {{"method", "trivial"}};
  }
  b.upper = gel.upper;
  b.upper_certified = gel.upper_certified;
  b.upper_witness = {{"method", "gelfand-upper"}};
  finalize(b);
  return b;
}

// ---------------------------------------------------------------------------
// Hilbert

namespace {

struct Compression {
  Eigen::MatrixXd a;  // d × q
  Eigen::MatrixXd b;  // q × m
  Eigen::VectorXd g;  // shift
  std::string origin;
};

// closed-form certificates: A(B_{ℓ2})+g ⊆ F via facet support dominance or
// the ball triangle bound; ‖B‖ ≤ 1 via the exact operator norm.
bool containment_certified(const Instance& inst, const Eigen::MatrixXd& a,
                           const Eigen::VectorXd& g) {
  if (const auto hf = hform(inst.body)) {
    for (Eigen::Index i = 0; i < hf->a.rows(); ++i) {
      const double reach = (a.transpose() * hf->a.row(i).transpose()).norm();
      if (hf->a.row(i).dot(g) + reach > hf->b[i] + 1e-9) return false;
    }
    return true;
  }
  if (const auto ball = inst.body.euclidean_ball()) {
    const double amax =
        a.size() == 0 ? 0.0 : Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues()[0];
    return (g - ball->center).norm() + amax <= ball->radius + 1e-9;
  }
  return false;
}

}  // namespace

Bounds hilbert(const Instance& inst, int n, const SearchConfig& cfg) {
  if (n < 0) throw std::invalid_argument("hilbert: n must be >= 0");
  const int d = inst.source_dim();
  const int m = inst.target_dim();

  if (svd_exact_regime(inst)) return exact_value(oracle_sigma(inst, n), {{"method", "svd"}});

  const Bounds bern = bernstein(inst, n, cfg);
  if (bern.upper_certified && bern.upper <= 1e-12)
    return exact_value(0.0, {{"method", "dominated-by-bernstein"}});

  const int q = n + 1;
  std::vector<Compression> cands;
  for (const ChainVariant variant : admissible_variants(inst)) {
    try {
      const WitnessChain chain = build_chain(inst, q, variant, 1e-3, cfg);
      if (chain.length() >= q)
        cands.push_back({chain.a_op, chain.b_op, chain.shift,
                         "chain-" + chain_variant_name(variant)});
    } catch (const std::exception&) {
    }
  }
  {
    Rng rng(cfg.seed ^ 0x417bULL);
    const Eigen::VectorXd anchor = inst.body.interior_point();
    const bool zero_inside = membership(inst.body, Eigen::VectorXd::Zero(d), 1e-9);
    for (int r = 0; r < std::max(1, cfg.restarts); ++r) {
      Eigen::MatrixXd a(d, q), b(q, m);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < q; ++j) a(i, j) = rng.normal();
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < m; ++j) b(i, j) = rng.normal();
      const double bnorm = op_norm_to_l2(b, inst.op.target_norm);
      if (bnorm > 1e-300) b /= bnorm * (1.0 + 1e-12);
      const Eigen::VectorXd g = (r % 2 == 0 && zero_inside)
                                    ? Eigen::VectorXd::Zero(d)
                                    : anchor;
      // largest scale keeping A(B₂)+g inside F
      double t = 1e300;
      if (const auto hf = hform(inst.body)) {
        for (Eigen::Index i = 0; i < hf->a.rows(); ++i) {
          const double reach = (a.transpose() * hf->a.row(i).transpose()).norm();
          const double slack = hf->b[i] - hf->a.row(i).dot(g);
          if (reach > 1e-12) t = std::min(t, slack / reach);
        }
      } else if (const auto ball = inst.body.euclidean_ball()) {
        const double amax = Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues()[0];
        t = (ball->radius - (g - ball->center).norm()) / std::max(1e-300, amax);
      } else {
        continue;
      }
      if (!(t > 0.0) || !std::isfinite(t)) continue;
      cands.push_back({a * (t / (1.0 + 1e-12)), b, g, "random"});
    }
  }

  double best = 0.0;
  std::string best_origin = "trivial";
  std::vector<double> vals(cands.size(), -1.0);
  par::parallel_for(cands.size(), [&](std::size_t i) {
    if (!containment_certified(inst, cands[i].a, cands[i].g)) return;
    if (op_norm_to_l2(cands[i].b, inst.op.target_norm) > 1.0 + 1e-9) return;
    const Eigen::MatrixXd s_n = cands[i].b * inst.op.matrix * cands[i].a;
    vals[i] = singular_value(s_n, n + 1);
  });
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (vals[i] > best) {
      best = vals[i];
      best_origin = cands[i].origin;
    }
  }

  Bounds b;
  b.lower = best;
  b.lower_certified = true;  // every candidate is certificate-checked
  b.lower_witness = {{"method", best_origin}};
  b.upper = bern.upper;
  b.upper_certified = bern.upper_certified;
  b.upper_witness = {{"method", "bernstein-upper"}};
  finalize(b);
  return b;
}

// ---------------------------------------------------------------------------
// Approximation

namespace {

// exact worst-case error of the affine map f ↦ G·f + offset as an
// approximation of S on F (upper-valid conservative value for shifted balls)
std::pair<double, bool> affine_map_error(const Instance& inst, const Eigen::MatrixXd& g,
                                         const Eigen::VectorXd& offset) {
  const Eigen::MatrixXd resid = inst.op.matrix - g;
  if (const auto vf = vform(inst.body)) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < vf->cols(); ++j)
      worst = std::max(worst,
                       norm_eval(resid * vf->col(j) - offset, inst.op.target_norm));
    return {worst, true};
  }
  if (const auto ball = inst.body.euclidean_ball()) {
    const auto reach = restricted_norm_max(resid, inst.op.target_norm);
    if (!reach) return {0.0, false};
    const Eigen::VectorXd at_center = resid * ball->center - offset;
    // triangle bound; exact when the map is centered (offset = resid·center)
    const double slack = norm_eval(at_center, inst.op.target_norm);
    return {ball->radius * *reach + slack, true};
  }
  return {0.0, false};
}

// best affine reconstruction with measurement rows L fixed (LP for Linf/L1
// targets over polytope vertices; projection + subgradient polish for L2)
std::pair<Eigen::MatrixXd, Eigen::VectorXd> fit_affine(const Instance& inst,
                                                       const Eigen::MatrixXd& l_rows) {
  const Eigen::MatrixXd& s = inst.op.matrix;
  const int m = inst.target_dim();
  const int n = static_cast<int>(l_rows.rows());
  const auto vf = vform(inst.body);
  if (!vf) {
    // symmetric ball: projection onto the measured row space, zero offset
    Eigen::MatrixXd pinv =
        l_rows.completeOrthogonalDecomposition().pseudoInverse();
    return {s * pinv * l_rows, Eigen::VectorXd::Zero(m)};
  }
  const Eigen::MatrixXd u = l_rows * (*vf);          // n × M measurements
  const Eigen::MatrixXd q = s * (*vf);               // m × M images
  const int nv = static_cast<int>(vf->cols());

  if (inst.op.target_norm == Norm::Linf || inst.op.target_norm == Norm::L1) {
    // vars: Phi (m×n), offset (m), slack t (plus per-vertex sums for L1)
    const bool l1 = inst.op.target_norm == Norm::L1;
    const int base = m * n + m;
    const int nslack = l1 ? nv * m : 0;
    const int nvars = base + nslack + 1;
    LpProblem lp = LpProblem::free_vars(nvars, Sense::Minimize);
    lp.objective[nvars - 1] = 1.0;
    for (int i = base; i < base + nslack; ++i) lp.lower[i] = 0.0;
    for (int j = 0; j < nv; ++j) {
      Eigen::VectorXd sumrow = Eigen::VectorXd::Zero(nvars);
      for (int i = 0; i < m; ++i) {
        Eigen::VectorXd row = Eigen::VectorXd::Zero(nvars);
        for (int k = 0; k < n; ++k) row[i * n + k] = u(k, j);
        row[m * n + i] = 1.0;
        const int bound_col = l1 ? base + j * m + i : nvars - 1;
        // q − Phi·u − offset ≤ bound  and  ≥ −bound
        Eigen::VectorXd le = -row;
        le[bound_col] += -1.0;
        lp.add_row(le, Relation::LessEq, -q(i, j));
        Eigen::VectorXd ge = row;
        ge[bound_col] += -1.0;
        lp.add_row(ge, Relation::LessEq, q(i, j));
        if (l1) sumrow[base + j * m + i] = 1.0;
      }
      if (l1) {
        sumrow[nvars - 1] = -1.0;
        lp.add_row(sumrow, Relation::LessEq, 0.0);
      }
    }
    const LpSolution sol = lp_solve(lp);
    Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(m, n);
    Eigen::VectorXd offset = Eigen::VectorXd::Zero(m);
    if (sol.status == LpStatus::Optimal) {
      for (int i = 0; i < m; ++i) {
        for (int k = 0; k < n; ++k) phi(i, k) = sol.x[i * n + k];
        offset[i] = sol.x[m * n + i];
      }
    }
    return {phi * l_rows, offset};
  }

  // L2 target: least-squares fit, then Polyak-style subgradient polish on the
  // worst vertex residual
  Eigen::MatrixXd ut(nv, n + 1);
  ut.leftCols(n) = u.transpose();
  ut.col(n).setOnes();
  const Eigen::MatrixXd w =
      (ut.fullPivHouseholderQr().solve(q.transpose())).transpose();  // m × (n+1)
  Eigen::MatrixXd phi = w.leftCols(n);
  Eigen::VectorXd offset = w.col(n);
  Eigen::MatrixXd best_phi = phi;
  Eigen::VectorXd best_off = offset;
  auto eval = [&](const Eigen::MatrixXd& p, const Eigen::VectorXd& o) {
    double worst = 0.0;
    for (int j = 0; j < nv; ++j)
      worst = std::max(worst, (q.col(j) - p * u.col(j) - o).norm());
    return worst;
  };
  double best_val = eval(phi, offset);
  for (int iter = 1; iter <= 400; ++iter) {
    int worst_j = 0;
    double worst = -1.0;
    for (int j = 0; j < nv; ++j) {
      const double v = (q.col(j) - phi * u.col(j) - offset).norm();
      if (v > worst) {
        worst = v;
        worst_j = j;
      }
    }
    if (worst < 1e-14) break;
    const Eigen::VectorXd r = q.col(worst_j) - phi * u.col(worst_j) - offset;
    const double step = 1.0 / (iter + 1.0);
    phi += step * (r / worst) * u.col(worst_j).transpose() /
           std::max(1.0, u.col(worst_j).squaredNorm());
    offset += step * (r / worst);
    const double v = eval(phi, offset);
    if (v < best_val) {
      best_val = v;
      best_phi = phi;
      best_off = offset;
    }
  }
  return {best_phi * l_rows, best_off};
}

}  // namespace

Bounds approximation(const Instance& inst, int n, const SearchConfig& cfg) {
  if (n < 0) throw std::invalid_argument("approximation: n must be >= 0");
  const int d = inst.source_dim();
  const int m = inst.target_dim();

  if (svd_exact_regime(inst)) return exact_value(oracle_sigma(inst, n), {{"method", "svd"}});

  if (n == 0) {
    const ChebResult cheb =
        chebyshev_center(inst, Eigen::MatrixXd(0, d), Eigen::VectorXd(0),
                         inst.op.target_norm);
    Bounds b;
    b.lower = b.upper = cheb.radius;
    b.lower_certified = b.upper_certified = cheb.certified;
    b.upper_witness = {{"method", "chebyshev-radius"}};
    b.lower_witness = b.upper_witness;
    finalize(b);
    return b;
  }

  const Eigen::VectorXd sv =
      Eigen::JacobiSVD<Eigen::MatrixXd>(inst.op.matrix).singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-12 * std::max(1e-300, sv[0])) ++rank;
  if (n >= rank)
    return exact_value(0.0, {{"method", "full-rank-reproduction"}});

  const Bounds gel = gelfand(inst, n, InfoClass::all(), cfg);

  struct Cand {
    Eigen::MatrixXd g;
    Eigen::VectorXd offset;
    std::string origin;
  };
  std::vector<Cand> cands;
  {
    const Svd dec = svd(inst.op.matrix);
    Eigen::MatrixXd trunc = Eigen::MatrixXd::Zero(m, d);
    for (int i = 0; i < std::min<int>(n, static_cast<int>(dec.sigma.size())); ++i)
      trunc += dec.sigma[i] * dec.u.col(i) * dec.v.col(i).transpose();
    cands.push_back({trunc, Eigen::VectorXd::Zero(m), "svd-truncation"});
    Eigen::MatrixXd l_rows(n, d);
    for (int i = 0; i < n; ++i) l_rows.row(i) = dec.v.col(i).transpose();
    const auto [g1, off1] = fit_affine(inst, l_rows);
    cands.push_back({g1, off1, "svd-rows-fit"});
  }
  if (gel.upper_witness.contains("functionals")) {
    const auto& fj = gel.upper_witness["functionals"];
    if (!fj.empty()) {
      Eigen::MatrixXd l_rows(static_cast<Eigen::Index>(fj.size()), d);
      for (std::size_t i = 0; i < fj.size(); ++i)
        for (int j = 0; j < d; ++j)
          l_rows(static_cast<Eigen::Index>(i), j) = fj[i][j].get<double>();
      const auto [g2, off2] = fit_affine(inst, l_rows);
      cands.push_back({g2, off2, "gelfand-rows-fit"});
    }
  }
  {
    Rng rng(cfg.seed ^ 0xaffeULL);
    for (int r = 0; r < std::max(1, cfg.restarts) / 2; ++r) {
      const Eigen::MatrixXd l_rows = random_frame(d, n, rng).transpose();
      const auto [g3, off3] = fit_affine(inst, l_rows);
      cands.push_back({g3, off3, "random-rows-fit"});
    }
  }
  if (n >= 1) {
    const Bounds prev = approximation(inst, n - 1, cfg);
    if (prev.upper_certified && prev.upper_witness.contains("g_matrix")) {
      const auto& gj = prev.upper_witness["g_matrix"];
      Eigen::MatrixXd g(m, d);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = gj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<double>();
      Eigen::VectorXd off = Eigen::VectorXd::Zero(m);
      const auto& oj = prev.upper_witness["offset"];
      for (int i = 0; i < m; ++i) off[i] = oj[static_cast<std::size_t>(i)].get<double>();
      cands.push_back({g, off, "previous-level"});
    }
  }

  double best = 1e300;
  std::size_t best_idx = 0;
  bool best_cert = false;
  std::vector<std::pair<double, bool>> evals(cands.size());
  par::parallel_for(cands.size(), [&](std::size_t i) {
    evals[i] = affine_map_error(inst, cands[i].g, cands[i].offset);
  });
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (!evals[i].second) continue;
    if (evals[i].first < best) {
      best = evals[i].first;
      best_idx = i;
      best_cert = true;
    }
  }
  if (!best_cert)
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (evals[i].first < best) {
        best = evals[i].first;
        best_idx = i;
      }

  Bounds b;
  b.upper = best;
  b.upper_certified = best_cert;
  b.upper_witness = {{"method", cands[best_idx].origin},
                     {"g_matrix", rows_to_json(cands[best_idx].g)},
                     {"offset", [&] {
                        nlohmann::json arr = nlohmann::json::array();
                        for (int i = 0; i < m; ++i) arr.push_back(cands[best_idx].offset[i]);
                        return arr;
                      }()}};
  b.lower = gel.lower;
  b.lower_certified = gel.lower_certified;
  b.lower_witness = {{"method", "gelfand-lower"}};
  finalize(b);
  return b;
}

Bounds compute_width(const Instance& inst, WidthKind kind, int n,
                     const InfoClass& info, const SearchConfig& cfg) {
  switch (kind) {
    case WidthKind::Gelfand: return gelfand(inst, n, info, cfg);
    case WidthKind::Kolmogorov: return kolmogorov(inst, n, cfg);
    case WidthKind::Bernstein: return bernstein(inst, n, cfg);
    case WidthKind::Hilbert: return hilbert(inst, n, cfg);
    case WidthKind::Approximation: return approximation(inst, n, cfg);
  }
  throw std::logic_error("unknown width kind");
}

}  // namespace nwidth
