#include "nwidth/witness.hpp"

#include <cmath>
#include <stdexcept>

#include "nwidth/rng.hpp"

namespace nwidth {

std::string chain_variant_name(ChainVariant v) {
  switch (v) {
    case ChainVariant::General: return "general";
    case ChainVariant::SymmetricF: return "symmetric";
    case ChainVariant::HilbertTarget: return "hilbert-target";
    case ChainVariant::HilbertSourceBall: return "hilbert-source-ball";
  }
  throw std::logic_error("unknown chain variant");
}

ChainVariant chain_variant_from_name(const std::string& name) {
  if (name == "general") return ChainVariant::General;
  if (name == "symmetric") return ChainVariant::SymmetricF;
  if (name == "hilbert-target") return ChainVariant::HilbertTarget;
  if (name == "hilbert-source-ball") return ChainVariant::HilbertSourceBall;
  throw std::invalid_argument("unknown chain variant: " + name);
}

std::vector<ChainVariant> admissible_variants(const Instance& inst) {
  std::vector<ChainVariant> out{ChainVariant::General};
  if (inst.body.is_symmetric()) out.push_back(ChainVariant::SymmetricF);
  if (inst.op.target_norm == Norm::L2) out.push_back(ChainVariant::HilbertTarget);
  if (inst.op.source_norm == Norm::L2) {
    if (const auto ball = inst.body.euclidean_ball();
        ball && ball->center.lpNorm<Eigen::Infinity>() <= 1e-12)
      out.push_back(ChainVariant::HilbertSourceBall);
  }
  return out;
}

WitnessChain build_chain(const Instance& inst, int n, ChainVariant variant,
                         double eps, const SearchConfig& cfg) {
  if (!(eps > 0.0)) throw std::invalid_argument("build_chain: eps must be positive");
  if (n < 1) throw std::invalid_argument("build_chain: n must be >= 1");
  const auto admissible = admissible_variants(inst);
  if (std::find(admissible.begin(), admissible.end(), variant) == admissible.end())
    throw std::invalid_argument("build_chain: variant not admissible for this instance");

  const int d = inst.source_dim();
  const Eigen::MatrixXd& s = inst.op.matrix;
  const bool orthogonal_steps = variant == ChainVariant::HilbertSourceBall;

  WitnessChain chain;
  chain.variant = variant;
  chain.eps = eps;

  Eigen::MatrixXd rows(0, d);
  for (int k = 0; k < n; ++k) {
    const Eigen::MatrixXd kernel = kernel_basis(rows, d);
    if (kernel.cols() == 0) break;
    const SectionMax sm =
        max_seminorm_on_section(inst, Subspace{kernel, d}, cfg);
    if (sm.value < 1e-12) break;  // section collapsed

    ChainStep step;
    step.p = sm.p;
    step.f = sm.f;
    step.g = sm.g;
    step.value = sm.value;
    step.certified = sm.certified;
    step.lambda = norming_functional(s * sm.p, inst.op.target_norm);
    step.L = Functional{s.transpose() * step.lambda.coefficients, dual(inst.op.source_norm)};
    chain.steps.push_back(step);

    rows.conservativeResize(rows.rows() + (orthogonal_steps ? 2 : 1), Eigen::NoChange);
    rows.row(rows.rows() - (orthogonal_steps ? 2 : 1)) = step.L.coefficients.transpose();
    if (orthogonal_steps) rows.row(rows.rows() - 1) = sm.p.normalized().transpose();
  }

  const int q = chain.length();
  if (q == 0) {
    chain.a_op.resize(d, 0);
    chain.b_op.resize(0, inst.target_dim());
    chain.shift = Eigen::VectorXd::Zero(d);
    chain.compressed.resize(0, 0);
    return chain;
  }
  const double qd = static_cast<double>(q);
  const bool symmetric = inst.body.is_symmetric();
  const bool l2_target = inst.op.target_norm == Norm::L2;

  bool zero_shift = false;
  switch (variant) {
    case ChainVariant::General:
      chain.a_scale = 1.0 / qd;
      chain.b_scale = 1.0 / std::sqrt(qd);
      chain.gamma = 1.5;
      break;
    case ChainVariant::SymmetricF:
      chain.a_scale = 1.0 / std::sqrt(qd);
      chain.b_scale = l2_target ? 1.0 : 1.0 / std::sqrt(qd);
      chain.gamma = l2_target ? 0.5 : 1.0;
      zero_shift = true;
      break;
    case ChainVariant::HilbertTarget:
      chain.b_scale = 1.0;
      chain.a_scale = symmetric ? 1.0 / std::sqrt(qd) : 1.0 / qd;
      chain.gamma = symmetric ? 0.5 : 1.0;
      zero_shift = symmetric;
      break;
    case ChainVariant::HilbertSourceBall:
      chain.a_scale = 1.0;
      chain.b_scale = 1.0 / std::sqrt(qd);
      chain.gamma = 0.5;
      chain.index_stride = 2;
      zero_shift = true;
      break;
  }

  chain.a_op.resize(d, q);
  chain.b_op.resize(q, inst.target_dim());
  chain.shift = Eigen::VectorXd::Zero(d);
  for (int k = 0; k < q; ++k) {
    chain.a_op.col(k) = chain.a_scale * chain.steps[static_cast<std::size_t>(k)].p;
    chain.b_op.row(k) =
        chain.b_scale * chain.steps[static_cast<std::size_t>(k)].lambda.coefficients.transpose();
    if (!zero_shift)
      chain.shift += (chain.steps[static_cast<std::size_t>(k)].f +
                      chain.steps[static_cast<std::size_t>(k)].g) /
                     (2.0 * qd);
  }
  chain.compressed = chain.b_op * s * chain.a_op;
  return chain;
}

ChainCertificate certify_chain(const WitnessChain& chain, const Instance& inst) {
  ChainCertificate cert;
  const int q = chain.length();
  if (q == 0) return cert;

  const double scale =
      std::max(1.0, chain.compressed.cwiseAbs().maxCoeff());
  cert.triangular_ok = true;
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      if (std::abs(chain.compressed(i, j)) > 1e-8 * scale) cert.triangular_ok = false;

  const double bnorm =
      op_norm_to_l2(chain.b_op, inst.op.target_norm);
  cert.contraction_ok = bnorm <= 1.0 + 1e-8;

  if (const auto hf = hform(inst.body)) {
    double worst = -1e300;
    for (Eigen::Index i = 0; i < hf->a.rows(); ++i) {
      const double reach = (chain.a_op.transpose() * hf->a.row(i).transpose()).norm();
      worst = std::max(worst, hf->a.row(i).dot(chain.shift) + reach - hf->b[i]);
    }
    cert.containment_ok = worst <= 1e-7;
  } else if (const auto ball = inst.body.euclidean_ball()) {
    const double amax =
        chain.a_op.size() == 0
            ? 0.0
            : Eigen::JacobiSVD<Eigen::MatrixXd>(chain.a_op).singularValues()[0];
    cert.containment_ok =
        (chain.shift - ball->center).norm() + amax <= ball->radius + 1e-7;
  } else {
    // sampled boundary check
    Rng rng(0xb0d7);
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
      Eigen::VectorXd xi(q);
      for (int i = 0; i < q; ++i) xi[i] = rng.normal();
      xi.normalize();
      ok = membership(inst.body, chain.a_op * xi + chain.shift, 1e-7);
    }
    cert.containment_ok = ok;
  }

  cert.sigma.resize(static_cast<std::size_t>(q));
  const Eigen::VectorXd sv =
      Eigen::JacobiSVD<Eigen::MatrixXd>(chain.compressed).singularValues();
  cert.det_actual = 1.0;
  cert.det_lower = 1.0;
  for (int i = 0; i < q; ++i) {
    cert.sigma[static_cast<std::size_t>(i)] = sv[i];
    cert.det_actual *= sv[i];
    cert.det_lower *= chain.a_scale * chain.b_scale *
                      chain.steps[static_cast<std::size_t>(i)].value;
  }
  cert.per_step_hilbert_lb = cert.sigma;
  return cert;
}

double chain_gelfand_lower(const WitnessChain& chain, int k) {
  if (k < 0 || k >= chain.length())
    throw std::out_of_range("chain_gelfand_lower: step index out of range");
  const ChainStep& step = chain.steps[static_cast<std::size_t>(k)];
  if (!step.certified)
    throw std::runtime_error("chain_gelfand_lower: uncertified (heuristic) step");
  return step.value / (1.0 + chain.eps);
}

}  // namespace nwidth
