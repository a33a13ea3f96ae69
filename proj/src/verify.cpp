#include "nwidth/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nwidth/parallel.hpp"
#include "nwidth/rng.hpp"

namespace nwidth {

namespace {

constexpr double kCheckTol = 1e-6;

InequalityReport make_report(std::string name, std::string id, int n, double lhs,
                             double rhs, double factor, bool certified,
                             std::string note = "") {
  InequalityReport r;
  r.name = std::move(name);
  r.instance_id = std::move(id);
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.factor = factor;
  r.margin = rhs - lhs;
  r.holds = lhs <= rhs + kCheckTol;
  r.sides_certified = certified;
  r.note = std::move(note);
  return r;
}

Operator identity_op(int d, Norm source, Norm target) {
  return Operator{Eigen::MatrixXd::Identity(d, d), source, target};
}

}  // namespace

std::vector<SuiteInstance> default_suite(std::uint64_t seed) {
  std::vector<SuiteInstance> suite;
  auto diag_instance = [](std::vector<double> entries) {
    const int d = static_cast<int>(entries.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
    return Instance(Operator{m, Norm::L2, Norm::L2}, ConvexBody::lp_ball(Norm::L2, 1.0, d));
  };
  suite.push_back({"diag3_l2", diag_instance({1.0, 0.5, 0.25})});
  suite.push_back({"diag4_l2", diag_instance({1.0, 0.5, 0.25, 0.125})});
  {
    Rng rng = Rng::for_stream(seed, 901);
    Eigen::MatrixXd m(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) m(i, j) = rng.normal();
    suite.push_back({"rand5_l2", Instance(Operator{m, Norm::L2, Norm::L2},
                                          ConvexBody::lp_ball(Norm::L2, 1.0, 5))});
  }
  for (int d : {2, 3, 4})
    suite.push_back({"id" + std::to_string(d) + "_l1_linf",
                     Instance(identity_op(d, Norm::L1, Norm::Linf),
                              ConvexBody::lp_ball(Norm::L1, 1.0, d))});
  for (int d : {2, 3})
    suite.push_back({"id" + std::to_string(d) + "_l1_l2",
                     Instance(identity_op(d, Norm::L1, Norm::L2),
                              ConvexBody::lp_ball(Norm::L1, 1.0, d))});
  suite.push_back({"id3_l1_l1", Instance(identity_op(3, Norm::L1, Norm::L1),
                                         ConvexBody::lp_ball(Norm::L1, 1.0, 3))});
  for (int d : {2, 3, 4})
    suite.push_back({"simplex" + std::to_string(d) + "_l2",
                     Instance(identity_op(d, Norm::L2, Norm::L2), ConvexBody::simplex(d))});
  for (int d : {2, 3})
    suite.push_back({"simplex" + std::to_string(d) + "_linf",
                     Instance(identity_op(d, Norm::Linf, Norm::Linf), ConvexBody::simplex(d))});
  {
    Rng rng = Rng::for_stream(seed, 902);
    Eigen::MatrixXd verts(3, 6);
    for (int j = 0; j < 6; ++j)
      for (int i = 0; i < 3; ++i) verts(i, j) = rng.uniform(-1.0, 1.0);
    suite.push_back({"vpoly3_l2", Instance(identity_op(3, Norm::L2, Norm::L2),
                                           ConvexBody::vpolytope(verts))});
  }
  {
    Rng rng = Rng::for_stream(seed, 903);
    Eigen::MatrixXd verts(2, 5);
    for (int j = 0; j < 5; ++j)
      for (int i = 0; i < 2; ++i) verts(i, j) = rng.uniform(-1.0, 1.0);
    suite.push_back({"vpoly2_linf", Instance(identity_op(2, Norm::L1, Norm::Linf),
                                             ConvexBody::vpolytope(verts))});
  }
  {
    Eigen::VectorXd off(2);
    off << 0.2, 0.1;
    suite.push_back({"shift2_l1ball",
                     Instance(identity_op(2, Norm::L1, Norm::Linf),
                              ConvexBody::shifted(ConvexBody::lp_ball(Norm::L1, 1.0, 2), off))});
  }
  {
    Eigen::VectorXd off(3);
    off << -0.1, 0.05, 0.0;
    suite.push_back({"shift3_simplex",
                     Instance(identity_op(3, Norm::L2, Norm::L2),
                              ConvexBody::shifted(ConvexBody::simplex(3), off))});
  }
  return suite;
}

WidthTable width_table(const Instance& inst, int n, const SearchConfig& cfg) {
  WidthTable t;
  t.gelfand = gelfand(inst, n, InfoClass::all(), cfg);
  t.kolmogorov = kolmogorov(inst, n, cfg);
  t.bernstein = bernstein(inst, n, cfg);
  t.hilbert = hilbert(inst, n, cfg);
  t.approximation = approximation(inst, n, cfg);
  return t;
}

InequalityReport check_ordering(const std::string& id, const WidthTable& t, int n) {
  const double margin_hb = t.bernstein.upper - t.hilbert.lower;
  const double margin_bc = t.gelfand.upper - t.bernstein.lower;
  const bool certified = t.hilbert.lower_certified && t.bernstein.upper_certified &&
                         t.bernstein.lower_certified && t.gelfand.upper_certified;
  InequalityReport r;
  if (margin_hb <= margin_bc)
    r = make_report("ordering", id, n, t.hilbert.lower, t.bernstein.upper, 1.0,
                    certified, "h<=b binding");
  else
    r = make_report("ordering", id, n, t.bernstein.lower, t.gelfand.upper, 1.0,
                    certified, "b<=c binding");
  r.holds = margin_hb >= -kCheckTol && margin_bc >= -kCheckTol;
  r.margin = std::min(margin_hb, margin_bc);
  return r;
}

InequalityReport check_geometric_mean(const std::string& id, const WitnessChain& chain,
                                      const ChainCertificate& cert) {
  const int q = chain.length();
  if (q == 0)
    return make_report("geometric_mean", id, 0, 0.0, 0.0, 0.0, false, "chain collapsed");
  bool steps_certified = cert.all_ok();
  double lhs_log = 0.0, rhs_log = 0.0;
  for (int k = 0; k < q; ++k) {
    double cgl = 0.0;
    try {
      cgl = chain_gelfand_lower(chain, k);
    } catch (const std::exception&) {
      steps_certified = false;
      cgl = chain.steps[static_cast<std::size_t>(k)].value / (1.0 + chain.eps);
    }
    lhs_log += std::log(std::max(cgl, 1e-300));
    rhs_log += std::log(std::max(cert.per_step_hilbert_lb[static_cast<std::size_t>(k)], 1e-300));
  }
  const double qd = static_cast<double>(q);
  const double lhs = std::exp(lhs_log / qd);
  const double rhs = std::pow(qd, chain.gamma) * (1.0 + chain.eps) * std::exp(rhs_log / qd);
  InequalityReport r = make_report("geometric_mean", id, q, lhs, rhs,
                                   std::pow(qd, chain.gamma), steps_certified,
                                   chain_variant_name(chain.variant));
  return r;
}

InequalityReport check_geometric_mean(const std::string& id, const Instance& inst,
                                      int n, ChainVariant variant,
                                      const SearchConfig& cfg) {
  const WitnessChain chain = build_chain(inst, n, variant, 1e-3, cfg);
  if (chain.length() < n) {
    InequalityReport r = make_report("geometric_mean", id, n, 0.0, 0.0, 0.0, false,
                                     "chain truncated; skipped");
    r.holds = true;
    return r;
  }
  return check_geometric_mean(id, chain, certify_chain(chain, inst));
}

InequalityReport check_hilbert_target(const std::string& id, const Instance& inst,
                                      const WidthTable& t, int n) {
  if (inst.op.target_norm != Norm::L2)
    throw std::invalid_argument("check_hilbert_target: target norm must be L2");
  const double factor = inst.body.is_symmetric() ? std::sqrt(static_cast<double>(n + 1))
                                                 : static_cast<double>(n + 1);
  const bool certified = t.gelfand.lower_certified && t.bernstein.upper_certified;
  return make_report("hilbert_target", id, n, t.gelfand.lower,
                     factor * t.bernstein.upper, factor, certified);
}

InequalityReport check_regularity(const std::vector<double>& z, double c) {
  const int n = static_cast<int>(z.size());
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("check_regularity: n must be even and >= 2");
  for (int k = 0; k + 1 < n; ++k) {
    if (!(z[static_cast<std::size_t>(k)] > 0.0) ||
        z[static_cast<std::size_t>(k)] < z[static_cast<std::size_t>(k + 1)] - 1e-12)
      throw std::invalid_argument("check_regularity: z must be positive non-increasing");
  }
  // hypothesis z_k ≤ c z_{2k} for 1-based k ≤ n/2
  for (int k = 1; k <= n / 2; ++k) {
    if (z[static_cast<std::size_t>(k - 1)] > c * z[static_cast<std::size_t>(2 * k - 1)] + 1e-12) {
      InequalityReport r = make_report("regularity", "sequence", n, 0.0, 0.0, c, false,
                                       "not-applicable: hypothesis violated");
      r.holds = true;
      return r;
    }
  }
  double log_sum = 0.0;
  for (double v : z) log_sum += std::log(v);
  const double lhs = std::exp(log_sum / n);
  const double rhs = std::pow(c, 4) * z[static_cast<std::size_t>(n - 1)];
  return make_report("regularity", "sequence", n, lhs, rhs, std::pow(c, 4), true);
}

InequalityReport check_superpolynomial(const std::vector<double>& z, int n) {
  if (n < 2 || n % 2 != 0 || static_cast<int>(z.size()) < n)
    throw std::invalid_argument("check_superpolynomial: need even n <= len(z)");
  for (int k = 0; k < n; ++k)
    if (!(z[static_cast<std::size_t>(k)] > 0.0))
      throw std::invalid_argument("check_superpolynomial: z must be positive");
  double log_sum = 0.0;
  for (int k = 0; k < n; ++k) log_sum += std::log(z[static_cast<std::size_t>(k)]);
  const double lhs = std::exp(log_sum / n);
  const double rhs = std::sqrt(z[0] * z[static_cast<std::size_t>(n / 2 - 1)]);
  return make_report("superpolynomial", "sequence", n, lhs, rhs, 1.0, true);
}

InequalityReport check_carl(const std::string& id, const Instance& inst,
                            const std::vector<WidthTable>& tables, int n, double alpha) {
  if (static_cast<int>(tables.size()) < 2 * n)
    throw std::invalid_argument("check_carl: need width tables for 0..2n-1");
  const bool symmetric = inst.body.is_symmetric();
  const bool l2t = inst.op.target_norm == Norm::L2;
  const double gamma = (symmetric && l2t) ? 0.5 : ((symmetric || l2t) ? 1.0 : 1.5);
  double sup = 0.0;
  bool certified = tables[static_cast<std::size_t>(2 * n - 1)].gelfand.lower_certified;
  for (int k = 0; k < 2 * n; ++k) {
    const Bounds& h = tables[static_cast<std::size_t>(k)].hilbert;
    sup = std::max(sup, std::pow(k + 1.0, alpha) * h.upper);
    certified = certified && h.upper_certified;
  }
  const double lhs = tables[static_cast<std::size_t>(2 * n - 1)].gelfand.lower;
  const double constant = std::pow(12.0, alpha + 1.0);
  const double rhs = constant * std::pow(static_cast<double>(n), -alpha + gamma) * sup;
  return make_report("carl", id, n, lhs, rhs, constant, certified,
                     "alpha=" + std::to_string(alpha) +
                         "; h-sequence proxies 2*e_ran per the recovery sandwich");
}

RateReport fit_rate(const std::vector<double>& z) {
  if (z.size() < 3) throw std::invalid_argument("fit_rate: need at least 3 entries");
  const int n = static_cast<int>(z.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 1; k <= n; ++k) {
    const double v = z[static_cast<std::size_t>(k - 1)];
    if (!(v > 0.0)) throw std::invalid_argument("fit_rate: entries must be positive");
    const double x = std::log(static_cast<double>(k));
    const double y = -std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  RateReport r;
  r.name = "rate";
  r.alpha = denom > 1e-300 ? (n * sxy - sx * sy) / denom : 0.0;
  double ss = 0.0;
  const double intercept = (sy - r.alpha * sx) / n;
  for (int k = 1; k <= n; ++k) {
    const double x = std::log(static_cast<double>(k));
    const double y = -std::log(z[static_cast<std::size_t>(k - 1)]);
    const double e = y - (r.alpha * x + intercept);
    ss += e * e;
  }
  r.residual = std::sqrt(ss / n);
  return r;
}

std::vector<InequalityReport> check_kolmogorov_relations(const std::string& id,
                                                         const Instance& inst,
                                                         const std::vector<WidthTable>& tables,
                                                         int n) {
  if (static_cast<int>(tables.size()) < n + 1)
    throw std::invalid_argument("check_kolmogorov_relations: need tables for 0..n");
  std::vector<InequalityReport> out;
  const WidthTable& t = tables[static_cast<std::size_t>(n)];

  {  // (i) geometric-mean estimate for d_n
    const double alpha = inst.body.is_symmetric() ? 1.0 : 1.5;
    double log_sum = 0.0;
    bool cert = t.kolmogorov.lower_certified;
    for (int k = 0; k <= n; ++k) {
      const Bounds& h = tables[static_cast<std::size_t>(k)].hilbert;
      log_sum += std::log(std::max(h.upper, 1e-300));
      cert = cert && h.upper_certified;
    }
    const double rhs =
        std::pow(n + 1.0, alpha) * std::exp(log_sum / (n + 1.0));
    out.push_back(make_report("kolmogorov_gm", id, n, t.kolmogorov.lower, rhs,
                              std::pow(n + 1.0, alpha), cert));
  }
  if (inst.op.target_norm == Norm::L2) {  // (ii) c_n ≤ d_n for Hilbert targets
    out.push_back(make_report("kolmogorov_c_le_d", id, n, t.gelfand.lower,
                              t.kolmogorov.upper, 1.0,
                              t.gelfand.lower_certified && t.kolmogorov.upper_certified));
  }
  {  // (iii) Mityagin–Henkin style bound
    const double factor = std::pow(n + 1.0, 2.0);
    out.push_back(make_report("kolmogorov_mityagin", id, n, t.kolmogorov.lower,
                              factor * t.bernstein.upper, factor,
                              t.kolmogorov.lower_certified && t.bernstein.upper_certified));
  }
  return out;
}

VerifyRun run_default_suite(const SearchConfig& cfg, long long mc_samples) {
  const std::vector<SuiteInstance> suite = default_suite(cfg.seed);
  VerifyRun run;

  struct InstanceResult {
    std::vector<InequalityReport> reports;
  };
  std::vector<InstanceResult> results(suite.size());

  par::parallel_for(suite.size(), [&](std::size_t idx) {
    const SuiteInstance& si = suite[idx];
    const Instance& inst = si.inst;
    InstanceResult& res = results[idx];
    const int d = inst.source_dim();
    const int nmax = std::min(3, d);

    std::vector<WidthTable> tables;
    for (int n = 0; n <= nmax; ++n) tables.push_back(width_table(inst, n, cfg));

    for (int n = 0; n <= nmax; ++n) {
      res.reports.push_back(check_ordering(si.id, tables[static_cast<std::size_t>(n)], n));
      if (inst.op.target_norm == Norm::L2)
        res.reports.push_back(
            check_hilbert_target(si.id, inst, tables[static_cast<std::size_t>(n)], n));
      const auto krel = check_kolmogorov_relations(si.id, inst, tables, n);
      res.reports.insert(res.reports.end(), krel.begin(), krel.end());
    }
    for (int n : {2, 3}) {
      if (n > d) continue;
      for (const ChainVariant variant : admissible_variants(inst))
        res.reports.push_back(check_geometric_mean(si.id, inst, n, variant, cfg));
    }
    for (double alpha : {0.0, 1.0}) {
      if (2 * 1 - 1 <= nmax)
        res.reports.push_back(check_carl(si.id, inst, tables, 1, alpha));
      if (2 * 2 - 1 <= nmax)
        res.reports.push_back(check_carl(si.id, inst, tables, 2, alpha));
    }
    // recovery sandwich where the Gelfand value is certified exact
    const Bounds& c1 = tables.size() > 1 ? tables[1].gelfand : tables[0].gelfand;
    if (tables.size() > 1 && c1.exact && c1.upper_witness.contains("functionals")) {
      const auto& fj = c1.upper_witness["functionals"];
      std::vector<Functional> fs;
      for (std::size_t i = 0; i < fj.size(); ++i) {
        Eigen::VectorXd coeff(d);
        for (int j = 0; j < d; ++j) coeff[j] = fj[i][static_cast<std::size_t>(j)].get<double>();
        fs.push_back(Functional{coeff, dual(inst.op.source_norm)});
      }
      if (!fs.empty()) {
        const InformationMap map(fs, InfoClass::all());
        const RecoveryReport rec = worst_case_error(inst, map, cfg);
        InequalityReport r = make_report("recovery_sandwich", si.id, 1,
                                         rec.worst_case_error, 2.0 * c1.upper, 2.0,
                                         rec.certified && c1.exact);
        r.holds = rec.worst_case_error >= c1.lower - kCheckTol &&
                  rec.worst_case_error <= 2.0 * c1.upper + kCheckTol;
        res.reports.push_back(r);
      }
    }
  });

  for (const InstanceResult& res : results)
    run.reports.insert(run.reports.end(), res.reports.begin(), res.reports.end());

  // information-gap reproduction on the ℓ1² → ℓ∞² identity
  {
    const Instance inst(identity_op(2, Norm::L1, Norm::Linf),
                        ConvexBody::lp_ball(Norm::L1, 1.0, 2));
    const Bounds all = gelfand(inst, 1, InfoClass::all(), cfg);
    const Bounds std_info = gelfand(inst, 1, standard_information(inst), cfg);
    InequalityReport r = make_report("info_gap", "id2_l1_linf", 1, all.upper,
                                     std_info.lower, 2.0,
                                     all.exact && std_info.exact);
    r.holds = std::abs(all.upper - 0.5) <= 1e-3 && std::abs(std_info.lower - 1.0) <= 1e-3;
    r.note = "standard vs linear information";
    run.reports.push_back(r);
  }

  // sequence-level checks
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int n : {16, 64}) {
      std::vector<double> z;
      for (int k = 1; k <= n; ++k) z.push_back(std::pow(k, -alpha));
      InequalityReport r = check_regularity(z, std::pow(2.0, alpha));
      r.instance_id = "z=k^-" + std::to_string(alpha) + ",n=" + std::to_string(n);
      run.reports.push_back(r);
    }
  }
  {
    std::vector<double> z;
    for (int k = 1; k <= 8; ++k) z.push_back(std::pow(2.0, -k));
    InequalityReport r = check_superpolynomial(z, 8);
    r.instance_id = "z=2^-k,n=8";
    run.reports.push_back(r);
  }

  // rate recovery on diagonal instances
  for (double alpha : {0.5, 1.0, 2.0}) {
    const int dim = 64;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 1; k <= dim; ++k) m(k - 1, k - 1) = std::pow(k, -alpha);
    const Instance inst(Operator{m, Norm::L2, Norm::L2},
                        ConvexBody::lp_ball(Norm::L2, 1.0, dim));
    RateReport rr = fit_rate(singular_widths(inst));
    rr.name = "rate_alpha_" + std::to_string(alpha);
    run.rates.push_back(rr);
    InequalityReport r = make_report("rate_fit", rr.name, dim,
                                     std::abs(rr.alpha - alpha), 0.05, 1.0, true);
    run.reports.push_back(r);
  }

  // sphere experiment
  for (int n : {1, 2, 4}) {
    const McResult mc = sphere_mc_lower_bound(n, mc_samples, cfg.seed);
    run.mc.push_back(mc);
    InequalityReport moment =
        make_report("mc_sphere_moment", "sphere_n" + std::to_string(n), n,
                    std::abs(mc.coord_second_moment - 0.5), 0.01, 1.0, true);
    run.reports.push_back(moment);
    InequalityReport mean = make_report("mc_sphere_mean", "sphere_n" + std::to_string(n),
                                        n, 0.49, mc.mean_error_lb, 1.0, true);
    run.reports.push_back(mean);
  }

  for (const InequalityReport& r : run.reports)
    if (r.sides_certified && !r.holds) run.all_certified_hold = false;
  return run;
}

}  // namespace nwidth
