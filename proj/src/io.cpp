#include "nwidth/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nwidth {

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(std::string(what) + ": expected a nonempty array of rows");
  const std::size_t cols = j[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != cols)
      throw std::invalid_argument(std::string(what) + ": ragged rows at row " +
                                  std::to_string(i));
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = j[i][c].get<double>();
  }
  return m;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array())
    throw std::invalid_argument(std::string(what) + ": expected an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

}  // namespace

nlohmann::json body_to_json(const ConvexBody& body) {
  return std::visit(
      [&](const auto& b) -> nlohmann::json {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, LpBallBody>) {
          return {{"type", "lp_ball"},
                  {"norm", norm_name(b.norm)},
                  {"radius", b.radius},
                  {"dim", b.dim}};
        } else if constexpr (std::is_same_v<T, VPolytopeBody>) {
          return {{"type", "vpolytope"},
                  {"vertices", matrix_to_json(b.vertices.transpose())}};
        } else if constexpr (std::is_same_v<T, HPolytopeBody>) {
          return {{"type", "hpolytope"}, {"a", matrix_to_json(b.a)},
                  {"b", vector_to_json(b.b)}};
        } else if constexpr (std::is_same_v<T, SimplexBody>) {
          return {{"type", "simplex"}, {"dim", b.dim}};
        } else {
          return {{"type", "shifted"},
                  {"inner", body_to_json(*b.inner)},
                  {"offset", vector_to_json(b.offset)}};
        }
      },
      body.variant());
}

ConvexBody body_from_json(const nlohmann::json& j, int fallback_dim) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "lp_ball") {
    const int dim = j.contains("dim") ? j.at("dim").get<int>() : fallback_dim;
    return ConvexBody::lp_ball(norm_from_name(j.at("norm").get<std::string>()),
                               j.at("radius").get<double>(), dim);
  }
  if (type == "simplex") {
    const int dim = j.contains("dim") ? j.at("dim").get<int>() : fallback_dim;
    return ConvexBody::simplex(dim);
  }
  if (type == "vpolytope")
    return ConvexBody::vpolytope(matrix_from_json(j.at("vertices"), "vertices").transpose());
  if (type == "hpolytope")
    return ConvexBody::hpolytope(matrix_from_json(j.at("a"), "a"),
                                 vector_from_json(j.at("b"), "b"));
  if (type == "shifted")
    return ConvexBody::shifted(body_from_json(j.at("inner"), fallback_dim),
                               vector_from_json(j.at("offset"), "offset"));
  throw std::invalid_argument("body: unknown type \"" + type + "\"");
}

nlohmann::json instance_to_json(const Instance& inst) {
  return {{"matrix", matrix_to_json(inst.op.matrix)},
          {"source_norm", norm_name(inst.op.source_norm)},
          {"target_norm", norm_name(inst.op.target_norm)},
          {"body", body_to_json(inst.body)}};
}

Instance instance_from_json(const nlohmann::json& j) {
  const Eigen::MatrixXd m = matrix_from_json(j.at("matrix"), "matrix");
  Operator op{m, norm_from_name(j.at("source_norm").get<std::string>()),
              norm_from_name(j.at("target_norm").get<std::string>())};
  return Instance(std::move(op),
                  body_from_json(j.at("body"), static_cast<int>(m.cols())));
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("parse error in " + path + ": " + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const std::exception& e) {
    throw std::runtime_error("invalid instance in " + path + ": " + e.what());
  }
}

nlohmann::json chain_to_json(const WitnessChain& chain, const ChainCertificate& cert) {
  nlohmann::json steps = nlohmann::json::array();
  for (const ChainStep& s : chain.steps) {
    steps.push_back({{"p", vector_to_json(s.p)},
                     {"f", vector_to_json(s.f)},
                     {"g", vector_to_json(s.g)},
                     {"lambda", vector_to_json(s.lambda.coefficients)},
                     {"L", vector_to_json(s.L.coefficients)},
                     {"value", s.value},
                     {"certified", s.certified}});
  }
  return {{"variant", chain_variant_name(chain.variant)},
          {"eps", chain.eps},
          {"steps", steps},
          {"A", matrix_to_json(chain.a_op)},
          {"B", matrix_to_json(chain.b_op)},
          {"shift", vector_to_json(chain.shift)},
          {"S_n", matrix_to_json(chain.compressed)},
          {"gamma", chain.gamma},
          {"index_stride", chain.index_stride},
          {"certificate",
           {{"containment_ok", cert.containment_ok},
            {"contraction_ok", cert.contraction_ok},
            {"triangular_ok", cert.triangular_ok},
            {"det_lower", cert.det_lower},
            {"det_actual", cert.det_actual},
            {"sigma", cert.sigma},
            {"per_step_hilbert_lb", cert.per_step_hilbert_lb}}}};
}

nlohmann::json mc_to_json(const McResult& mc) {
  return {{"n", mc.n},
          {"samples", mc.samples},
          {"seed", mc.seed},
          {"coord_second_moment", mc.coord_second_moment},
          {"mean_error_lb", mc.mean_error_lb},
          {"stderr", mc.stderr_estimate}};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string reports_to_csv(const std::vector<InequalityReport>& reports) {
  std::ostringstream out;
  out << "name,instance,n,lhs,rhs,factor,margin,holds,sides_certified,note\n";
  for (const InequalityReport& r : reports) {
    out << r.name << ',' << r.instance_id << ',' << r.n << ',' << format_double(r.lhs)
        << ',' << format_double(r.rhs) << ',' << format_double(r.factor) << ','
        << format_double(r.margin) << ',' << (r.holds ? 1 : 0) << ','
        << (r.sides_certified ? 1 : 0) << ',' << '"' << r.note << '"' << '\n';
  }
  return out.str();
}

nlohmann::json reports_to_json(const std::vector<InequalityReport>& reports) {
  nlohmann::json out = nlohmann::json::array();
  for (const InequalityReport& r : reports) {
    out.push_back({{"name", r.name},
                   {"instance", r.instance_id},
                   {"n", r.n},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"factor", r.factor},
                   {"margin", r.margin},
                   {"holds", r.holds},
                   {"sides_certified", r.sides_certified},
                   {"note", r.note}});
  }
  return out;
}

std::string width_rows_to_csv(const std::vector<WidthRow>& rows) {
  std::ostringstream out;
  out << "instance,kind,n,lower,upper,exact,certified,wall_ms,error\n";
  for (const WidthRow& r : rows) {
    out << r.instance << ',' << r.kind << ',' << r.n << ',' << format_double(r.lower)
        << ',' << format_double(r.upper) << ',' << (r.exact ? 1 : 0) << ','
        << (r.certified ? 1 : 0) << ',' << r.wall_ms << ',' << '"' << r.error << '"'
        << '\n';
  }
  return out.str();
}

nlohmann::json width_rows_to_json(const std::vector<WidthRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const WidthRow& r : rows) {
    out.push_back({{"instance", r.instance},
                   {"kind", r.kind},
                   {"n", r.n},
                   {"lower", r.lower},
                   {"upper", r.upper},
                   {"exact", r.exact},
                   {"certified", r.certified},
                   {"wall_ms", r.wall_ms},
                   {"error", r.error}});
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace nwidth
