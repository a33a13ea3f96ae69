#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nwidth/instance.hpp"
#include "nwidth/recovery.hpp"
#include "nwidth/verify.hpp"
#include "nwidth/widths.hpp"
#include "nwidth/witness.hpp"

namespace nwidth {

/// Instance schema:
/// {"matrix": [[...]], "source_norm": "l1|l2|linf", "target_norm": ...,
///  "body": {"type": "lp_ball|simplex|vpolytope|hpolytope|shifted", ...}}
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
Instance load_instance(const std::string& path);

nlohmann::json body_to_json(const ConvexBody& body);
ConvexBody body_from_json(const nlohmann::json& j, int fallback_dim);

/// Chain dump: steps (vectors, values), the assembled operators, and the
/// certificate flags.
nlohmann::json chain_to_json(const WitnessChain& chain, const ChainCertificate& cert);

nlohmann::json mc_to_json(const McResult& mc);

/// Fixed 12-significant-digit formatting so equal runs emit equal bytes.
std::string format_double(double v);

std::string reports_to_csv(const std::vector<InequalityReport>& reports);
nlohmann::json reports_to_json(const std::vector<InequalityReport>& reports);

/// One width computation for the CSV/JSON exports.
struct WidthRow {
  std::string instance;
  std::string kind;
  int n = 0;
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
  bool certified = false;
  long long wall_ms = 0;
  std::string error;  // nonempty for per-item failures
};
std::string width_rows_to_csv(const std::vector<WidthRow>& rows);
nlohmann::json width_rows_to_json(const std::vector<WidthRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace nwidth
