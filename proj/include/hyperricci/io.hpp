#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperricci/curvature.hpp"
#include "hyperricci/heat.hpp"
#include "hyperricci/hypergraph.hpp"
#include "hyperricci/laplacian.hpp"
#include "hyperricci/resolvent.hpp"
#include "hyperricci/rigidity.hpp"

namespace hyperricci {

// A named hypergraph, the unit the instance file format describes.
struct Instance {
  std::string name;
  Hypergraph graph;
};

// JSON instance document: {"name": ..., "vertices": [...],
// "edges": [{"members": [...], "weight": w}, ...]}.
Instance parse_instance(const std::filesystem::path& path);
Instance parse_instance_json(const nlohmann::json& doc, const std::string& context);
nlohmann::json instance_to_json(const Instance& inst);
void write_instance(const Instance& inst, const std::filesystem::path& path);

nlohmann::json to_json(const Hypergraph& h, const LaplacianValue& value);
nlohmann::json to_json(const Hypergraph& h, const ProxResult& r);
nlohmann::json to_json(const Hypergraph& h, const FlowTrajectory& t);
nlohmann::json to_json(const Hypergraph& h, const KDResult& r);
nlohmann::json to_json(const Hypergraph& h, const CurvatureEstimate& e);
nlohmann::json to_json(const Hypergraph& h, const RigidityReport& r);
nlohmann::json to_json(const Hypergraph& h, const EigenCheck& c);

// Flattened per-lambda rows with header
// x,y,d,lambda,kappa_lambda,ratio,kappa_lower_est,kappa_upper_est,C_bound.
// C_bound carries the distance-normalized variant.
std::string curvature_csv(const Hypergraph& h, const std::vector<CurvatureEstimate>& estimates);

// CLI entry point (subcommands info, laplacian, resolvent, heat, kd,
// curvature, rigidity, examples). Returns the process exit code: 0 success,
// 1 validation error, 2 solver non-convergence.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace hyperricci
