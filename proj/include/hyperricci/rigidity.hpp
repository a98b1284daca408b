#pragma once

#include <vector>

#include "hyperricci/curvature.hpp"
#include "hyperricci/hypergraph.hpp"

namespace hyperricci {

int diameter(const Hypergraph& h);

struct BonnetMyersResult {
  int diameter = 0;
  double bound = 0.0;   // 2/K
  bool satisfied = false;
  bool maximal = false; // diameter == 2/K
};

// Checks Diam <= 2/K for a claimed curvature lower bound K > 0.
BonnetMyersResult bonnet_myers_check(const Hypergraph& h, double K);

// Excess f(v) = d_v (d(p,v) + d(v,q) - 2/K) for a maximal pair
// (d(p,q) = 2/K); nonpositive everywhere iff every vertex is on a p-q
// geodesic, with 0 exactly on geodesic vertices.
VertexFunction excess(const Hypergraph& h, int p, int q, double K);

// Residual of rho_pole - K^-1 D1 as an eigenfunction of L0 with
// eigenvalue K.
struct EigenCheck {
  int pole = 0;
  double K = 0.0;
  Vec function;         // raw coordinates
  double residual = 0.0;
};

EigenCheck eigenfunction_check(const Hypergraph& h, int pole, double K, double tol = 1e-7);

struct DiametralPairReport {
  int p = 0;
  int q = 0;
  Vec excess;                  // indexed by vertex
  bool coverage = false;       // excess <= 0 everywhere
  std::vector<int> violators;  // vertices with positive excess
  double pairing_pq = 0.0;     // <L0 rho_p, delta_q>
  double pairing_qp = 0.0;     // <L0 rho_q, delta_p>
  EigenCheck eigen_p;
  EigenCheck eigen_q;
};

struct GeodesicPairCurvature {
  int p = 0;  // diametral pair the vertices were taken from
  int q = 0;
  int x = 0;
  int y = 0;
  bool common_geodesic = false;  // x and y on one geodesic; only then does
                                 // the rigidity statement pin the value
  CurvatureEstimate estimate;
};

struct RigidityOptions {
  bool curvature = true;  // estimate curvature along geodesics (slow part)
  std::vector<double> schedule = default_lambda_schedule();
  MultistartOptions multistart = {};
  double solver_tol = 1e-7;
};

struct RigidityReport {
  double K = 0.0;
  int diameter = 0;
  double bound = 0.0;
  bool satisfied = false;
  bool maximal = false;
  std::vector<DiametralPairReport> pairs;           // empty when not maximal
  std::vector<GeodesicPairCurvature> curvatures;    // per RigidityOptions
};

// Full maximal-diameter analysis: all diametral pairs, geodesic coverage
// via the excess function, Laplacian pairings, pole eigenfunction residuals
// and (optionally) curvature estimates for vertex pairs on geodesics.
RigidityReport maximal_diameter_rigidity(const Hypergraph& h, double K,
                                         const RigidityOptions& opts = {});

}  // namespace hyperricci
