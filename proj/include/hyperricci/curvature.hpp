#pragma once

#include <cstdint>
#include <vector>

#include "hyperricci/hypergraph.hpp"

namespace hyperricci {

struct MultistartOptions {
  int count = 64;              // random Lipschitz samples per maximization
  std::uint64_t seed = 0;
  int ascent_iterations = 30;  // projected coordinate-ascent sweeps
  double fd_step_scale = 1e-4; // finite-difference step: scale * (1 + ||f||_w)
};

// Best found value of <J_lambda f, delta_x - delta_y> over weighted
// 1-Lipschitz candidates: a certified lower bound on KD_lambda(x, y), with
// the feasible witness that attains it.
struct KDResult {
  int x = 0;
  int y = 0;
  double lambda = 0.0;
  double value = 0.0;
  VertexFunction witness;
  int candidate_count = 0;
  std::uint64_t seed = 0;
};

KDResult kantorovich_difference(const Hypergraph& h, int x, int y, double lambda,
                                const MultistartOptions& opts = {});

// kappa_lambda(x,y) = 1 - KD_lambda(x,y)/d(x,y). Because the KD value is a
// lower bound on the sup, this is an upper bound on the true kappa_lambda.
double kappa_lambda(const Hypergraph& h, int x, int y, double lambda,
                    const MultistartOptions& opts = {});

// Upper bound on the limsup of kappa_lambda/lambda from the constrained
// infimum of <L0 f, delta_x - delta_y>. Both printed normalizations are
// reported: <f, delta_x - delta_y> = 1 and = d(x,y).
struct CBoundResult {
  double unit_normalized = 0.0;      // constraint <f, dx-dy> = 1
  bool unit_feasible = false;
  double distance_normalized = 0.0;  // constraint <f, dx-dy> = d(x,y)
  bool distance_feasible = false;
};

CBoundResult curvature_upper_bound_C(const Hypergraph& h, int x, int y,
                                     const MultistartOptions& opts = {});

struct CurvatureRow {
  double lambda = 0.0;
  double kappa = 0.0;
  double ratio = 0.0;  // kappa / lambda
};

// Per-pair lambda table with the extrapolated lower/upper curvature
// estimates: min/max of the last three ratios together with the intercept
// of an affine fit of ratio against lambda over the tail of the schedule.
struct CurvatureEstimate {
  int x = 0;
  int y = 0;
  int dist = 0;
  std::vector<CurvatureRow> table;
  double kappa_lower = 0.0;
  double kappa_upper = 0.0;
  double fit_intercept = 0.0;
  double interval_width = 0.0;
  CBoundResult c_bound;
  std::uint64_t seed = 0;
};

// {0.1 * 2^-k : k = 0..7}
std::vector<double> default_lambda_schedule();

CurvatureEstimate coarse_curvature(const Hypergraph& h, int x, int y,
                                   const std::vector<double>& schedule = default_lambda_schedule(),
                                   const MultistartOptions& opts = {});

// coarse_curvature for every unordered pair, evaluated in parallel with
// per-pair seeds derived from opts.seed; results are ordered by pair index.
std::vector<CurvatureEstimate> curvature_matrix(
    const Hypergraph& h, const std::vector<double>& schedule = default_lambda_schedule(),
    const MultistartOptions& opts = {});

namespace detail {

// Nearest-point style projection onto the pinned Lipschitz polytope in
// density coordinates (Dykstra sweeps followed by an exact Lipschitz
// retraction and re-pinning at vertex 0).
Vec project_to_lipschitz(const Hypergraph& h, Vec density);

}  // namespace detail

}  // namespace hyperricci
