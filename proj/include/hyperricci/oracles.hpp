#pragma once

#include <cstdint>

#include "hyperricci/hypergraph.hpp"

namespace hyperricci {

// Budgets for the slow exhaustive reference solvers. They validate the fast
// path on tiny instances and are compiled into the test surface and the
// CLI (--oracle), never silently substituted.
struct OracleConfig {
  int vertex_cap = 5;
  int grid_divisions = 8;    // pairwise convex-combination grid resolution
  int multistarts = 1000;    // random ascent starts in oracle_kd
  long max_iterations = 200000;
  std::uint64_t seed = 0;
};

// Min-norm point of Lf over the enumerated vertex set of the face product,
// by long-run projected gradient on the simplex with step 1/Lambda; the
// final Frank-Wolfe gap is recomputed as a certificate.
Vec oracle_min_norm(const Hypergraph& h, const Vec& f_raw, const OracleConfig& cfg = {});

// J_lambda f by projected subgradient with diminishing steps, refined by
// ADMM on the lifted quadratic program with per-pair gap constraints
// c_e >= f~(u) - f~(v).
Vec oracle_resolvent(const Hypergraph& h, const Vec& f_raw, double lambda,
                     const OracleConfig& cfg = {});

// Dense search for KD_lambda(x,y): vertex enumeration of the pinned
// Lipschitz polytope, a grid of pairwise convex combinations, and seeded
// random-direction ascent starts. Best value found.
double oracle_kd(const Hypergraph& h, int x, int y, double lambda, const OracleConfig& cfg = {});

}  // namespace hyperricci
