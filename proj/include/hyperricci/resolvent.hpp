#pragma once

#include "hyperricci/hypergraph.hpp"
#include "hyperricci/laplacian.hpp"

namespace hyperricci {

// Certified proximal solve: minimizer g of ||f-g||_w^2/(2 lambda) + E(g).
// The residual is the weighted distance of (f-g)/lambda from Lg; by strong
// convexity ||g - J_lambda f||_w <= lambda * residual.
struct ProxResult {
  Vec input;
  double lambda = 0.0;
  Vec minimizer;
  double objective = 0.0;
  double residual = 0.0;
  long iterations = 0;
};

// 1e-9 * (1 + ||f||_w), the default certificate tolerance.
double default_prox_tolerance(const Hypergraph& h, const Vec& raw);

// J_lambda f via subgradient descent with Polyak-style steps polished by an
// active-face quadratic solve; accepts any iterate whose residual
// certificate passes at tol. Pass tol <= 0 for the default. `warm`
// optionally seeds the iteration (lambda sweeps reuse the previous
// minimizer).
ProxResult resolvent(const Hypergraph& h, const Vec& f_raw, double lambda, double tol = -1.0,
                     const Vec* warm = nullptr);
ProxResult resolvent(const Hypergraph& h, const VertexFunction& f, double lambda,
                     double tol = -1.0);

// Membership residual: subdifferential_distance(g, (f-g)/lambda). Zero iff
// g = J_lambda f up to solver tolerance.
double resolvent_residual(const Hypergraph& h, const Vec& f_raw, const Vec& g_raw, double lambda,
                          double fw_tol = 1e-8);
double resolvent_residual(const Hypergraph& h, const VertexFunction& f, const VertexFunction& g,
                          double lambda, double fw_tol = 1e-8);

}  // namespace hyperricci
