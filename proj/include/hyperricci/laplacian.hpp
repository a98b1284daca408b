#pragma once

#include <vector>

#include "hyperricci/hypergraph.hpp"

namespace hyperricci {

// Per-hyperedge argmax/argmin structure of f~: M_e, m_e and the gap
// c_e = max_e f~ - min_e f~. When c_e = 0 both sets equal the whole edge.
struct FaceDescriptor {
  int edge = 0;
  std::vector<int> argmax;
  std::vector<int> argmin;
  double gap = 0.0;
};

struct FacePair {
  int u = 0;       // in argmax
  int v = 0;       // in argmin
  double weight = 0.0;
};

// Convex weights over argmax x argmin pairs, one entry list per hyperedge
// (aligned with the edge list; edges with zero gap may stay empty).
struct FaceSelection {
  std::vector<std::vector<FacePair>> per_edge;
};

// An element of the multivalued Laplacian together with the selection that
// produced it.
struct LaplacianValue {
  Vec value;
  FaceSelection selection;
  double weighted_norm = 0.0;
  double fw_gap = 0.0;      // duality-gap certificate of the min-norm solve
  bool multivalued = false; // true when the Laplacian set is not a singleton
};

// E(f) = 1/2 sum_e w_e (max_e f~ - min_e f~)^2.
double energy(const Hypergraph& h, const Vec& raw);
double energy(const Hypergraph& h, const VertexFunction& f);

// 1e-9 * (1 + max |f~|), the default tie tolerance for argmax/argmin sets.
double default_tie_tolerance(const Hypergraph& h, const Vec& raw);

std::vector<FaceDescriptor> active_faces(const Hypergraph& h, const Vec& raw, double tie_tol);
std::vector<FaceDescriptor> active_faces(const Hypergraph& h, const VertexFunction& f,
                                         double tie_tol);

// Assembles sum_e w_e c_e b_e for an explicit selection b_e of argmax-face
// weights. Throws when the selection references a non-face pair or is not a
// distribution on an active edge.
LaplacianValue laplacian_element(const Hypergraph& h, const Vec& raw, const FaceSelection& sel);
LaplacianValue laplacian_element(const Hypergraph& h, const VertexFunction& f,
                                 const FaceSelection& sel);

// Minimum-weighted-norm element of Lf, by pairwise Frank-Wolfe over the
// per-edge faces; terminates when the duality gap is <= tol^2, so the
// returned point is within sqrt(2)*tol of the true minimizer.
LaplacianValue canonical_laplacian(const Hypergraph& h, const Vec& raw, double tol = 1e-7);
LaplacianValue canonical_laplacian(const Hypergraph& h, const VertexFunction& f,
                                   double tol = 1e-7);

// Weighted-norm distance from v to the polytope Lf; 0 (up to tol) iff v
// belongs to Lf.
double subdifferential_distance(const Hypergraph& h, const Vec& f_raw, const Vec& v_raw,
                                double tol = 1e-7);
double subdifferential_distance(const Hypergraph& h, const VertexFunction& f,
                                const VertexFunction& v, double tol = 1e-7);

namespace detail {

// 1 + max |f~|: the magnitude scale of gap extraction on f.
double density_scale(const Hypergraph& h, const Vec& raw);

struct MinNormResult {
  Vec point;
  FaceSelection selection;
  double gap = 0.0;
  long iterations = 0;
  bool multivalued = false;
};

// min over x in Lf of ||x - target||_w, pairwise Frank-Wolfe with away
// atoms and exact line search. `faces` must come from active_faces on the
// same function; edges with gap <= tie_tol are dropped.
MinNormResult min_norm_over_faces(const Hypergraph& h, const std::vector<FaceDescriptor>& faces,
                                  double tie_tol, const Vec& target, double tol,
                                  long iteration_cap = 100000, double base_scale = 1.0);

}  // namespace detail

}  // namespace hyperricci
