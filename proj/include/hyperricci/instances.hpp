#pragma once

#include <cstdint>

#include "hyperricci/hypergraph.hpp"

namespace hyperricci {

// The two bundled four-vertex instances with curvature >= 1 and diameter 2
// (both attain the Bonnet-Myers bound), plus small derived companions used
// across the tests and the oracle corpus.

// Vertices (p, v1, v2, q); seven unit-weight edges
// {p,v1} {p,v2} {v1,v2} {v1,q} {v2,q} {p,v1,v2} {v1,v2,q}.
Hypergraph make_h1();

// Vertices (p, v1, v2, q); two unit-weight edges {p,v1,v2} {v1,v2,q}.
Hypergraph make_h2();

// One edge {x, y} of weight 1.
Hypergraph make_single_edge();

// Path p - v - q through edges {p,v}, {v,q}, unit weights.
Hypergraph make_path3();

// H2 plus a pendant vertex w attached to v1 only; breaks geodesic coverage.
Hypergraph make_pendant_h2();

// Same structure with all weights multiplied by a > 0.
Hypergraph scale_weights(const Hypergraph& h, double a);

// Seeded random instance with 2..max_vertices vertices and 1..max_edges
// edges, resampled until valid (and connected when required).
Hypergraph random_hypergraph(std::uint64_t seed, int max_vertices = 5, int max_edges = 6,
                             bool require_connected = true);

}  // namespace hyperricci
