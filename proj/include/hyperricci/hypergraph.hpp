#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperricci {

using Vec = std::vector<double>;

// Malformed input: bad instance files, unknown vertices, invalid arguments.
// The CLI maps it to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative solver exhausted its budget before reaching the requested
// tolerance. The CLI maps it to exit code 2.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Hyperedge {
  std::vector<int> members;  // indices into the vertex order
  double weight = 1.0;
};

// Weighted finite hypergraph. Structure is immutable after construction;
// weighted degrees, co-membership adjacency and the hop-count distance
// matrix are computed eagerly. Vertices are indexed by declaration order.
class Hypergraph {
 public:
  static constexpr int kUnreachable = -1;

  Hypergraph(std::vector<std::string> vertex_names, std::vector<Hyperedge> edges);

  int vertex_count() const { return static_cast<int>(names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::string& vertex_name(int v) const { return names_.at(v); }
  // Throws ValidationError for unknown names.
  int vertex_index(std::string_view name) const;
  const std::vector<Hyperedge>& edges() const { return edges_; }

  double degree(int v) const { return degrees_.at(v); }
  const Vec& degrees() const { return degrees_; }
  double volume() const { return volume_; }

  // Neighbours under the co-membership relation (shared hyperedge).
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(v); }
  bool adjacent(int u, int v) const;

  // Hop-count distance; kUnreachable when no chain exists.
  int distance(int x, int y) const { return dist_.at(x).at(y); }
  const std::vector<std::vector<int>>& distance_matrix() const { return dist_; }
  bool connected() const { return connected_; }
  // Max finite distance; throws ValidationError when disconnected.
  int diameter() const;

  // Weighted inner product <f,g> = sum_x f(x) g(x) / d_x and its norm.
  double inner(const Vec& f, const Vec& g) const;
  double norm(const Vec& f) const;

  // View conversions between f (raw) and f~ = D^-1 f (density).
  Vec density(const Vec& raw) const;
  Vec raw_from_density(const Vec& density) const;

  Vec delta(int v) const;
  // D1: the vector of degrees.
  Vec degree_vector() const { return degrees_; }
  // rho_z = D d(z,.) in raw coordinates; requires z to reach every vertex.
  Vec rho(int z) const;

  void require_size(const Vec& f) const;

 private:
  std::vector<std::string> names_;
  std::vector<Hyperedge> edges_;
  Vec degrees_;
  double volume_ = 0.0;
  std::vector<std::vector<int>> adjacency_;  // sorted neighbour lists
  std::vector<std::vector<int>> dist_;
  bool connected_ = true;
};

enum class FunctionView { raw, density };

// A function V -> R together with the view its values are expressed in.
// Raw values f pair against delta functions through the weighted inner
// product; density values f~ = D^-1 f are the coordinates in which
// Lipschitz and max/min conditions are stated.
struct VertexFunction {
  Vec values;
  FunctionView view = FunctionView::raw;

  static VertexFunction raw(Vec v) { return {std::move(v), FunctionView::raw}; }
  static VertexFunction density(Vec v) { return {std::move(v), FunctionView::density}; }
};

Vec raw_values(const Hypergraph& h, const VertexFunction& f);
Vec density_values(const Hypergraph& h, const VertexFunction& f);

// A vertex sequence x_0,...,x_n with consecutive vertices co-incident and
// n = d(x_0, x_n).
struct GeodesicPath {
  std::vector<int> vertices;
  int length() const { return static_cast<int>(vertices.size()) - 1; }
  bool operator==(const GeodesicPath& o) const { return vertices == o.vertices; }
};

double inner_product(const Hypergraph& h, const VertexFunction& f, const VertexFunction& g);

// All geodesics from x to y via the BFS predecessor DAG.
std::vector<GeodesicPath> enumerate_geodesics(const Hypergraph& h, int x, int y);

// max over ordered pairs of (f~(x) - f~(y)) / d(x,y), finite pairs only.
// f is weighted 1-Lipschitz iff the result is <= 1.
double lipschitz_constant(const Hypergraph& h, const VertexFunction& f);
double lipschitz_constant(const Hypergraph& h, const Vec& raw);

// Deterministic sample of weighted 1-Lipschitz functions, density view
// pinned to 0 at vertex 0: the 2|V| functions +-rho_z followed by `count`
// seeded random samples (each generated sample paired with its negation).
std::vector<VertexFunction> lipschitz_vertex_samples(const Hypergraph& h, std::uint64_t seed,
                                                     int count);

}  // namespace hyperricci
