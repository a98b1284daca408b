#include "hyperricci/instances.hpp"

#include <cmath>
#include <utility>

#include "hyperricci/detail/numeric.hpp"

namespace hyperricci {

namespace {

Hypergraph build(std::vector<std::string> names, std::vector<std::pair<std::vector<int>, double>> edges) {
  std::vector<Hyperedge> es;
  es.reserve(edges.size());
  for (auto& [members, weight] : edges) es.push_back({std::move(members), weight});
  return Hypergraph(std::move(names), std::move(es));
}

}  // namespace

Hypergraph make_h1() {
  return build({"p", "v1", "v2", "q"}, {{{0, 1}, 1.0},
                                        {{0, 2}, 1.0},
                                        {{1, 2}, 1.0},
                                        {{1, 3}, 1.0},
                                        {{2, 3}, 1.0},
                                        {{0, 1, 2}, 1.0},
                                        {{1, 2, 3}, 1.0}});
}

Hypergraph make_h2() {
  return build({"p", "v1", "v2", "q"}, {{{0, 1, 2}, 1.0}, {{1, 2, 3}, 1.0}});
}

Hypergraph make_single_edge() { return build({"x", "y"}, {{{0, 1}, 1.0}}); }

Hypergraph make_path3() { return build({"p", "v", "q"}, {{{0, 1}, 1.0}, {{1, 2}, 1.0}}); }

Hypergraph make_pendant_h2() {
  return build({"p", "v1", "v2", "q", "w"},
               {{{0, 1, 2}, 1.0}, {{1, 2, 3}, 1.0}, {{1, 4}, 1.0}});
}

Hypergraph scale_weights(const Hypergraph& h, double a) {
  if (!(a > 0.0)) throw ValidationError("weight scale must be positive");
  std::vector<Hyperedge> edges = h.edges();
  for (auto& e : edges) e.weight *= a;
  return Hypergraph(h.vertex_names(), std::move(edges));
}

Hypergraph random_hypergraph(std::uint64_t seed, int max_vertices, int max_edges,
                             bool require_connected) {
  if (max_vertices < 2 || max_edges < 1) throw ValidationError("random instance bounds too small");
  detail::Rng rng(detail::splitmix64(seed ^ 0x7268ULL));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    int n = rng.uniform_int(2, max_vertices);
    int m = rng.uniform_int(1, max_edges);
    std::vector<std::string> names;
    for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
    std::vector<Hyperedge> edges;
    std::vector<bool> covered(n, false);
    for (int e = 0; e < m; ++e) {
      int size = rng.uniform_int(1, n);
      std::vector<int> pool(n);
      for (int v = 0; v < n; ++v) pool[v] = v;
      std::vector<int> members;
      for (int s = 0; s < size; ++s) {
        int pos = rng.uniform_int(0, static_cast<int>(pool.size()) - 1);
        members.push_back(pool[pos]);
        pool.erase(pool.begin() + pos);
      }
      double weight = std::pow(2.0, rng.uniform(-2.0, 2.0));
      for (int v : members) covered[v] = true;
      edges.push_back({std::move(members), weight});
    }
    bool all_covered = true;
    for (bool c : covered) all_covered = all_covered && c;
    if (!all_covered) continue;
    Hypergraph h(std::move(names), std::move(edges));
    if (require_connected && !h.connected()) continue;
    return h;
  }
  throw SolverError("random_hypergraph: no valid instance after 1000 attempts");
}

}  // namespace hyperricci
