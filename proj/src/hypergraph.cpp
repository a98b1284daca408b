#include "hyperricci/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "hyperricci/detail/numeric.hpp"

namespace hyperricci {

Hypergraph::Hypergraph(std::vector<std::string> vertex_names, std::vector<Hyperedge> edges)
    : names_(std::move(vertex_names)), edges_(std::move(edges)) {
  const int n = vertex_count();
  if (n == 0) throw ValidationError("hypergraph needs at least one vertex");

  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw ValidationError("empty vertex name");
    if (!seen.insert(name).second) throw ValidationError("duplicate vertex name '" + name + "'");
  }

  degrees_.assign(n, 0.0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto& e = edges_[i];
    const std::string label = "edge " + std::to_string(i);
    if (e.members.empty()) throw ValidationError(label + " has no members");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw ValidationError(label + " has nonpositive weight " + std::to_string(e.weight));
    std::set<int> members;
    for (int v : e.members) {
      if (v < 0 || v >= n) throw ValidationError(label + " references unknown vertex");
      if (!members.insert(v).second)
        throw ValidationError(label + " repeats vertex '" + names_[v] + "'");
    }
    for (int v : e.members) degrees_[v] += e.weight;
  }
  for (int v = 0; v < n; ++v) {
    if (!(degrees_[v] > 0.0))
      throw ValidationError("vertex '" + names_[v] + "' is isolated (degree 0)");
    volume_ += degrees_[v];
  }

  adjacency_.assign(n, {});
  std::vector<std::set<int>> nb(n);
  for (const auto& e : edges_)
    for (int u : e.members)
      for (int v : e.members)
        if (u != v) nb[u].insert(v);
  for (int v = 0; v < n; ++v) adjacency_[v].assign(nb[v].begin(), nb[v].end());

  dist_.assign(n, std::vector<int>(n, kUnreachable));
  for (int s = 0; s < n; ++s) {
    auto& row = dist_[s];
    row[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int w : adjacency_[u]) {
        if (row[w] == kUnreachable) {
          row[w] = row[u] + 1;
          queue.push_back(w);
        }
      }
    }
    for (int v = 0; v < n; ++v)
      if (row[v] == kUnreachable) connected_ = false;
  }
}

int Hypergraph::vertex_index(std::string_view name) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (names_[v] == name) return v;
  throw ValidationError("unknown vertex '" + std::string(name) + "'");
}

bool Hypergraph::adjacent(int u, int v) const {
  const auto& nb = adjacency_.at(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

int Hypergraph::diameter() const {
  if (!connected_) throw ValidationError("diameter undefined on a disconnected hypergraph");
  int diam = 0;
  for (const auto& row : dist_)
    for (int d : row) diam = std::max(diam, d);
  return diam;
}

void Hypergraph::require_size(const Vec& f) const {
  if (static_cast<int>(f.size()) != vertex_count())
    throw ValidationError("dimension mismatch: function has " + std::to_string(f.size()) +
                          " values for " + std::to_string(vertex_count()) + " vertices");
}

double Hypergraph::inner(const Vec& f, const Vec& g) const {
  require_size(f);
  require_size(g);
  double acc = 0.0;
  for (int v = 0; v < vertex_count(); ++v) acc += f[v] * g[v] / degrees_[v];
  return acc;
}

double Hypergraph::norm(const Vec& f) const { return std::sqrt(std::max(0.0, inner(f, f))); }

Vec Hypergraph::density(const Vec& raw) const {
  require_size(raw);
  Vec out(raw.size());
  for (int v = 0; v < vertex_count(); ++v) out[v] = raw[v] / degrees_[v];
  return out;
}

Vec Hypergraph::raw_from_density(const Vec& density) const {
  require_size(density);
  Vec out(density.size());
  for (int v = 0; v < vertex_count(); ++v) out[v] = density[v] * degrees_[v];
  return out;
}

Vec Hypergraph::delta(int v) const {
  Vec out(vertex_count(), 0.0);
  out.at(v) = 1.0;
  return out;
}

Vec Hypergraph::rho(int z) const {
  Vec out(vertex_count(), 0.0);
  for (int v = 0; v < vertex_count(); ++v) {
    int d = dist_.at(z).at(v);
    if (d == kUnreachable)
      throw ValidationError("rho_" + names_.at(z) + " undefined: vertex '" + names_.at(v) +
                            "' unreachable");
    out[v] = degrees_[v] * d;
  }
  return out;
}

Vec raw_values(const Hypergraph& h, const VertexFunction& f) {
  return f.view == FunctionView::raw ? (h.require_size(f.values), f.values)
                                     : h.raw_from_density(f.values);
}

Vec density_values(const Hypergraph& h, const VertexFunction& f) {
  return f.view == FunctionView::density ? (h.require_size(f.values), f.values)
                                         : h.density(f.values);
}

double inner_product(const Hypergraph& h, const VertexFunction& f, const VertexFunction& g) {
  return h.inner(raw_values(h, f), raw_values(h, g));
}

std::vector<GeodesicPath> enumerate_geodesics(const Hypergraph& h, int x, int y) {
  if (x < 0 || x >= h.vertex_count() || y < 0 || y >= h.vertex_count())
    throw ValidationError("geodesic endpoints out of range");
  if (h.distance(x, y) == Hypergraph::kUnreachable)
    throw ValidationError("no path between '" + h.vertex_name(x) + "' and '" + h.vertex_name(y) +
                          "'");
  // Walk the BFS predecessor DAG backwards from y.
  std::vector<GeodesicPath> out;
  std::vector<int> stack{y};
  const auto& row = h.distance_matrix()[x];
  auto extend = [&](auto&& self, int u) -> void {
    if (u == x) {
      GeodesicPath path;
      path.vertices.assign(stack.rbegin(), stack.rend());
      out.push_back(std::move(path));
      return;
    }
    for (int w : h.neighbors(u)) {
      if (row[w] + 1 == row[u]) {
        stack.push_back(w);
        self(self, w);
        stack.pop_back();
      }
    }
  };
  extend(extend, y);
  std::sort(out.begin(), out.end(),
            [](const GeodesicPath& a, const GeodesicPath& b) { return a.vertices < b.vertices; });
  return out;
}

double lipschitz_constant(const Hypergraph& h, const Vec& raw) {
  Vec dens = h.density(raw);
  double best = 0.0;
  for (int x = 0; x < h.vertex_count(); ++x)
    for (int y = 0; y < h.vertex_count(); ++y) {
      if (x == y) continue;
      int d = h.distance(x, y);
      if (d == Hypergraph::kUnreachable) continue;
      best = std::max(best, (dens[x] - dens[y]) / d);
    }
  return best;
}

double lipschitz_constant(const Hypergraph& h, const VertexFunction& f) {
  return lipschitz_constant(h, raw_values(h, f));
}

namespace {

// McShane-style retraction: the largest 1-Lipschitz minorant, identity on
// functions already 1-Lipschitz.
Vec lipschitz_retract(const Hypergraph& h, const Vec& dens) {
  const int n = h.vertex_count();
  Vec out(n, 0.0);
  for (int u = 0; u < n; ++u) {
    double best = dens[u];
    for (int v = 0; v < n; ++v) {
      int d = h.distance(u, v);
      if (d == Hypergraph::kUnreachable) continue;
      best = std::min(best, dens[v] + d);
    }
    out[u] = best;
  }
  return out;
}

Vec pin_at_base(Vec dens) {
  double base = dens.at(0);
  for (double& x : dens) x -= base;
  return dens;
}

}  // namespace

std::vector<VertexFunction> lipschitz_vertex_samples(const Hypergraph& h, std::uint64_t seed,
                                                     int count) {
  if (!h.connected()) throw ValidationError("lipschitz samples need a connected hypergraph");
  if (count < 0) throw ValidationError("negative sample count");
  const int n = h.vertex_count();
  const double diam = static_cast<double>(h.diameter());
  std::vector<VertexFunction> out;
  out.reserve(2 * n + count);

  for (int z = 0; z < n; ++z) {
    Vec dz(n);
    for (int v = 0; v < n; ++v) dz[v] = static_cast<double>(h.distance(z, v));
    out.push_back(VertexFunction::raw(h.raw_from_density(pin_at_base(dz))));
    for (double& x : dz) x = -x;
    out.push_back(VertexFunction::raw(h.raw_from_density(pin_at_base(dz))));
  }

  detail::Rng rng(detail::splitmix64(seed ^ 0x4c697073ULL));
  Vec sample(n);
  for (int k = 0; k < count; ++k) {
    if (k % 2 == 0) {
      for (int v = 0; v < n; ++v) sample[v] = rng.uniform(-diam, diam);
      sample = lipschitz_retract(h, sample);
    } else {
      for (double& x : sample) x = -x;  // mirror of the previous sample
    }
    out.push_back(VertexFunction::raw(h.raw_from_density(pin_at_base(sample))));
  }
  return out;
}

}  // namespace hyperricci
