#include "hyperricci/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "hyperricci/curvature.hpp"
#include "hyperricci/detail/numeric.hpp"
#include "hyperricci/laplacian.hpp"
#include "hyperricci/resolvent.hpp"

namespace hyperricci {

namespace {

void check_cap(const Hypergraph& h, const OracleConfig& cfg) {
  if (h.vertex_count() > cfg.vertex_cap)
    throw ValidationError("oracle vertex cap exceeded: " + std::to_string(h.vertex_count()) +
                          " > " + std::to_string(cfg.vertex_cap));
}

}  // namespace

Vec oracle_min_norm(const Hypergraph& h, const Vec& f_raw, const OracleConfig& cfg) {
  check_cap(h, cfg);
  h.require_size(f_raw);
  const double tie_tol = default_tie_tolerance(h, f_raw);
  auto faces = active_faces(h, f_raw, tie_tol);

  // Enumerate every vertex of the face product: one (u, v) choice per
  // active edge.
  struct Active {
    double scale;
    std::vector<std::pair<int, int>> pairs;
  };
  std::vector<Active> active;
  std::size_t product = 1;
  for (const auto& face : faces) {
    if (face.gap <= tie_tol) continue;
    Active a;
    a.scale = h.edges()[face.edge].weight * face.gap;
    for (int u : face.argmax)
      for (int v : face.argmin) a.pairs.push_back({u, v});
    product *= a.pairs.size();
    if (product > (1u << 16))
      throw ValidationError("oracle_min_norm: face product too large to enumerate");
    active.push_back(std::move(a));
  }

  const int n = h.vertex_count();
  if (active.empty()) return Vec(n, 0.0);

  std::vector<Vec> points;
  points.reserve(product);
  std::vector<std::size_t> choice(active.size(), 0);
  while (true) {
    Vec y(n, 0.0);
    for (std::size_t e = 0; e < active.size(); ++e) {
      auto [u, v] = active[e].pairs[choice[e]];
      y[u] += active[e].scale;
      y[v] -= active[e].scale;
    }
    points.push_back(std::move(y));
    std::size_t e = 0;
    while (e < active.size() && ++choice[e] == active[e].pairs.size()) choice[e++] = 0;
    if (e == active.size()) break;
  }

  const std::size_t m = points.size();
  std::vector<double> gram(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      gram[i * m + j] = gram[j * m + i] = h.inner(points[i], points[j]);

  // Explicit smoothness bound: max absolute row sum dominates the largest
  // Gram eigenvalue.
  double big = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) row += std::fabs(gram[i * m + j]);
    big = std::max(big, row);
  }
  big = std::max(big, 1e-12);

  std::vector<double> alpha(m, 1.0 / static_cast<double>(m));
  std::vector<double> grad(m), next(m);
  long iters = 0;
  while (iters++ < cfg.max_iterations) {
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += gram[i * m + j] * alpha[j];
      grad[i] = s;
    }
    for (std::size_t i = 0; i < m; ++i) next[i] = alpha[i] - grad[i] / big;
    detail::project_to_simplex(next);
    double moved = 0.0;
    for (std::size_t i = 0; i < m; ++i) moved += std::fabs(next[i] - alpha[i]);
    alpha.swap(next);
    if (moved * big <= 1e-9) break;
  }

  // Frank-Wolfe gap recomputation as the certificate.
  double quad = 0.0, best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += gram[i * m + j] * alpha[j];
    quad += alpha[i] * s;
    best = std::min(best, s);
  }
  if (quad - best > 1e-10)
    throw SolverError("oracle_min_norm gap certificate failed: " + std::to_string(quad - best));

  Vec out(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (int v = 0; v < n; ++v) out[v] += alpha[i] * points[i][v];
  return out;
}

Vec oracle_resolvent(const Hypergraph& h, const Vec& f_raw, double lambda,
                     const OracleConfig& cfg) {
  check_cap(h, cfg);
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  h.require_size(f_raw);
  const int n = h.vertex_count();

  auto objective = [&](const Vec& g) {
    Vec diff(n);
    for (int i = 0; i < n; ++i) diff[i] = f_raw[i] - g[i];
    return h.inner(diff, diff) / (2.0 * lambda) + energy(h, g);
  };

  // Phase 1: projected subgradient with diminishing steps, iterates kept in
  // the ball around f that must contain the minimizer.
  const double radius = std::sqrt(std::max(0.0, 2.0 * lambda * energy(h, f_raw))) + 1e-9;
  Vec g = f_raw;
  Vec best = g;
  double best_obj = objective(g);
  for (long k = 0; k < std::min<long>(2000, cfg.max_iterations); ++k) {
    double tie = default_tie_tolerance(h, g);
    auto faces = active_faces(h, g, tie);
    Vec grad(n);
    for (int i = 0; i < n; ++i) grad[i] = (g[i] - f_raw[i]) / lambda;
    for (const auto& face : faces) {
      if (face.gap <= tie) continue;
      double scale = h.edges()[face.edge].weight * face.gap;
      for (int u : face.argmax) grad[u] += scale / face.argmax.size();
      for (int v : face.argmin) grad[v] -= scale / face.argmin.size();
    }
    double step = 2.0 * lambda / static_cast<double>(k + 2);
    for (int i = 0; i < n; ++i) g[i] -= step * grad[i];
    Vec diff(n);
    for (int i = 0; i < n; ++i) diff[i] = g[i] - f_raw[i];
    double dist = h.norm(diff);
    if (dist > radius)
      for (int i = 0; i < n; ++i) g[i] = f_raw[i] + diff[i] * (radius / dist);
    double obj = objective(g);
    if (obj < best_obj) {
      best_obj = obj;
      best = g;
    }
  }

  // Phase 2: ADMM on the lifted quadratic program
  //   min ||f-g||_w^2/(2 lambda) + 1/2 sum w_e c_e^2
  //   s.t. c_e >= g~(u) - g~(v) for each edge and ordered pair u != v.
  const int N = h.edge_count();
  const int dim = n + N;
  struct Row {
    int e, u, v;
  };
  std::vector<Row> rows;
  for (int e = 0; e < N; ++e)
    for (int u : h.edges()[e].members)
      for (int v : h.edges()[e].members)
        if (u != v) rows.push_back({e, u, v});
  const std::size_t R = rows.size();

  auto apply_a = [&](const std::vector<double>& v, std::vector<double>& out) {
    out.assign(R, 0.0);
    for (std::size_t r = 0; r < R; ++r) {
      const auto& row = rows[r];
      out[r] = v[n + row.e] - v[row.u] / h.degree(row.u) + v[row.v] / h.degree(row.v);
    }
  };
  auto apply_at = [&](const std::vector<double>& y, std::vector<double>& out) {
    out.assign(dim, 0.0);
    for (std::size_t r = 0; r < R; ++r) {
      const auto& row = rows[r];
      out[n + row.e] += y[r];
      out[row.u] -= y[r] / h.degree(row.u);
      out[row.v] += y[r] / h.degree(row.v);
    }
  };

  const double rho = 1.0;
  // Normal matrix Hq + rho A^T A, factored shape reused every iteration.
  std::vector<double> normal(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < n; ++i) normal[static_cast<std::size_t>(i) * dim + i] = 1.0 / (lambda * h.degree(i));
  for (int e = 0; e < N; ++e)
    normal[static_cast<std::size_t>(n + e) * dim + n + e] = h.edges()[e].weight;
  {
    std::vector<double> col(R), atcol(dim);
    for (int j = 0; j < dim; ++j) {
      std::vector<double> unit(dim, 0.0);
      unit[j] = 1.0;
      apply_a(unit, col);
      apply_at(col, atcol);
      for (int i = 0; i < dim; ++i) normal[static_cast<std::size_t>(i) * dim + j] += rho * atcol[i];
    }
  }

  std::vector<double> v(dim, 0.0);
  for (int i = 0; i < n; ++i) v[i] = best[i];
  {
    Vec dens = h.density(best);
    for (int e = 0; e < N; ++e) {
      double mx = -std::numeric_limits<double>::infinity();
      double mn = std::numeric_limits<double>::infinity();
      for (int u : h.edges()[e].members) {
        mx = std::max(mx, dens[u]);
        mn = std::min(mn, dens[u]);
      }
      v[n + e] = mx - mn;
    }
  }
  std::vector<double> s(R, 0.0), dual(R, 0.0), av(R), rhs(dim), ats(dim);
  apply_a(v, av);
  for (std::size_t r = 0; r < R; ++r) s[r] = std::max(0.0, av[r]);

  bool converged = false;
  for (long it = 0; it < cfg.max_iterations; ++it) {
    std::vector<double> target(R);
    for (std::size_t r = 0; r < R; ++r) target[r] = s[r] - dual[r];
    apply_at(target, ats);
    for (int i = 0; i < dim; ++i) rhs[i] = rho * ats[i];
    for (int i = 0; i < n; ++i) rhs[i] += f_raw[i] / (lambda * h.degree(i));
    v = detail::cholesky_solve(normal, rhs, dim);

    apply_a(v, av);
    double dual_moved = 0.0, primal = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
      double prev = s[r];
      s[r] = std::max(0.0, av[r] + dual[r]);
      dual_moved = std::max(dual_moved, std::fabs(s[r] - prev));
      dual[r] += av[r] - s[r];
      primal = std::max(primal, std::fabs(av[r] - s[r]));
    }
    if (primal <= 1e-12 && rho * dual_moved <= 1e-12) {
      converged = true;
      break;
    }
  }
  if (!converged) throw SolverError("oracle_resolvent ADMM did not converge");
  return Vec(v.begin(), v.begin() + n);
}

double oracle_kd(const Hypergraph& h, int x, int y, double lambda, const OracleConfig& cfg) {
  check_cap(h, cfg);
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (x == y) throw ValidationError("pair must consist of distinct vertices");
  if (!h.connected()) throw ValidationError("oracle_kd needs a connected hypergraph");

  const int n = h.vertex_count();
  const int k = n - 1;  // density coordinates with vertex 0 pinned to 0

  struct Constraint {
    std::vector<double> a;
    double b;
  };
  std::vector<Constraint> cons;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      Constraint c;
      c.a.assign(k, 0.0);
      if (u > 0) c.a[u - 1] += 1.0;
      if (v > 0) c.a[v - 1] -= 1.0;
      c.b = h.distance(u, v);
      cons.push_back(std::move(c));
    }

  auto feasible = [&](const std::vector<double>& xi) {
    for (const auto& c : cons) {
      double lhs = 0.0;
      for (int i = 0; i < k; ++i) lhs += c.a[i] * xi[i];
      if (lhs > c.b + 1e-9) return false;
    }
    return true;
  };

  // Vertex enumeration by solving all k-subsets of tight constraints.
  std::vector<std::vector<double>> vertices;
  std::map<std::vector<long long>, bool> seen;
  std::vector<int> pick(k);
  auto push_vertex = [&](const std::vector<double>& xi) {
    std::vector<long long> key(k);
    for (int i = 0; i < k; ++i) key[i] = std::llround(xi[i] * 1e9);
    if (seen.emplace(std::move(key), true).second) vertices.push_back(xi);
  };
  auto solve_subset = [&](const std::vector<int>& rows_idx) {
    std::vector<double> mat(static_cast<std::size_t>(k) * (k + 1));
    for (int r = 0; r < k; ++r) {
      const auto& c = cons[rows_idx[r]];
      for (int i = 0; i < k; ++i) mat[r * (k + 1) + i] = c.a[i];
      mat[r * (k + 1) + k] = c.b;
    }
    for (int col = 0; col < k; ++col) {
      int pivot = -1;
      double mag = 1e-9;
      for (int r = col; r < k; ++r)
        if (std::fabs(mat[r * (k + 1) + col]) > mag) {
          mag = std::fabs(mat[r * (k + 1) + col]);
          pivot = r;
        }
      if (pivot < 0) return;
      for (int i = 0; i <= k; ++i) std::swap(mat[col * (k + 1) + i], mat[pivot * (k + 1) + i]);
      for (int r = 0; r < k; ++r) {
        if (r == col) continue;
        double factor = mat[r * (k + 1) + col] / mat[col * (k + 1) + col];
        for (int i = 0; i <= k; ++i) mat[r * (k + 1) + i] -= factor * mat[col * (k + 1) + i];
      }
    }
    std::vector<double> xi(k);
    for (int i = 0; i < k; ++i) xi[i] = mat[i * (k + 1) + k] / mat[i * (k + 1) + i];
    if (feasible(xi)) push_vertex(xi);
  };
  auto recurse = [&](auto&& self, int start, int depth) -> void {
    if (depth == k) {
      solve_subset(pick);
      return;
    }
    for (int i = start; i < static_cast<int>(cons.size()); ++i) {
      pick[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  recurse(recurse, 0, 0);

  auto expand = [&](const std::vector<double>& xi) {
    Vec dens(n, 0.0);
    for (int i = 0; i < k; ++i) dens[i + 1] = xi[i];
    return dens;
  };

  double best = -std::numeric_limits<double>::infinity();
  Vec rolling;  // warm start chained through the deterministic sweep order
  auto evaluate = [&](const Vec& dens) {
    Vec f = h.raw_from_density(dens);
    ProxResult pr = resolvent(h, f, lambda, -1.0, rolling.empty() ? nullptr : &rolling);
    double value = pr.minimizer[x] / h.degree(x) - pr.minimizer[y] / h.degree(y);
    best = std::max(best, value);
    rolling = std::move(pr.minimizer);
    return value;
  };

  for (const auto& xi : vertices) evaluate(expand(xi));
  for (int z = 0; z < n; ++z) {
    Vec dz(n), mz(n);
    for (int v = 0; v < n; ++v) {
      double d = h.distance(z, v) - h.distance(z, 0);
      dz[v] = d;
      mz[v] = -d;
    }
    evaluate(dz);
    evaluate(mz);
  }

  // Dense grid of pairwise convex combinations of polytope vertices; the
  // division count shrinks when the vertex count would blow the budget.
  int div = std::max(2, cfg.grid_divisions);
  const std::size_t vpairs = vertices.size() * (vertices.size() + 1) / 2;
  while (div > 2 && vpairs * static_cast<std::size_t>(div - 1) > 20000) --div;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      for (int t = 1; t < div; ++t) {
        double w = static_cast<double>(t) / div;
        Vec dens(n, 0.0);
        for (int c = 0; c < k; ++c) dens[c + 1] = (1.0 - w) * vertices[i][c] + w * vertices[j][c];
        evaluate(dens);
      }

  // Random-direction ascent multistarts.
  const double diam = static_cast<double>(h.diameter());
  detail::Rng rng(detail::splitmix64(cfg.seed ^ 0x6f6b64ULL));
  for (int start = 0; start < cfg.multistarts; ++start) {
    Vec dens(n);
    for (int v = 0; v < n; ++v) dens[v] = rng.uniform(-diam, diam);
    dens = detail::project_to_lipschitz(h, std::move(dens));
    double cur = evaluate(dens);
    Vec warm = rolling;
    double step = 0.25;
    for (int it = 0; it < 30; ++it) {
      Vec dir(n, 0.0);
      for (int v = 1; v < n; ++v) dir[v] = rng.uniform(-1.0, 1.0);
      bool moved = false;
      for (double sgn : {1.0, -1.0}) {
        Vec cand = dens;
        for (int v = 1; v < n; ++v) cand[v] += sgn * step * dir[v];
        cand = detail::project_to_lipschitz(h, std::move(cand));
        Vec f = h.raw_from_density(cand);
        ProxResult pr = resolvent(h, f, lambda, -1.0, &warm);
        double value = pr.minimizer[x] / h.degree(x) - pr.minimizer[y] / h.degree(y);
        if (value > cur + 1e-12) {
          cur = value;
          dens = std::move(cand);
          warm = pr.minimizer;
          moved = true;
          break;
        }
      }
      if (!moved) {
        step /= 2.0;
        if (step < 1e-4) break;
      }
    }
    best = std::max(best, cur);
  }
  return best;
}

}  // namespace hyperricci
