#include "hyperricci/resolvent.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <utility>

#include "hyperricci/detail/numeric.hpp"

namespace hyperricci {

double default_prox_tolerance(const Hypergraph& h, const Vec& raw) {
  return 1e-9 * (1.0 + h.norm(raw));
}

namespace {

double prox_objective(const Hypergraph& h, const Vec& f, const Vec& g, double lambda) {
  Vec diff(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) diff[i] = f[i] - g[i];
  double quad = h.inner(diff, diff);
  return quad / (2.0 * lambda) + energy(h, g);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Tie pattern of g~ at tolerance tau: vertices merged within each edge's
// near-argmax and near-argmin groups (the whole edge when its gap is below
// tau), plus the surviving per-edge (max class, min class) terms.
struct TiePattern {
  std::vector<int> cls;  // per-vertex class id, 0..classes-1
  int classes = 0;
  std::vector<std::array<int, 2>> edge_terms;  // (max class, min class)
  std::vector<double> edge_weight;

  bool operator==(const TiePattern& o) const {
    return cls == o.cls && edge_terms == o.edge_terms;
  }
};

TiePattern build_pattern(const Hypergraph& h, const Vec& dens, double tau) {
  const int n = h.vertex_count();
  UnionFind uf(n);
  std::vector<int> arg_mx(h.edge_count()), arg_mn(h.edge_count());
  for (int ei = 0; ei < h.edge_count(); ++ei) {
    const auto& e = h.edges()[ei];
    int vmx = e.members[0], vmn = e.members[0];
    for (int v : e.members) {
      if (dens[v] > dens[vmx]) vmx = v;
      if (dens[v] < dens[vmn]) vmn = v;
    }
    arg_mx[ei] = vmx;
    arg_mn[ei] = vmn;
    if (dens[vmx] - dens[vmn] <= tau) {
      for (int v : e.members) uf.unite(v, vmx);
    } else {
      for (int v : e.members) {
        if (dens[v] >= dens[vmx] - tau) uf.unite(v, vmx);
        if (dens[v] <= dens[vmn] + tau) uf.unite(v, vmn);
      }
    }
  }
  TiePattern p;
  p.cls.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    int root = uf.find(v);
    if (p.cls[root] == -1) p.cls[root] = p.classes++;
    p.cls[v] = p.cls[root];
  }
  for (int ei = 0; ei < h.edge_count(); ++ei) {
    int a = p.cls[arg_mx[ei]], b = p.cls[arg_mn[ei]];
    if (a == b) continue;
    p.edge_terms.push_back({a, b});
    p.edge_weight.push_back(h.edges()[ei].weight);
  }
  return p;
}

// Exact minimizer of the prox objective restricted to the pattern's tie
// subspace with the face terms pinned: a small SPD solve in the class
// variables z, mapped back through g = D z.
Vec prox_on_pattern(const Hypergraph& h, const Vec& f, double lambda, const TiePattern& p) {
  const int r = p.classes;
  std::vector<double> a(static_cast<std::size_t>(r) * r, 0.0);
  std::vector<double> rhs(r, 0.0);
  for (int v = 0; v < h.vertex_count(); ++v) {
    int c = p.cls[v];
    a[static_cast<std::size_t>(c) * r + c] += h.degree(v) / lambda;
    rhs[c] += f[v] / lambda;
  }
  for (std::size_t t = 0; t < p.edge_terms.size(); ++t) {
    int cu = p.edge_terms[t][0], cv = p.edge_terms[t][1];
    double w = p.edge_weight[t];
    a[static_cast<std::size_t>(cu) * r + cu] += w;
    a[static_cast<std::size_t>(cv) * r + cv] += w;
    a[static_cast<std::size_t>(cu) * r + cv] -= w;
    a[static_cast<std::size_t>(cv) * r + cu] -= w;
  }
  std::vector<double> z = detail::cholesky_solve(std::move(a), std::move(rhs), r);
  Vec g(h.vertex_count());
  for (int v = 0; v < h.vertex_count(); ++v) g[v] = h.degree(v) * z[p.cls[v]];
  return g;
}

// Per-edge (max class, min class) terms for an explicit class assignment.
// Ties in the density are broken by the unmatched certificate direction:
// vertices it pushes up count as higher.
TiePattern rebuild_terms(const Hypergraph& h, const Vec& dens, const Vec& excess, TiePattern p) {
  p.edge_terms.clear();
  p.edge_weight.clear();
  auto higher = [&](int a, int b) {
    if (dens[a] != dens[b]) return dens[a] > dens[b];
    return excess[a] > excess[b];
  };
  for (int ei = 0; ei < h.edge_count(); ++ei) {
    const auto& e = h.edges()[ei];
    int vmx = e.members[0], vmn = e.members[0];
    for (int v : e.members) {
      if (higher(v, vmx)) vmx = v;
      if (higher(vmn, v)) vmn = v;
    }
    int a = p.cls[vmx], b = p.cls[vmn];
    if (a == b) continue;
    p.edge_terms.push_back({a, b});
    p.edge_weight.push_back(e.weight);
  }
  return p;
}

}  // namespace

ProxResult resolvent(const Hypergraph& h, const Vec& f_raw, double lambda, double tol,
                     const Vec* warm) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  h.require_size(f_raw);
  if (tol <= 0.0) tol = default_prox_tolerance(h, f_raw);

  const int n = h.vertex_count();
  Vec g = warm ? *warm : f_raw;
  h.require_size(g);
#ifdef HRC_DEBUG_POLISH
  Vec debug_start = g;
#endif

  double best_obj = prox_objective(h, f_raw, g, lambda);
  Vec best = g;
  long iterations = 0;

  // Edges whose gap sits below the tie tolerance are dropped from the face
  // polytope (their contribution set contains 0), which shrinks it by at
  // most sum w_e gap_e ||b_e||; the certificate carries that slack.
  struct Certificate {
    double residual;
    bool ok;
    Vec excess;  // v - projection, the unmatched part of the optimality test
  };
  auto certify = [&](const Vec& cand) -> Certificate {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (f_raw[i] - cand[i]) / lambda;
    double tie = default_tie_tolerance(h, cand);
    auto faces = active_faces(h, cand, tie);
    auto sol = detail::min_norm_over_faces(h, faces, tie, v, std::max(tol / 4.0, 1e-12), 100000,
                                           detail::density_scale(h, cand));
    Vec excess(n);
    for (int i = 0; i < n; ++i) excess[i] = v[i] - sol.point[i];
    double resid = h.norm(excess);
    double slack = 0.0;
    for (const auto& face : faces) {
      if (face.gap > tie || face.gap <= 0.0) continue;
      const auto& e = h.edges()[face.edge];
      double worst = 0.0;
      for (int u : e.members)
        for (int w : e.members)
          if (u != w) worst = std::max(worst, 1.0 / h.degree(u) + 1.0 / h.degree(w));
      slack += e.weight * face.gap * std::sqrt(worst);
    }
    return {resid, resid <= tol + slack, std::move(excess)};
  };

  // Quadratic polish: a worklist search over tie patterns seeded by a
  // grouping-tolerance ladder on the incumbent, expanded by re-running the
  // ladder on every failed candidate (merging) and by splitting classes
  // along the sign of the certificate's unmatched direction. The residual
  // certificate decides acceptance.
  auto accept = [&](Vec cand, double obj) {
    best = std::move(cand);
    best_obj = obj;
  };
  auto try_polish = [&]() -> bool {
    std::vector<TiePattern> queue;
    std::vector<TiePattern> seen;
    auto enqueue_ladder = [&](const Vec& dens) {
      double scale = 1.0;
      for (double x : dens) scale = std::max(scale, std::fabs(x));
      for (double tau_rel = 1e-13; tau_rel < 2e-2; tau_rel *= 10.0)
        queue.push_back(build_pattern(h, dens, tau_rel * scale));
    };
    enqueue_ladder(h.density(best));
    int budget = 64;
    for (std::size_t qi = 0; qi < queue.size() && budget > 0; ++qi) {
      TiePattern pat = queue[qi];
      bool dup = false;
      for (const auto& q : seen) dup = dup || (q == pat);
      if (dup) continue;
      seen.push_back(pat);
      --budget;

      Vec cand = prox_on_pattern(h, f_raw, lambda, pat);
      double obj = prox_objective(h, f_raw, cand, lambda);
      Certificate cert = certify(cand);
#ifdef HRC_DEBUG_POLISH
      std::fprintf(stderr, "[polish] classes=%d obj=%.12g resid=%.3e ok=%d cls=", pat.classes,
                   obj, cert.residual, (int)cert.ok);
      for (int dv = 0; dv < n; ++dv) std::fprintf(stderr, "%d", pat.cls[dv]);
      std::fprintf(stderr, "\n");
#endif
      if (cert.ok) {
        accept(std::move(cand), obj);
        return true;
      }
      if (obj < best_obj) {
        best_obj = obj;
        best = cand;
      }
      Vec cdens = h.density(cand);
      enqueue_ladder(cdens);
      double top = 0.0;
      for (double x : cert.excess) top = std::max(top, std::fabs(x));
      if (top > 0.0) {
        TiePattern split;
        split.cls.assign(n, -1);
        std::map<std::pair<int, int>, int> relabel;
        for (int v = 0; v < n; ++v) {
          int sign = cert.excess[v] > 0.1 * top ? 1 : (cert.excess[v] < -0.1 * top ? -1 : 0);
          auto key = std::make_pair(pat.cls[v], sign);
          auto [it, fresh] = relabel.emplace(key, split.classes);
          if (fresh) ++split.classes;
          split.cls[v] = it->second;
        }
        queue.push_back(rebuild_terms(h, cdens, cert.excess, std::move(split)));
      }
    }
    return false;
  };

  if (try_polish()) {
    Certificate cert = certify(best);
    return {f_raw, lambda, best, prox_objective(h, f_raw, best, lambda), cert.residual,
            iterations};
  }

  // First-order phase: steepest descent using the minimum-norm subgradient
  // (the certificate machinery provides it) with Armijo backtracking.
  const long cap = 20000;
  int stalls = 0;
  g = best;
  double obj = best_obj;
  while (iterations < cap) {
    ++iterations;
    double tie = default_tie_tolerance(h, g);
    auto faces = active_faces(h, g, tie);
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = -(g[i] - f_raw[i]) / lambda;
    auto sol = detail::min_norm_over_faces(h, faces, tie, v, 1e-8, 100000, detail::density_scale(h, g));
    Vec dir(n);
    for (int i = 0; i < n; ++i) dir[i] = v[i] - sol.point[i];
    double gnorm2 = h.inner(dir, dir);
    if (gnorm2 <= 1e-30) {
      best = g;
      best_obj = std::min(best_obj, obj);
      try_polish();
      break;
    }
    double step = lambda;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      Vec cand(n);
      for (int i = 0; i < n; ++i) cand[i] = g[i] + step * dir[i];
      double cobj = prox_objective(h, f_raw, cand, lambda);
      if (cobj <= obj - 0.25 * step * gnorm2) {
        g = std::move(cand);
        obj = cobj;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (obj < best_obj) {
      best_obj = obj;
      best = g;
    }
    if (!moved || iterations % 10 == 0) {
      if (try_polish()) break;
      if (!moved) {
        g = best;
        obj = best_obj;
        if (++stalls >= 50) break;
      } else {
        stalls = 0;
      }
    }
  }

  Certificate cert = certify(best);
  if (!cert.ok) {
    char msg[900];
    int off = std::snprintf(msg, sizeof(msg),
                  "resolvent did not certify: residual %.3e above tolerance %.3e after %ld steps lambda=%.17g f=[",
                  cert.residual, tol, iterations, lambda);
    for (int i = 0; i < n && off < 700; ++i)
      off += std::snprintf(msg + off, sizeof(msg) - off, "%.17g,", f_raw[i]);
#ifdef HRC_DEBUG_POLISH
    off += std::snprintf(msg + off, sizeof(msg) - off, "] warm=[");
    for (int i = 0; i < n && off < 860; ++i)
      off += std::snprintf(msg + off, sizeof(msg) - off, "%.17g,", debug_start[i]);
#endif
    std::snprintf(msg + off, sizeof(msg) - off, "]");
    throw SolverError(msg);
  }
  return {f_raw, lambda, best, prox_objective(h, f_raw, best, lambda), cert.residual, iterations};
}

ProxResult resolvent(const Hypergraph& h, const VertexFunction& f, double lambda, double tol) {
  return resolvent(h, raw_values(h, f), lambda, tol);
}

double resolvent_residual(const Hypergraph& h, const Vec& f_raw, const Vec& g_raw, double lambda,
                          double fw_tol) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  h.require_size(f_raw);
  h.require_size(g_raw);
  Vec v(f_raw.size());
  for (std::size_t i = 0; i < f_raw.size(); ++i) v[i] = (f_raw[i] - g_raw[i]) / lambda;
  return subdifferential_distance(h, g_raw, v, fw_tol);
}

double resolvent_residual(const Hypergraph& h, const VertexFunction& f, const VertexFunction& g,
                          double lambda, double fw_tol) {
  return resolvent_residual(h, raw_values(h, f), raw_values(h, g), lambda, fw_tol);
}

}  // namespace hyperricci
