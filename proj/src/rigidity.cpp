#include "hyperricci/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "hyperricci/detail/numeric.hpp"
#include "hyperricci/laplacian.hpp"

namespace hyperricci {

int diameter(const Hypergraph& h) { return h.diameter(); }

BonnetMyersResult bonnet_myers_check(const Hypergraph& h, double K) {
  if (!(K > 0.0)) throw ValidationError("K must be positive");
  BonnetMyersResult out;
  out.diameter = h.diameter();
  out.bound = 2.0 / K;
  out.satisfied = out.diameter <= out.bound + 1e-12;
  out.maximal = std::fabs(out.diameter - out.bound) <= 1e-12;
  return out;
}

VertexFunction excess(const Hypergraph& h, int p, int q, double K) {
  if (!(K > 0.0)) throw ValidationError("K must be positive");
  const double L = 2.0 / K;
  int d = h.distance(p, q);
  if (d == Hypergraph::kUnreachable || std::fabs(d - L) > 1e-9)
    throw ValidationError("('" + h.vertex_name(p) + "', '" + h.vertex_name(q) +
                          "') is not a maximal pair: d = " + std::to_string(d) +
                          ", 2/K = " + std::to_string(L));
  Vec out(h.vertex_count());
  for (int v = 0; v < h.vertex_count(); ++v) {
    int dp = h.distance(p, v);
    int dq = h.distance(v, q);
    if (dp == Hypergraph::kUnreachable || dq == Hypergraph::kUnreachable)
      throw ValidationError("excess undefined: vertex '" + h.vertex_name(v) + "' unreachable");
    out[v] = h.degree(v) * (dp + dq - L);
  }
  return VertexFunction::raw(std::move(out));
}

EigenCheck eigenfunction_check(const Hypergraph& h, int pole, double K, double tol) {
  if (!(K > 0.0)) throw ValidationError("K must be positive");
  EigenCheck out;
  out.pole = pole;
  out.K = K;
  Vec g = h.rho(pole);
  for (int v = 0; v < h.vertex_count(); ++v) g[v] -= h.degree(v) / K;
  Vec l0 = canonical_laplacian(h, g, tol).value;
  Vec resid(h.vertex_count());
  for (int v = 0; v < h.vertex_count(); ++v) resid[v] = l0[v] - K * g[v];
  out.residual = h.norm(resid);
  out.function = std::move(g);
  return out;
}

RigidityReport maximal_diameter_rigidity(const Hypergraph& h, double K,
                                         const RigidityOptions& opts) {
  if (!h.connected()) throw ValidationError("rigidity analysis needs a connected hypergraph");
  BonnetMyersResult bm = bonnet_myers_check(h, K);
  RigidityReport report;
  report.K = K;
  report.diameter = bm.diameter;
  report.bound = bm.bound;
  report.satisfied = bm.satisfied;
  report.maximal = bm.maximal;
  if (!bm.maximal) return report;  // Bonnet-Myers-only report

  const int n = h.vertex_count();
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      if (h.distance(p, q) != bm.diameter) continue;
      DiametralPairReport pair;
      pair.p = p;
      pair.q = q;
      pair.excess = raw_values(h, excess(h, p, q, K));
      pair.coverage = true;
      for (int v = 0; v < n; ++v)
        if (pair.excess[v] > 1e-12) {
          pair.coverage = false;
          pair.violators.push_back(v);
        }
      Vec l0p = canonical_laplacian(h, h.rho(p), opts.solver_tol).value;
      Vec l0q = canonical_laplacian(h, h.rho(q), opts.solver_tol).value;
      pair.pairing_pq = l0p[q] / h.degree(q);
      pair.pairing_qp = l0q[p] / h.degree(p);
      pair.eigen_p = eigenfunction_check(h, p, K, opts.solver_tol);
      pair.eigen_q = eigenfunction_check(h, q, K, opts.solver_tol);
      report.pairs.push_back(std::move(pair));
    }

  if (!opts.curvature) return report;

  // Curvature along geodesics: for each diametral pair, every vertex pair
  // drawn from its geodesic vertices. The rigidity statement pins the value
  // only when both lie on one geodesic; other pairs are still computed but
  // labelled.
  struct Job {
    int p, q, x, y;
    bool common;
  };
  std::vector<Job> jobs;
  for (const auto& pair : report.pairs) {
    std::vector<int> on_geodesic;
    for (int v = 0; v < n; ++v)
      if (h.distance(pair.p, v) + h.distance(v, pair.q) == report.diameter)
        on_geodesic.push_back(v);
    for (std::size_t a = 0; a < on_geodesic.size(); ++a)
      for (std::size_t b = a + 1; b < on_geodesic.size(); ++b) {
        int x = on_geodesic[a], y = on_geodesic[b];
        bool common =
            h.distance(pair.p, x) + h.distance(x, y) + h.distance(y, pair.q) == report.diameter ||
            h.distance(pair.p, y) + h.distance(y, x) + h.distance(x, pair.q) == report.diameter;
        jobs.push_back({pair.p, pair.q, x, y, common});
      }
  }

  std::vector<std::future<CurvatureEstimate>> tasks;
  tasks.reserve(jobs.size());
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    MultistartOptions pair_opts = opts.multistart;
    pair_opts.seed = detail::splitmix64(opts.multistart.seed ^ (0x9d0 + k));
    tasks.push_back(std::async(std::launch::async, [&h, &opts, pair_opts, k, &jobs] {
      return coarse_curvature(h, jobs[k].x, jobs[k].y, opts.schedule, pair_opts);
    }));
  }
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    GeodesicPairCurvature gpc;
    gpc.p = jobs[k].p;
    gpc.q = jobs[k].q;
    gpc.x = jobs[k].x;
    gpc.y = jobs[k].y;
    gpc.common_geodesic = jobs[k].common;
    gpc.estimate = tasks[k].get();
    report.curvatures.push_back(std::move(gpc));
  }
  return report;
}

}  // namespace hyperricci
