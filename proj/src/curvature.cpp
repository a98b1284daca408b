#include "hyperricci/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "hyperricci/detail/numeric.hpp"
#include "hyperricci/laplacian.hpp"
#include "hyperricci/resolvent.hpp"

namespace hyperricci {

namespace detail {

Vec project_to_lipschitz(const Hypergraph& h, Vec dens) {
  const int n = h.vertex_count();
  struct Constraint {
    int u, v, d;
  };
  static thread_local std::vector<Constraint> cons;
  cons.clear();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      int d = h.distance(u, v);
      if (d != Hypergraph::kUnreachable) cons.push_back({u, v, d});
    }

  // Dykstra sweeps over the difference half-spaces, then an exact
  // 1-Lipschitz retraction and re-pinning at vertex 0.
  std::vector<double> corr(cons.size(), 0.0);
  for (int sweep = 0; sweep < 12; ++sweep) {
    double moved = 0.0;
    for (std::size_t k = 0; k < cons.size(); ++k) {
      const auto& c = cons[k];
      dens[c.u] += corr[k];
      dens[c.v] -= corr[k];
      double viol = dens[c.u] - dens[c.v] - c.d;
      double shift = viol > 0.0 ? viol / 2.0 : 0.0;
      corr[k] = shift;
      dens[c.u] -= shift;
      dens[c.v] += shift;
      moved += std::fabs(shift);
    }
    if (moved < 1e-14) break;
  }

  Vec out(n);
  for (int u = 0; u < n; ++u) {
    double best = dens[u];
    for (int v = 0; v < n; ++v) {
      int d = h.distance(u, v);
      if (d == Hypergraph::kUnreachable) continue;
      best = std::min(best, dens[v] + d);
    }
    out[u] = best;
  }
  double base = out[0];
  for (double& x : out) x -= base;
  return out;
}

}  // namespace detail

namespace {

void validate_pair(const Hypergraph& h, int x, int y) {
  if (x < 0 || x >= h.vertex_count() || y < 0 || y >= h.vertex_count())
    throw ValidationError("vertex index out of range");
  if (x == y) throw ValidationError("pair must consist of distinct vertices");
  if (h.distance(x, y) == Hypergraph::kUnreachable)
    throw ValidationError("pair ('" + h.vertex_name(x) + "', '" + h.vertex_name(y) +
                          "') is at infinite distance");
}

// Objective f -> <J_lambda f, delta_x - delta_y> on density coordinates,
// with a warm-started resolvent per evaluation.
struct KdObjective {
  const Hypergraph& h;
  int x, y;
  double lambda;

  struct Eval {
    double value;
    Vec minimizer;
  };

  Eval operator()(const Vec& dens, const Vec* warm) const {
    Vec f = h.raw_from_density(dens);
    ProxResult pr = resolvent(h, f, lambda, -1.0, warm);
    double value =
        pr.minimizer[x] / h.degree(x) - pr.minimizer[y] / h.degree(y);
    return {value, std::move(pr.minimizer)};
  }
};

struct AscentResult {
  Vec dens;
  double value;
  Vec minimizer;
};

// Projected coordinate ascent with forward-difference slope estimates.
AscentResult ascend_kd(const Hypergraph& h, const KdObjective& obj, Vec dens, int iterations,
                       double fd_step) {
  dens = detail::project_to_lipschitz(h, std::move(dens));
  auto base = obj(dens, nullptr);
  double alpha = 0.5;
  const int n = h.vertex_count();
  Vec slope(n, 0.0);
  for (int it = 0; it < iterations; ++it) {
    double slope_max = 0.0;
    for (int i = 1; i < n; ++i) {
      Vec probe = dens;
      probe[i] += fd_step;
      probe = detail::project_to_lipschitz(h, std::move(probe));
      double v = obj(probe, &base.minimizer).value;
      slope[i] = (v - base.value) / fd_step;
      slope_max = std::max(slope_max, std::fabs(slope[i]));
    }
    if (slope_max < 1e-12) break;

    bool improved = false;
    for (double a : {alpha, alpha / 4.0, alpha / 16.0}) {
      Vec cand = dens;
      for (int i = 1; i < n; ++i) cand[i] += a * slope[i] / slope_max;
      cand = detail::project_to_lipschitz(h, std::move(cand));
      auto ev = obj(cand, &base.minimizer);
      if (ev.value > base.value + 1e-12) {
        dens = std::move(cand);
        base = std::move(ev);
        alpha = std::min(1.0, a * 2.0);
        improved = true;
        break;
      }
    }
    if (!improved) {
      alpha /= 8.0;
      if (alpha < 1e-5) break;
    }
  }
  return {std::move(dens), base.value, std::move(base.minimizer)};
}

std::vector<Vec> candidate_densities(const Hypergraph& h, const MultistartOptions& opts) {
  auto samples = lipschitz_vertex_samples(h, opts.seed, opts.count);
  std::vector<Vec> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(density_values(h, s));
  return out;
}

}  // namespace

KDResult kantorovich_difference(const Hypergraph& h, int x, int y, double lambda,
                                const MultistartOptions& opts) {
  validate_pair(h, x, y);
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (!h.connected())
    throw ValidationError("Kantorovich difference needs a connected hypergraph");

  KdObjective obj{h, x, y, lambda};
  auto candidates = candidate_densities(h, opts);

  KDResult best;
  best.x = x;
  best.y = y;
  best.lambda = lambda;
  best.value = -std::numeric_limits<double>::infinity();
  best.candidate_count = static_cast<int>(candidates.size());
  best.seed = opts.seed;

  for (const auto& dens : candidates) {
    double fd = opts.fd_step_scale * (1.0 + h.norm(h.raw_from_density(dens)));
    AscentResult res = ascend_kd(h, obj, dens, opts.ascent_iterations, fd);
    if (res.value > best.value) {
      best.value = res.value;
      best.witness = VertexFunction::raw(h.raw_from_density(res.dens));
    }
  }
  return best;
}

double kappa_lambda(const Hypergraph& h, int x, int y, double lambda,
                    const MultistartOptions& opts) {
  KDResult kd = kantorovich_difference(h, x, y, lambda, opts);
  return 1.0 - kd.value / h.distance(x, y);
}

CBoundResult curvature_upper_bound_C(const Hypergraph& h, int x, int y,
                                     const MultistartOptions& opts) {
  validate_pair(h, x, y);
  if (!h.connected()) throw ValidationError("curvature bound needs a connected hypergraph");
  const double d = h.distance(x, y);

  CBoundResult out;
  out.unit_normalized = std::numeric_limits<double>::infinity();
  out.distance_normalized = std::numeric_limits<double>::infinity();

  auto pairing = [&](const Vec& raw) {
    Vec l0 = canonical_laplacian(h, raw, 1e-7).value;
    return l0[x] / h.degree(x) - l0[y] / h.degree(y);
  };
  // For a candidate with spread s = f~(x) - f~(y) >= target, the rescaled
  // function (target/s) f stays 1-Lipschitz, meets the normalization
  // exactly and scales the pairing linearly.
  auto consider = [&](const Vec& dens) {
    double s = dens[x] - dens[y];
    if (s < 1e-12) return;
    double p = pairing(h.raw_from_density(dens));
    for (int variant = 0; variant < 2; ++variant) {
      double target = variant == 0 ? 1.0 : d;
      double tau = target / s;
      if (tau > 1.0 + 1e-12) continue;
      double value = tau * p;
      if (variant == 0) {
        out.unit_feasible = true;
        out.unit_normalized = std::min(out.unit_normalized, value / d);
      } else {
        out.distance_feasible = true;
        out.distance_normalized = std::min(out.distance_normalized, value / d);
      }
    }
  };

  auto candidates = candidate_densities(h, opts);
  for (const auto& dens : candidates) consider(dens);

  // Multistart projected descent on the spread-constrained slice, probing
  // coordinates and keeping feasible rescaled evaluations.
  std::vector<std::pair<double, Vec>> starts;
  for (const auto& dens : candidates) {
    double s = dens[x] - dens[y];
    if (s >= 1.0 - 1e-12) starts.push_back({dens[x] - dens[y], dens});
  }
  std::stable_sort(starts.begin(), starts.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  if (starts.size() > 8) starts.resize(8);
  const int n = h.vertex_count();
  for (auto& entry : starts) {
    Vec& dens = entry.second;
    double step = 0.05;
    double value = pairing(h.raw_from_density(dens));
    for (int it = 0; it < 20; ++it) {
      bool improved = false;
      for (int i = 1; i < n; ++i) {
        for (double sgn : {1.0, -1.0}) {
          Vec cand = dens;
          cand[i] += sgn * step;
          cand = detail::project_to_lipschitz(h, std::move(cand));
          if (cand[x] - cand[y] < 1e-12) continue;
          double v = pairing(h.raw_from_density(cand));
          // Compare on the distance-normalized scale.
          double cur = value * (d / (dens[x] - dens[y]));
          double nxt = v * (d / (cand[x] - cand[y]));
          if (nxt < cur - 1e-12) {
            dens = std::move(cand);
            value = v;
            improved = true;
          }
        }
      }
      if (!improved) {
        step /= 4.0;
        if (step < 1e-4) break;
      }
      consider(dens);
    }
    consider(dens);
  }
  return out;
}

std::vector<double> default_lambda_schedule() {
  std::vector<double> out;
  double lambda = 0.1;
  for (int k = 0; k < 8; ++k) {
    out.push_back(lambda);
    lambda /= 2.0;
  }
  return out;
}

CurvatureEstimate coarse_curvature(const Hypergraph& h, int x, int y,
                                   const std::vector<double>& schedule,
                                   const MultistartOptions& opts) {
  validate_pair(h, x, y);
  if (schedule.empty()) throw ValidationError("empty lambda schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0.0)) throw ValidationError("schedule entries must be positive");
    if (i > 0 && schedule[i] >= schedule[i - 1])
      throw ValidationError("schedule must be strictly decreasing");
  }

  CurvatureEstimate est;
  est.x = x;
  est.y = y;
  est.dist = h.distance(x, y);
  est.seed = opts.seed;

  for (double lambda : schedule) {
    KDResult kd = kantorovich_difference(h, x, y, lambda, opts);
    CurvatureRow row;
    row.lambda = lambda;
    row.kappa = 1.0 - kd.value / est.dist;
    row.ratio = row.kappa / lambda;
    est.table.push_back(row);
  }

  // Tail ratios plus the intercept of an affine fit of ratio against
  // lambda over the last (up to) four rows.
  const std::size_t rows = est.table.size();
  const std::size_t fit = std::min<std::size_t>(4, rows);
  double sl = 0.0, sr = 0.0, sll = 0.0, slr = 0.0;
  for (std::size_t i = rows - fit; i < rows; ++i) {
    sl += est.table[i].lambda;
    sr += est.table[i].ratio;
    sll += est.table[i].lambda * est.table[i].lambda;
    slr += est.table[i].lambda * est.table[i].ratio;
  }
  double denom = fit * sll - sl * sl;
  est.fit_intercept = denom > 1e-300 ? (sr * sll - sl * slr) / denom : sr / fit;

  double lo = est.fit_intercept, hi = est.fit_intercept;
  const std::size_t tail = std::min<std::size_t>(3, rows);
  for (std::size_t i = rows - tail; i < rows; ++i) {
    lo = std::min(lo, est.table[i].ratio);
    hi = std::max(hi, est.table[i].ratio);
  }
  est.kappa_lower = lo;
  est.kappa_upper = hi;
  est.interval_width = hi - lo;
  est.c_bound = curvature_upper_bound_C(h, x, y, opts);
  return est;
}

std::vector<CurvatureEstimate> curvature_matrix(const Hypergraph& h,
                                                const std::vector<double>& schedule,
                                                const MultistartOptions& opts) {
  if (!h.connected()) throw ValidationError("curvature matrix needs a connected hypergraph");
  const int n = h.vertex_count();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});

  std::vector<CurvatureEstimate> out(pairs.size());
  std::vector<std::future<CurvatureEstimate>> tasks;
  tasks.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    MultistartOptions pair_opts = opts;
    pair_opts.seed = detail::splitmix64(opts.seed ^ (0x500 + k));
    tasks.push_back(std::async(std::launch::async, [&h, &schedule, pair_opts, k, &pairs] {
      return coarse_curvature(h, pairs[k].first, pairs[k].second, schedule, pair_opts);
    }));
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) out[k] = tasks[k].get();
  return out;
}

}  // namespace hyperricci
