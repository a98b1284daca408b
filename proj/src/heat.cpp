#include "hyperricci/heat.hpp"

#include <cmath>

#include "hyperricci/laplacian.hpp"
#include "hyperricci/resolvent.hpp"

namespace hyperricci {

namespace {

constexpr double kFlowSolveTol = 1e-7;
constexpr double kEnergyIncreaseGuard = 1e-8;

// One explicit Euler advance by dt, halving recursively when the energy
// guard trips (explicit steps can overshoot at face boundaries).
void euler_advance(const Hypergraph& h, Vec& u, double dt, int depth) {
  if (dt <= 0.0) return;
  Vec l0 = canonical_laplacian(h, u, kFlowSolveTol).value;
  Vec next(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) next[i] = u[i] - dt * l0[i];
  if (energy(h, next) > energy(h, u) + kEnergyIncreaseGuard) {
    if (depth >= 48) throw SolverError("euler step rejected below minimal step size");
    euler_advance(h, u, dt / 2.0, depth + 1);
    euler_advance(h, u, dt / 2.0, depth + 1);
    return;
  }
  u = std::move(next);
}

}  // namespace

FlowTrajectory heat_flow_euler(const Hypergraph& h, const Vec& f_raw, double t, int steps) {
  if (steps < 1) throw ValidationError("steps must be >= 1");
  if (t < 0.0) throw ValidationError("time must be nonnegative");
  h.require_size(f_raw);
  FlowTrajectory traj;
  traj.method = FlowMethod::euler;
  traj.initial = f_raw;
  traj.step = t / steps;
  traj.times.push_back(0.0);
  traj.states.push_back(f_raw);
  Vec u = f_raw;
  for (int k = 1; k <= steps; ++k) {
    euler_advance(h, u, traj.step, 0);
    traj.times.push_back(t * k / steps);
    traj.states.push_back(u);
  }
  return traj;
}

FlowTrajectory heat_flow_euler(const Hypergraph& h, const VertexFunction& f, double t, int steps) {
  return heat_flow_euler(h, raw_values(h, f), t, steps);
}

FlowTrajectory heat_flow_resolvent(const Hypergraph& h, const Vec& f_raw, double t, int n) {
  if (n < 1) throw ValidationError("resolvent steps must be >= 1");
  if (t < 0.0) throw ValidationError("time must be nonnegative");
  h.require_size(f_raw);
  FlowTrajectory traj;
  traj.method = FlowMethod::resolvent;
  traj.initial = f_raw;
  traj.step = t / n;
  traj.times.push_back(0.0);
  traj.states.push_back(f_raw);
  Vec u = f_raw;
  for (int k = 1; k <= n; ++k) {
    if (traj.step > 0.0) u = resolvent(h, u, traj.step, -1.0, &u).minimizer;
    traj.times.push_back(t * k / n);
    traj.states.push_back(u);
  }
  return traj;
}

FlowTrajectory heat_flow_resolvent(const Hypergraph& h, const VertexFunction& f, double t, int n) {
  return heat_flow_resolvent(h, raw_values(h, f), t, n);
}

Vec equilibrium(const Hypergraph& h, const Vec& f_raw) {
  if (!h.connected())
    throw ValidationError("equilibrium undefined on a disconnected hypergraph");
  h.require_size(f_raw);
  double mass = 0.0;
  for (double x : f_raw) mass += x;
  double c = mass / h.volume();
  Vec out(h.degrees());
  for (double& x : out) x *= c;
  return out;
}

Vec equilibrium(const Hypergraph& h, const VertexFunction& f) {
  return equilibrium(h, raw_values(h, f));
}

}  // namespace hyperricci
