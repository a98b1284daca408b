#pragma once

#include <vector>

#include "hyperricci/hypergraph.hpp"

namespace hyperricci {

enum class FlowMethod { euler, resolvent };

struct FlowTrajectory {
  Vec initial;
  std::vector<double> times;
  std::vector<Vec> states;  // states[i] at times[i]; states[0] = initial
  FlowMethod method = FlowMethod::resolvent;
  double step = 0.0;

  const Vec& final_state() const { return states.back(); }
};

// Forward Euler u_{k+1} = u_k - (t/steps) L0 u_k, recorded on the uniform
// grid. A step that increases E by more than 1e-8 is retried at half size.
FlowTrajectory heat_flow_euler(const Hypergraph& h, const Vec& f_raw, double t, int steps);
FlowTrajectory heat_flow_euler(const Hypergraph& h, const VertexFunction& f, double t, int steps);

// Iterated resolvent h_t f ~ (J_{t/n})^n f.
FlowTrajectory heat_flow_resolvent(const Hypergraph& h, const Vec& f_raw, double t, int n);
FlowTrajectory heat_flow_resolvent(const Hypergraph& h, const VertexFunction& f, double t, int n);

// Long-time limit c D1 with c = (sum_x f(x)) / (sum_x d_x); requires a
// connected hypergraph.
Vec equilibrium(const Hypergraph& h, const Vec& f_raw);
Vec equilibrium(const Hypergraph& h, const VertexFunction& f);

}  // namespace hyperricci
