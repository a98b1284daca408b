#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperricci/heat.hpp"
#include "hyperricci/laplacian.hpp"
#include "support/test_support.hpp"

using namespace hyperricci;

namespace {

double mass(const Vec& f) {
  double m = 0.0;
  for (double v : f) m += v;
  return m;
}

}  // namespace

TEST_CASE("constant densities are stationary for both methods") {
  Hypergraph h2 = make_h2();
  Vec f = h2.degree_vector();
  for (double& v : f) v *= 1.7;
  for (const auto& traj : {heat_flow_euler(h2, f, 0.5, 8), heat_flow_resolvent(h2, f, 0.5, 8)}) {
    for (const auto& state : traj.states)
      for (int v = 0; v < 4; ++v) CHECK(state[v] == doctest::Approx(f[v]).epsilon(1e-9));
  }
}

TEST_CASE("eigenfunction decay") {
  Hypergraph h2 = make_h2();
  Vec f{-1, 0, 0, 1};  // rho_p - D1: an eigenfunction with L0 f = f

  auto euler = heat_flow_euler(h2, f, 0.1, 1);
  REQUIRE(euler.states.size() == 2);
  CHECK(euler.final_state()[0] == doctest::Approx(-0.9).epsilon(1e-9));
  CHECK(euler.final_state()[3] == doctest::Approx(0.9).epsilon(1e-9));

  auto res = heat_flow_resolvent(h2, f, 0.1, 1);
  CHECK(res.final_state()[0] == doctest::Approx(-1.0 / 1.1).epsilon(1e-8));
  CHECK(res.final_state()[3] == doctest::Approx(1.0 / 1.1).epsilon(1e-8));
}

TEST_CASE("mass is conserved along trajectories") {
  Hypergraph h2 = make_h2();
  Vec rho_p = h2.rho(0);
  for (const auto& traj :
       {heat_flow_euler(h2, rho_p, 1.0, 32), heat_flow_resolvent(h2, rho_p, 1.0, 32)}) {
    for (const auto& state : traj.states) CHECK(mass(state) == doctest::Approx(6.0).epsilon(1e-8));
  }
}

TEST_CASE("energy descends along trajectories") {
  detail::Rng rng(79);
  for (int iter = 0; iter < 15; ++iter) {
    Hypergraph h = random_hypergraph(1500 + iter, 5, 6, true);
    Vec f = testing::random_function(rng, h.vertex_count());
    for (const auto& traj :
         {heat_flow_euler(h, f, 1.0, 16), heat_flow_resolvent(h, f, 1.0, 16)}) {
      for (std::size_t i = 1; i < traj.states.size(); ++i)
        CHECK(energy(h, traj.states[i]) <= energy(h, traj.states[i - 1]) + 1e-8);
    }
  }
}

TEST_CASE("cross-method agreement at matched resolution") {
  for (const auto& h : {make_h1(), make_h2()}) {
    Vec f = h.rho(0);
    auto a = heat_flow_resolvent(h, f, 1.0, 8).final_state();
    auto b = heat_flow_resolvent(h, f, 1.0, 64).final_state();
    Vec gap(h.vertex_count());
    for (int v = 0; v < h.vertex_count(); ++v) gap[v] = a[v] - b[v];
    CHECK(h.norm(gap) > 0.0);  // refinements move the trajectory O(1/n)

    auto euler = heat_flow_euler(h, f, 1.0, 64).final_state();
    for (int v = 0; v < h.vertex_count(); ++v) gap[v] = euler[v] - b[v];
    // both flows are homogeneous, so the agreement threshold is relative
    CHECK(h.norm(gap) <= 1e-2 * h.norm(f));
  }
}

TEST_CASE("semigroup property under refinement") {
  for (const auto& h : {make_h1(), make_h2()}) {
    Vec f = h.rho(0);
    int per_unit = 256;
    auto half = heat_flow_resolvent(h, f, 0.5, per_unit / 2).final_state();
    auto full = heat_flow_resolvent(h, half, 0.5, per_unit / 2).final_state();
    auto direct = heat_flow_resolvent(h, f, 1.0, per_unit).final_state();
    Vec gap(h.vertex_count());
    for (int v = 0; v < h.vertex_count(); ++v) gap[v] = full[v] - direct[v];
    CHECK(h.norm(gap) <= 1e-3);
  }
}

TEST_CASE("contraction between trajectories") {
  detail::Rng rng(83);
  for (int iter = 0; iter < 10; ++iter) {
    Hypergraph h = random_hypergraph(1600 + iter, 5, 6, true);
    int n = h.vertex_count();
    Vec f = testing::random_function(rng, n);
    Vec g = testing::random_function(rng, n);
    Vec d0(n);
    for (int v = 0; v < n; ++v) d0[v] = f[v] - g[v];
    for (bool euler : {true, false}) {
      Vec ft = euler ? heat_flow_euler(h, f, 0.8, 32).final_state()
                     : heat_flow_resolvent(h, f, 0.8, 32).final_state();
      Vec gt = euler ? heat_flow_euler(h, g, 0.8, 32).final_state()
                     : heat_flow_resolvent(h, g, 0.8, 32).final_state();
      Vec dt(n);
      for (int v = 0; v < n; ++v) dt[v] = ft[v] - gt[v];
      CHECK(h.norm(dt) <= h.norm(d0) + 1e-4);
    }
  }
}

TEST_CASE("homogeneity of the flow") {
  Hypergraph h2 = make_h2();
  Vec f = h2.rho(0);
  double a = -1.7;
  Vec af(f);
  for (double& v : af) v *= a;
  for (bool euler : {true, false}) {
    Vec left = euler ? heat_flow_euler(h2, af, 0.7, 32).final_state()
                     : heat_flow_resolvent(h2, af, 0.7, 32).final_state();
    Vec right = euler ? heat_flow_euler(h2, f, 0.7, 32).final_state()
                      : heat_flow_resolvent(h2, f, 0.7, 32).final_state();
    for (double& v : right) v *= a;
    Vec diff(4);
    for (int v = 0; v < 4; ++v) diff[v] = left[v] - right[v];
    CHECK(h2.norm(diff) <= 1e-6);
  }
}

TEST_CASE("equilibrium examples") {
  Hypergraph h2 = make_h2();
  CHECK(equilibrium(h2, h2.rho(0)) == h2.degree_vector());

  Hypergraph h1 = make_h1();
  CHECK(equilibrium(h1, h1.rho(0)) == h1.degree_vector());

  Vec f = h2.degree_vector();
  for (double& v : f) v *= -2.5;
  auto eq = equilibrium(h2, f);
  for (int v = 0; v < 4; ++v) CHECK(eq[v] == doctest::Approx(f[v]));

  Hypergraph split({"a", "b", "c", "d"}, {{{0, 1}, 1.0}, {{2, 3}, 1.0}});
  CHECK_THROWS_AS(equilibrium(split, Vec{1, 0, 0, 0}), ValidationError);
}

TEST_CASE("long-time limit reaches the equilibrium") {
  for (std::uint64_t seed = 90; seed < 96; ++seed) {
    Hypergraph h = random_hypergraph(seed, 8, 8, true);
    detail::Rng rng(seed);
    Vec f = testing::random_function(rng, h.vertex_count());
    Vec eq = equilibrium(h, f);
    Vec state = heat_flow_resolvent(h, f, 40.0, 80).final_state();
    Vec gap(h.vertex_count());
    for (int v = 0; v < h.vertex_count(); ++v) gap[v] = state[v] - eq[v];
    CHECK(h.norm(gap) <= 1e-3);
  }
}

TEST_CASE("input validation") {
  Hypergraph h2 = make_h2();
  CHECK_THROWS_AS(heat_flow_euler(h2, h2.rho(0), -0.1, 4), ValidationError);
  CHECK_THROWS_AS(heat_flow_euler(h2, h2.rho(0), 0.1, 0), ValidationError);
  CHECK_THROWS_AS(heat_flow_resolvent(h2, h2.rho(0), 0.1, 0), ValidationError);
}
