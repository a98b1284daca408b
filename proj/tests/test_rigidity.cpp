#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperricci/laplacian.hpp"
#include "hyperricci/rigidity.hpp"
#include "support/test_support.hpp"

using namespace hyperricci;

TEST_CASE("diameter") {
  CHECK(diameter(make_h2()) == 2);
  CHECK(diameter(make_h1()) == 2);
  CHECK(diameter(make_single_edge()) == 1);
  Hypergraph split({"a", "b", "c", "d"}, {{{0, 1}, 1.0}, {{2, 3}, 1.0}});
  CHECK_THROWS_AS(diameter(split), ValidationError);
}

TEST_CASE("bonnet-myers verdicts") {
  Hypergraph h2 = make_h2();
  auto a = bonnet_myers_check(h2, 1.0);
  CHECK(a.satisfied);
  CHECK(a.maximal);
  CHECK(a.bound == 2.0);

  auto b = bonnet_myers_check(h2, 1.5);
  CHECK_FALSE(b.satisfied);  // bound 4/3 < 2: K = 1.5 is not a valid level
  CHECK_FALSE(b.maximal);

  auto c = bonnet_myers_check(make_h1(), 0.5);
  CHECK(c.satisfied);
  CHECK_FALSE(c.maximal);

  CHECK_THROWS_AS(bonnet_myers_check(h2, 0.0), ValidationError);
}

TEST_CASE("excess function") {
  Hypergraph h2 = make_h2();
  Vec e2 = raw_values(h2, excess(h2, 0, 3, 1.0));
  for (double v : e2) CHECK(v == 0.0);

  Hypergraph h1 = make_h1();
  Vec e1 = raw_values(h1, excess(h1, 0, 3, 1.0));
  for (double v : e1) CHECK(v == 0.0);

  Hypergraph pend = make_pendant_h2();
  int p = pend.vertex_index("p"), q = pend.vertex_index("q"), w = pend.vertex_index("w");
  Vec ep = raw_values(pend, excess(pend, p, q, 1.0));
  CHECK(ep[w] == 2.0 * pend.degree(w));
  CHECK(ep[pend.vertex_index("v1")] == 0.0);

  // non-maximal pair rejected
  CHECK_THROWS_AS(excess(h2, 0, 1, 1.0), ValidationError);
}

TEST_CASE("eigenfunction checks on the paper instances") {
  Hypergraph h2 = make_h2();
  auto ep = eigenfunction_check(h2, 0, 1.0);
  CHECK(ep.function == Vec{-1, 0, 0, 1});
  CHECK(ep.residual <= 1e-8);
  auto eq = eigenfunction_check(h2, 3, 1.0);
  CHECK(eq.residual <= 1e-8);

  Hypergraph h1 = make_h1();
  auto e1 = eigenfunction_check(h1, 0, 1.0);
  CHECK(e1.function == Vec{-3, 0, 0, 3});
  CHECK(e1.residual <= 1e-8);
}

TEST_CASE("eigen residual is invariant under weight scaling") {
  for (const auto& base : {make_h1(), make_h2()}) {
    for (double a : {0.5, 5.0}) {
      Hypergraph scaled = scale_weights(base, a);
      for (int pole : {0, 3}) {
        double r0 = eigenfunction_check(base, pole, 1.0).residual;
        double r1 = eigenfunction_check(scaled, pole, 1.0).residual;
        CHECK(std::fabs(r0 - r1) <= 1e-8);
      }
    }
  }
}

TEST_CASE("pole value of the Laplacian of a distance function") {
  // L0 rho_p(p) = -d_p whenever p's incident edges all have another vertex.
  for (std::uint64_t seed = 150; seed < 170; ++seed) {
    Hypergraph h = random_hypergraph(seed, 5, 6, true);
    for (int pole = 0; pole < h.vertex_count(); ++pole) {
      bool pole_in_singleton = false;
      double expected = 0.0;
      for (const auto& e : h.edges()) {
        bool has_pole = false;
        for (int v : e.members) has_pole = has_pole || v == pole;
        if (!has_pole) continue;
        if (e.members.size() == 1)
          pole_in_singleton = true;
        else
          expected -= e.weight;
      }
      if (pole_in_singleton) continue;
      Vec l0 = canonical_laplacian(h, h.rho(pole), 1e-7).value;
      CHECK(l0[pole] == doctest::Approx(expected).epsilon(1e-7));
    }
  }
}

TEST_CASE("rigidity report on H2") {
  Hypergraph h2 = make_h2();
  RigidityOptions opts;
  opts.multistart.count = 24;
  RigidityReport r = maximal_diameter_rigidity(h2, 1.0, opts);
  CHECK(r.maximal);
  REQUIRE(r.pairs.size() == 1);
  const auto& pair = r.pairs[0];
  CHECK(pair.coverage);
  CHECK(pair.violators.empty());
  CHECK(pair.pairing_pq == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(pair.pairing_qp == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(pair.eigen_p.residual <= 1e-8);
  CHECK(pair.eigen_q.residual <= 1e-8);

  // excess sums to zero over the positive part on a rigid instance
  double positive_mass = 0.0;
  for (double v : pair.excess) positive_mass += std::max(0.0, v);
  CHECK(positive_mass == 0.0);

  // geodesic pairs: all six vertex pairs, with (v1,v2) on distinct geodesics
  REQUIRE(r.curvatures.size() == 6);
  int common = 0;
  for (const auto& c : r.curvatures) {
    if (c.common_geodesic) {
      ++common;
      CHECK(c.estimate.kappa_lower >= 0.95);
      CHECK(c.estimate.kappa_upper <= 1.05);
    } else {
      CHECK(c.x == h2.vertex_index("v1"));
      CHECK(c.y == h2.vertex_index("v2"));
    }
  }
  CHECK(common == 5);
}

TEST_CASE("rigidity report on H1") {
  RigidityOptions opts;
  opts.multistart.count = 16;
  RigidityReport r = maximal_diameter_rigidity(make_h1(), 1.0, opts);
  CHECK(r.maximal);
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].coverage);
  CHECK(r.pairs[0].pairing_pq == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.pairs[0].eigen_p.residual <= 1e-8);
  CHECK(r.pairs[0].eigen_q.residual <= 1e-8);
}

TEST_CASE("pendant instance fails coverage at the pendant vertex") {
  Hypergraph pend = make_pendant_h2();
  RigidityOptions opts;
  opts.curvature = false;
  RigidityReport r = maximal_diameter_rigidity(pend, 1.0, opts);
  CHECK(r.maximal);
  int p = pend.vertex_index("p"), q = pend.vertex_index("q"), w = pend.vertex_index("w");
  bool found = false;
  for (const auto& pair : r.pairs) {
    if (pair.p == p && pair.q == q) {
      found = true;
      CHECK_FALSE(pair.coverage);
      REQUIRE(pair.violators.size() == 1);
      CHECK(pair.violators[0] == w);
      CHECK(pair.excess[w] == 2.0 * pend.degree(w));
    }
  }
  CHECK(found);
}

TEST_CASE("non-maximal input degenerates to a Bonnet-Myers-only report") {
  RigidityOptions opts;
  RigidityReport r = maximal_diameter_rigidity(make_h2(), 0.5, opts);
  CHECK(r.satisfied);
  CHECK_FALSE(r.maximal);
  CHECK(r.pairs.empty());
  CHECK(r.curvatures.empty());
}
