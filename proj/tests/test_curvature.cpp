#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperricci/curvature.hpp"
#include "hyperricci/resolvent.hpp"
#include "support/test_support.hpp"

using namespace hyperricci;

TEST_CASE("kd validation") {
  Hypergraph h2 = make_h2();
  CHECK_THROWS_AS(kantorovich_difference(h2, 0, 0, 0.1), ValidationError);
  CHECK_THROWS_AS(kantorovich_difference(h2, 0, 3, 0.0), ValidationError);
  Hypergraph split({"a", "b", "c", "d"}, {{{0, 1}, 1.0}, {{2, 3}, 1.0}});
  CHECK_THROWS_AS(kantorovich_difference(split, 0, 2, 0.1), ValidationError);
}

TEST_CASE("kd on H2 dominates the rho witness and is symmetric") {
  Hypergraph h2 = make_h2();
  int p = 0, q = 3;
  MultistartOptions opts;
  opts.count = 32;

  KDResult pq = kantorovich_difference(h2, p, q, 0.1, opts);
  double rho_value = 2.0 - 2.0 * (0.1 / 1.1);
  CHECK(pq.value >= rho_value - 1e-9);
  CHECK(lipschitz_constant(h2, pq.witness) <= 1.0 + 1e-9);

  // the witness evaluates back to the reported value
  ProxResult r = resolvent(h2, raw_values(h2, pq.witness), 0.1);
  double replay = r.minimizer[p] / h2.degree(p) - r.minimizer[q] / h2.degree(q);
  CHECK(replay == doctest::Approx(pq.value).epsilon(1e-9));

  KDResult qp = kantorovich_difference(h2, q, p, 0.1, opts);
  CHECK(std::fabs(pq.value - qp.value) <= 1e-6);
}

TEST_CASE("kappa_lambda on H2") {
  Hypergraph h2 = make_h2();
  MultistartOptions opts;
  opts.count = 32;
  double k = kappa_lambda(h2, 0, 3, 0.1, opts);
  CHECK(k <= 1.0 - (2.0 - 2.0 * (0.1 / 1.1)) / 2.0 + 1e-9);
  CHECK(k <= 1.0);

  double k_small = kappa_lambda(h2, 0, 1, 0.01, opts);
  CHECK(k_small / 0.01 >= 0.9);
  CHECK(k_small / 0.01 <= 1.1);
}

TEST_CASE("kappa_lambda never exceeds one") {
  MultistartOptions opts;
  opts.count = 8;
  opts.ascent_iterations = 6;
  for (std::uint64_t seed = 130; seed < 136; ++seed) {
    Hypergraph h = random_hypergraph(seed, 4, 5, true);
    for (int x = 0; x < h.vertex_count(); ++x)
      for (int y = x + 1; y < h.vertex_count(); ++y)
        CHECK(kappa_lambda(h, x, y, 0.25, opts) <= 1.0 + 1e-12);
  }
}

TEST_CASE("coarse curvature on the paper instances") {
  MultistartOptions opts;
  opts.count = 32;
  {
    Hypergraph h2 = make_h2();
    CurvatureEstimate est = coarse_curvature(h2, 0, 3, default_lambda_schedule(), opts);
    CHECK(est.dist == 2);
    CHECK(est.table.size() == 8);
    CHECK(est.kappa_lower >= 0.95);
    CHECK(est.kappa_upper <= 1.05);
    CHECK(est.kappa_lower <= est.kappa_upper);
    for (const auto& row : est.table) CHECK(row.kappa <= 1.0);
  }
  {
    Hypergraph h1 = make_h1();
    CurvatureEstimate est = coarse_curvature(h1, 0, 1, default_lambda_schedule(), opts);
    CHECK(est.kappa_lower >= 0.95);
    CHECK(est.kappa_upper <= 1.05);
  }
}

TEST_CASE("weight scaling leaves curvature unchanged") {
  Hypergraph h2 = make_h2();
  MultistartOptions opts;
  opts.count = 16;
  auto schedule = default_lambda_schedule();
  for (double a : {0.5, 5.0}) {
    Hypergraph scaled = scale_weights(h2, a);
    for (auto [x, y] : {std::pair{0, 3}, std::pair{0, 1}, std::pair{1, 2}}) {
      CurvatureEstimate base = coarse_curvature(h2, x, y, schedule, opts);
      CurvatureEstimate other = coarse_curvature(scaled, x, y, schedule, opts);
      for (std::size_t i = 0; i < base.table.size(); ++i)
        CHECK(std::fabs(base.table[i].kappa - other.table[i].kappa) <= 1e-6);
    }
  }
}

TEST_CASE("upper bound from the constrained Laplacian pairing") {
  MultistartOptions opts;
  opts.count = 16;
  {
    Hypergraph h2 = make_h2();
    CBoundResult b = curvature_upper_bound_C(h2, 0, 3, opts);
    REQUIRE(b.distance_feasible);
    CHECK(b.distance_normalized == doctest::Approx(1.0).epsilon(1e-4));
    REQUIRE(b.unit_feasible);
    // the printed "=1" normalization lands at 1/d on these instances
    CHECK(b.unit_normalized <= b.distance_normalized + 1e-9);
  }
  {
    Hypergraph h1 = make_h1();
    CBoundResult b = curvature_upper_bound_C(h1, 0, 3, opts);
    REQUIRE(b.distance_feasible);
    CHECK(b.distance_normalized == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("estimates stay below the distance-normalized C bound") {
  MultistartOptions opts;
  opts.count = 24;
  for (const auto& h : {make_h1(), make_h2()}) {
    for (auto [x, y] : {std::pair{0, 1}, std::pair{0, 3}, std::pair{1, 3}}) {
      CurvatureEstimate est = coarse_curvature(h, x, y, default_lambda_schedule(), opts);
      REQUIRE(est.c_bound.distance_feasible);
      CHECK(est.kappa_upper <= est.c_bound.distance_normalized + 0.05);
    }
  }
}

TEST_CASE("curvature matrix shapes and determinism") {
  MultistartOptions opts;
  opts.count = 8;
  opts.ascent_iterations = 8;
  std::vector<double> short_schedule{0.1, 0.05, 0.025};

  Hypergraph single = make_single_edge();
  auto m1 = curvature_matrix(single, short_schedule, opts);
  CHECK(m1.size() == 1);

  Hypergraph path = make_path3();
  auto m2 = curvature_matrix(path, short_schedule, opts);
  CHECK(m2.size() == 3);

  Hypergraph h2 = make_h2();
  auto a = curvature_matrix(h2, short_schedule, opts);
  auto b = curvature_matrix(h2, short_schedule, opts);
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
    for (std::size_t j = 0; j < a[i].table.size(); ++j)
      CHECK(a[i].table[j].kappa == b[i].table[j].kappa);
  }

  Hypergraph split({"a", "b", "c", "d"}, {{{0, 1}, 1.0}, {{2, 3}, 1.0}});
  CHECK_THROWS_AS(curvature_matrix(split, short_schedule, opts), ValidationError);
}

TEST_CASE("schedule validation") {
  Hypergraph h2 = make_h2();
  CHECK_THROWS_AS(coarse_curvature(h2, 0, 3, {}, {}), ValidationError);
  CHECK_THROWS_AS(coarse_curvature(h2, 0, 3, {0.1, 0.2}, {}), ValidationError);
  CHECK_THROWS_AS(coarse_curvature(h2, 0, 3, {0.1, -0.05}, {}), ValidationError);
}
