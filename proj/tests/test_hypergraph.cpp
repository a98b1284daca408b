#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "hyperricci/hypergraph.hpp"
#include "hyperricci/instances.hpp"
#include "support/test_support.hpp"

using namespace hyperricci;

TEST_CASE("construction validates structure") {
  CHECK_THROWS_AS(Hypergraph({}, {}), ValidationError);
  CHECK_THROWS_AS(Hypergraph({"a", "a"}, {{{0, 1}, 1.0}}), ValidationError);
  CHECK_THROWS_AS(Hypergraph({"a", "b"}, {{{}, 1.0}}), ValidationError);
  CHECK_THROWS_AS(Hypergraph({"a", "b"}, {{{0, 1}, -1.0}}), ValidationError);
  CHECK_THROWS_AS(Hypergraph({"a", "b"}, {{{0, 1}, 0.0}}), ValidationError);
  CHECK_THROWS_AS(Hypergraph({"a", "b"}, {{{0, 2}, 1.0}}), ValidationError);
  CHECK_THROWS_AS(Hypergraph({"a", "b"}, {{{0, 0}, 1.0}}), ValidationError);
  // isolated vertex: degree would be zero
  CHECK_THROWS_AS(Hypergraph({"a", "b", "c"}, {{{0, 1}, 1.0}}), ValidationError);
}

TEST_CASE("degrees of the bundled instances") {
  Hypergraph h1 = make_h1();
  CHECK(h1.degrees() == Vec{3, 5, 5, 3});
  CHECK(h1.volume() == doctest::Approx(16.0));
  Hypergraph h2 = make_h2();
  CHECK(h2.degrees() == Vec{1, 2, 2, 1});
  CHECK(h2.volume() == doctest::Approx(6.0));
}

TEST_CASE("inner product examples") {
  Hypergraph h2 = make_h2();
  int p = h2.vertex_index("p"), q = h2.vertex_index("q");

  CHECK(h2.inner(h2.delta(p), h2.delta(p)) == doctest::Approx(1.0));
  CHECK(h2.inner(h2.delta(p), h2.delta(q)) == 0.0);

  // <f, D1> equals the plain sum of f's values.
  Vec rho_p = h2.rho(p);
  CHECK(rho_p == Vec{0, 2, 2, 2});
  double plain_sum = 0.0;
  for (double v : rho_p) plain_sum += v;
  CHECK(h2.inner(rho_p, h2.degree_vector()) == doctest::Approx(plain_sum));
  CHECK(plain_sum == doctest::Approx(6.0));

  CHECK_THROWS_AS(h2.inner(Vec{1, 2, 3}, rho_p), ValidationError);
}

TEST_CASE("inner product symmetry and bilinearity") {
  detail::Rng rng(11);
  for (int iter = 0; iter < 60; ++iter) {
    Hypergraph h = random_hypergraph(100 + iter, 6, 6, false);
    int n = h.vertex_count();
    Vec f = testing::random_function(rng, n);
    Vec g = testing::random_function(rng, n);
    Vec k = testing::random_function(rng, n);
    double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
    CHECK(h.inner(f, g) == doctest::Approx(h.inner(g, f)).epsilon(1e-12));
    Vec combo(n);
    for (int v = 0; v < n; ++v) combo[v] = a * f[v] + b * k[v];
    CHECK(h.inner(combo, g) ==
          doctest::Approx(a * h.inner(f, g) + b * h.inner(k, g)).epsilon(1e-12));
  }
}

TEST_CASE("view conversions round trip") {
  Hypergraph h1 = make_h1();
  detail::Rng rng(5);
  Vec f = testing::random_function(rng, h1.vertex_count());
  VertexFunction raw = VertexFunction::raw(f);
  VertexFunction dens = VertexFunction::density(h1.density(f));
  Vec back = raw_values(h1, dens);
  for (int v = 0; v < h1.vertex_count(); ++v)
    CHECK(back[v] == doctest::Approx(f[v]).epsilon(1e-12));
  CHECK(inner_product(h1, raw, dens) == doctest::Approx(h1.inner(f, f)).epsilon(1e-12));
}

TEST_CASE("distances on the bundled instances") {
  Hypergraph h1 = make_h1(), h2 = make_h2();
  CHECK(h2.distance(h2.vertex_index("p"), h2.vertex_index("q")) == 2);
  CHECK(h2.distance(h2.vertex_index("v1"), h2.vertex_index("v2")) == 1);
  CHECK(h1.distance(h1.vertex_index("p"), h1.vertex_index("v1")) == 1);
  CHECK(h1.diameter() == 2);
  CHECK(h2.diameter() == 2);
}

TEST_CASE("distance is a metric on connected instances") {
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    Hypergraph h = random_hypergraph(seed, 8, 10, true);
    int n = h.vertex_count();
    for (int x = 0; x < n; ++x) {
      CHECK(h.distance(x, x) == 0);
      for (int y = 0; y < n; ++y) {
        CHECK(h.distance(x, y) == h.distance(y, x));
        if (x != y) CHECK(h.distance(x, y) >= 1);
        for (int z = 0; z < n; ++z)
          CHECK(h.distance(x, z) <= h.distance(x, y) + h.distance(y, z));
      }
    }
  }
}

TEST_CASE("disconnected distances are encoded, not raised") {
  Hypergraph h({"a", "b", "c", "d"}, {{{0, 1}, 1.0}, {{2, 3}, 1.0}});
  CHECK_FALSE(h.connected());
  CHECK(h.distance(0, 2) == Hypergraph::kUnreachable);
  CHECK(h.distance(0, 1) == 1);
  CHECK_THROWS_AS(h.diameter(), ValidationError);
  CHECK_THROWS_AS(h.rho(0), ValidationError);
}

TEST_CASE("geodesic enumeration matches brute force") {
  Hypergraph h2 = make_h2();
  int p = h2.vertex_index("p"), q = h2.vertex_index("q");
  auto geos = enumerate_geodesics(h2, p, q);
  REQUIRE(geos.size() == 2);
  CHECK(geos[0].vertices == std::vector<int>{0, 1, 3});
  CHECK(geos[1].vertices == std::vector<int>{0, 2, 3});

  Hypergraph h1 = make_h1();
  auto geos1 = enumerate_geodesics(h1, 0, 3);
  REQUIRE(geos1.size() == 2);
  CHECK(geos1[0].vertices == std::vector<int>{0, 1, 3});
  CHECK(geos1[1].vertices == std::vector<int>{0, 2, 3});

  auto self = enumerate_geodesics(h2, p, p);
  REQUIRE(self.size() == 1);
  CHECK(self[0].vertices == std::vector<int>{p});

  for (std::uint64_t seed = 400; seed < 420; ++seed) {
    Hypergraph h = random_hypergraph(seed, 8, 10, true);
    for (int x = 0; x < h.vertex_count(); ++x)
      for (int y = 0; y < h.vertex_count(); ++y) {
        auto fast = enumerate_geodesics(h, x, y);
        auto brute = testing::brute_force_geodesics(h, x, y);
        REQUIRE(fast.size() == brute.size());
        for (std::size_t i = 0; i < fast.size(); ++i) {
          CHECK(fast[i].vertices == brute[i]);
          CHECK(fast[i].length() == h.distance(x, y));
        }
      }
  }
}

TEST_CASE("lipschitz constant examples") {
  Hypergraph h2 = make_h2();
  CHECK(lipschitz_constant(h2, h2.degree_vector()) == 0.0);
  CHECK(lipschitz_constant(h2, h2.rho(0)) == doctest::Approx(1.0));
  Hypergraph h1 = make_h1();
  Vec scaled = h1.rho(0);
  for (double& v : scaled) v *= 3.0;
  CHECK(lipschitz_constant(h1, scaled) == doctest::Approx(3.0));
}

TEST_CASE("lipschitz constant is absolutely homogeneous") {
  detail::Rng rng(17);
  for (int iter = 0; iter < 40; ++iter) {
    Hypergraph h = random_hypergraph(500 + iter, 6, 6, true);
    Vec f = testing::random_function(rng, h.vertex_count());
    double a = rng.uniform(-3.0, 3.0);
    Vec af(f);
    for (double& v : af) v *= a;
    CHECK(lipschitz_constant(h, af) ==
          doctest::Approx(std::fabs(a) * lipschitz_constant(h, f)).epsilon(1e-10));
  }
}

TEST_CASE("lipschitz vertex samples") {
  Hypergraph h2 = make_h2();
  auto samples = lipschitz_vertex_samples(h2, 3, 16);
  CHECK(samples.size() == 16 + 2 * 4);

  bool found_rho_p = true;
  Vec dens0 = density_values(h2, samples[0]);
  Vec expect{0, 1, 1, 2};
  for (int v = 0; v < 4; ++v) found_rho_p = found_rho_p && dens0[v] == expect[v];
  CHECK(found_rho_p);

  for (const auto& s : samples) {
    CHECK(lipschitz_constant(h2, s) <= 1.0 + 1e-12);
    CHECK(density_values(h2, s)[0] == 0.0);
  }

  Hypergraph h1 = make_h1();
  auto a = lipschitz_vertex_samples(h1, 7, 32);
  auto b = lipschitz_vertex_samples(h1, 7, 32);
  CHECK(a.size() == 32 + 8);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].values == b[i].values);
  auto c = lipschitz_vertex_samples(h1, 8, 32);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) any_diff = any_diff || a[i].values != c[i].values;
  CHECK(any_diff);
}

TEST_CASE("samples on random connected instances stay feasible") {
  for (std::uint64_t seed = 600; seed < 615; ++seed) {
    Hypergraph h = random_hypergraph(seed, 6, 8, true);
    for (const auto& s : lipschitz_vertex_samples(h, seed, 10))
      CHECK(lipschitz_constant(h, s) <= 1.0 + 1e-12);
  }
}
