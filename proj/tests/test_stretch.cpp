#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "stretchlab/model.hpp"
#include "stretchlab/rng.hpp"
#include "stretchlab/stretch.hpp"
#include "test_util.hpp"

using namespace stretchlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Plain Floyd-Warshall, local to the tests, for checking sssp/apsp rows
// without trusting either library code path.
std::vector<double> test_fw(const EmbeddedGraph& g) {
  const std::size_t n = g.n();
  std::vector<double> d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && g.adjacent(i, j)) d[i * n + j] = euclid(g.points[i], g.points[j]);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return d;
}

EmbeddedGraph two_edge_path() {
  // u=(0,0) -- w=(0.5,0.5) -- v=(1,0); the only non-adjacent pair is (u,v)
  return from_points_edges({3, 0.5, 1}, {{0, 0}, {0.5, 0.5}, {1, 0}},
                           {{0, 1}, {1, 2}});
}

}  // namespace

TEST_CASE("sssp on a two-vertex graph and an edgeless graph") {
  const auto k2 = from_points_edges({2, 1, 1}, {{0, 0}, {1, 0}}, {{0, 1}});
  const auto row = sssp(k2, 0);
  CHECK(row[0] == 0.0);
  CHECK(row[1] == doctest::Approx(1.0).epsilon(1e-12));

  const auto loner = from_points_edges({3, 0, 1}, {{0, 0}, {1, 0}, {0, 1}}, {});
  const auto lrow = sssp(loner, 0);
  CHECK(lrow[0] == 0.0);
  CHECK(lrow[1] == kInf);
  CHECK(lrow[2] == kInf);

  CHECK_THROWS_AS(sssp(k2, 2), std::invalid_argument);
}

TEST_CASE("sssp row matches Floyd-Warshall on random instances") {
  for (const double p : {0.15, 0.5, 0.9}) {
    const auto g = generate({30, p, 808});
    const auto fw = test_fw(g);
    for (std::size_t s = 0; s < 30; s += 7) {
      const auto row = sssp(g, s);
      for (std::size_t v = 0; v < 30; ++v) {
        if (fw[s * 30 + v] == kInf) {
          CHECK(row[v] == kInf);
        } else {
          CHECK(testutil::approx_rel(row[v], fw[s * 30 + v], 1e-9));
        }
      }
    }
  }
}

TEST_CASE("apsp equals oracle matrix and satisfies metric dominance") {
  const auto g = generate({50, 0.3, 99});
  const auto dm = apsp(g);
  const auto fw = test_fw(g);
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(dm.at(i, i) == 0.0);
    for (std::size_t j = 0; j < 50; ++j) {
      if (fw[i * 50 + j] == kInf) {
        CHECK(dm.at(i, j) == kInf);
      } else {
        CHECK(testutil::approx_rel(dm.at(i, j), fw[i * 50 + j], 1e-9));
      }
      CHECK(dm.at(i, j) == dm.at(j, i));
      if (i != j) {
        CHECK(dm.at(i, j) >= euclid(g.points[i], g.points[j]) - 1e-12);
      }
    }
  }
}

TEST_CASE("apsp on K3 is the euclid table") {
  const auto k3 = from_points_edges({3, 1, 1}, {{0, 0}, {1, 0}, {0, 1}},
                                    {{0, 1}, {0, 2}, {1, 2}});
  const auto dm = apsp(k3);
  CHECK(dm.at(0, 1) == doctest::Approx(1.0));
  CHECK(dm.at(0, 2) == doctest::Approx(1.0));
  CHECK(dm.at(1, 2) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("stretch of hand-built instances") {
  SUBCASE("complete graph") {
    const auto g = generate({6, 1.0, 5});
    const auto rep = stretch_factor(g);
    CHECK(rep.defined);
    CHECK(rep.value == 1.0);
    CHECK(rep.pair_i == 0);
    CHECK(rep.pair_j == 1);
    CHECK(rep.d_graph == rep.d_euclid);
  }
  SUBCASE("two-edge detour") {
    const auto rep = stretch_factor(two_edge_path());
    CHECK(rep.defined);
    CHECK(rep.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rep.pair_i == 0);
    CHECK(rep.pair_j == 2);
    CHECK(rep.d_graph == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rep.d_euclid == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("disconnected pair is undefined") {
    const auto g = from_points_edges({2, 0, 1}, {{0, 0}, {1, 0}}, {});
    CHECK_FALSE(stretch_factor(g).defined);
    CHECK_FALSE(oracle_stretch(g).defined);
  }
  SUBCASE("n < 2 rejected") {
    const auto g = from_points_edges({1, 0, 1}, {{0.5, 0.5}}, {});
    CHECK_THROWS_AS(stretch_factor(g), std::invalid_argument);
    CHECK_THROWS_AS(oracle_stretch(g), std::invalid_argument);
  }
  SUBCASE("coincident distinct vertices rejected") {
    const auto g = from_points_edges(
        {3, 0.5, 1}, {{0.5, 0.5}, {0.5, 0.5}, {0, 0}}, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_THROWS_AS(stretch_factor(g), std::logic_error);
    CHECK_THROWS_AS(oracle_stretch(g), std::logic_error);
  }
}

TEST_CASE("stretch_factor equals the oracle on 500 random instances") {
  Xoshiro256PlusPlus mix(20260818);
  const double ps[3] = {0.3, 0.6, 0.9};
  int defined_count = 0;
  for (int t = 0; t < 500; ++t) {
    const std::uint64_t n = 4 + static_cast<std::uint64_t>(mix.uniform() * 57);
    const double p = ps[t % 3];
    const auto g = generate({n, p, derive_seed(123, stream::kTrial, n, t)});
    const auto fast = stretch_factor(g);
    const auto slow = oracle_stretch(g);
    REQUIRE(fast.defined == slow.defined);
    if (fast.defined) {
      ++defined_count;
      CHECK(testutil::approx_rel(fast.value, slow.value, 1e-9));
      CHECK(fast.value >= 1.0);
      // argmax agreement implies matching distances at matching pairs
      if (fast.pair_i == slow.pair_i && fast.pair_j == slow.pair_j) {
        CHECK(testutil::approx_rel(fast.d_euclid, slow.d_euclid, 1e-9));
        CHECK(testutil::approx_rel(fast.d_graph, slow.d_graph, 1e-9));
      }
    }
  }
  CHECK(defined_count > 250);  // most instances at these p are connected
}

TEST_CASE("both scan strategies agree with the oracle at n=300") {
  // dense instance lands in the pair-based scan, sparse in the row-based one
  for (const double p : {0.2, 0.7}) {
    const auto g = generate({300, p, 2718});
    const auto fast = stretch_factor(g);
    const auto slow = oracle_stretch(g);
    REQUIRE(fast.defined == slow.defined);
    if (fast.defined) CHECK(testutil::approx_rel(fast.value, slow.value, 1e-9));
  }
}

TEST_CASE("adding edges never increases the stretch factor") {
  auto g = generate({80, 0.2, 1234});
  REQUIRE(is_connected(g));
  double last = stretch_factor(g).value;
  Xoshiro256PlusPlus rng(555);
  int added = 0;
  while (added < 8) {
    const auto i = static_cast<std::size_t>(rng.uniform() * 80);
    const auto j = static_cast<std::size_t>(rng.uniform() * 80);
    if (i == j || g.adjacent(i, j)) continue;
    g.add_edge(i, j);
    ++added;
    const double now = stretch_factor(g).value;
    CHECK(now <= last + 1e-12);
    last = now;
  }
}

TEST_CASE("stretch is invariant under similarity scaling") {
  const auto g = generate({60, 0.4, 31415});
  REQUIRE(is_connected(g));
  const auto base = stretch_factor(g);

  ModelParams params = g.params;
  std::vector<Point> scaled;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const Point& p : g.points) scaled.push_back({p.x * 3.7, p.y * 3.7});
  for (std::size_t i = 0; i < g.n(); ++i)
    for (std::size_t j = i + 1; j < g.n(); ++j)
      if (g.adjacent(i, j))
        edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
  const auto gs = from_points_edges(params, scaled, edges);
  const auto rep = stretch_factor(gs);
  CHECK(testutil::approx_rel(rep.value, base.value, 1e-11));
  CHECK(rep.pair_i == base.pair_i);
  CHECK(rep.pair_j == base.pair_j);
  CHECK(testutil::approx_rel(rep.d_graph, base.d_graph * 3.7, 1e-11));
}

TEST_CASE("bad pairs") {
  SUBCASE("complete graph has none") {
    const auto g = generate({10, 1.0, 3});
    const auto dm = apsp(g);
    CHECK(bad_pairs(g, 0.5, dm).empty());
    CHECK(bad_pairs(g, 100.0, dm).empty());
  }
  SUBCASE("two-edge detour at lambda = 0.1") {
    const auto g = two_edge_path();
    const auto dm = apsp(g);
    const auto bad = bad_pairs(g, 0.1, dm);  // sqrt2 > 1.2
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].first == 0);
    CHECK(bad[0].second == 2);
  }
  SUBCASE("nonempty exactly when stretch exceeds 2*lambda + 1") {
    for (int t = 0; t < 20; ++t) {
      const auto g = generate({40, 0.25, 9000 + static_cast<std::uint64_t>(t)});
      const auto rep = stretch_factor(g);
      if (!rep.defined) continue;
      const auto dm = apsp(g);
      for (const double lambda : {0.05, 0.25, 1.0, 3.0}) {
        const bool nonempty = !bad_pairs(g, lambda, dm).empty();
        CHECK(nonempty == (rep.value > 2 * lambda + 1));
      }
    }
  }
  SUBCASE("validation") {
    const auto g = generate({5, 1.0, 3});
    const auto dm = apsp(g);
    CHECK_THROWS_AS(bad_pairs(g, 0.0, dm), std::invalid_argument);
    DistanceMatrix wrong;
    wrong.n = 4;
    wrong.dist.assign(16, 0.0);
    CHECK_THROWS_AS(bad_pairs(g, 1.0, wrong), std::invalid_argument);
  }
}

TEST_CASE("common neighbours") {
  const auto k4 = generate({4, 1.0, 1});
  CHECK(common_neighbours(k4, 0, 1) == 2);
  CHECK(common_neighbours(k4, 2, 3) == 2);
  const auto empty = generate({4, 0.0, 1});
  CHECK(common_neighbours(empty, 0, 1) == 0);
  CHECK_THROWS_AS(common_neighbours(k4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(common_neighbours(k4, 0, 4), std::invalid_argument);
}

TEST_CASE("common-neighbour count vs its concentration bound") {
  // failure probability per pair is at most exp(-p^2 n / 16) ~ 1.6e-7 here,
  // so across 600 sampled pairs zero failures is the overwhelming outcome
  const double p = 0.5;
  const std::uint64_t n = 1000;
  const double floor_count = p * p * static_cast<double>(n) / 4.0;
  Xoshiro256PlusPlus rng(6060);
  int failures = 0;
  for (int s = 0; s < 100; ++s) {
    const auto g = generate({n, p, 70000 + static_cast<std::uint64_t>(s)});
    for (int k = 0; k < 6; ++k) {
      const auto u = static_cast<std::size_t>(rng.uniform() * n);
      auto v = static_cast<std::size_t>(rng.uniform() * n);
      if (v == u) v = (v + 1) % n;
      if (static_cast<double>(common_neighbours(g, u, v)) < floor_count) {
        ++failures;
      }
    }
  }
  CHECK(failures == 0);
}
