#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <variant>

#include "spg/errors.hpp"
#include "spg/refinement.hpp"
#include "test_graphs.hpp"

using spg::FullnessEngine;
using spg::Graph;
using spg::Rational;
using spg::VertexSet;

TEST_CASE("chernoff_tail") {
  CHECK(spg::chernoff_tail(0.0, 0.5) == doctest::Approx(2.0));
  CHECK(spg::chernoff_tail(100.0, 1.0 / 3.0) ==
        doctest::Approx(2.0 * std::exp(-100.0 / 27.0)).epsilon(1e-12));
  // monotone decreasing in mu at fixed delta
  double prev = spg::chernoff_tail(0.0, 0.25);
  for (double mu : {1.0, 5.0, 20.0, 100.0}) {
    double cur = spg::chernoff_tail(mu, 0.25);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("refine_pair on a complete bipartite pair does nothing") {
  Graph g = fixtures::complete_bipartite(4, 4);
  VertexSet a = VertexSet::of(8, {0, 1, 2, 3});
  VertexSet b = VertexSet::of(8, {4, 5, 6, 7});
  FullnessEngine eng;
  eng.mode = FullnessEngine::Mode::Exact;
  auto res = spg::refine_pair(g, a, b, Rational(1, 2), Rational(1, 2), 1, eng);
  CHECK(res.a_prime == a);
  CHECK(res.b_prime == b);
  CHECK(res.trace.iterations == 0);
  CHECK(res.trace.certified);
}

TEST_CASE("refine_pair documented trace under the exact engine") {
  // A = {0..3}, B = {4, 5}; 4 adjacent to all of A, 5 only to 0.
  Graph g = Graph::from_edge_list(6, {{4, 0}, {4, 1}, {4, 2}, {4, 3}, {5, 0}});
  VertexSet a = VertexSet::of(6, {0, 1, 2, 3});
  VertexSet b = VertexSet::of(6, {4, 5});
  FullnessEngine eng;
  eng.mode = FullnessEngine::Mode::Exact;
  auto res = spg::refine_pair(g, a, b, Rational(1, 4), Rational(1, 4), 1, eng);
  CHECK(res.trace.certified);
  CHECK(res.trace.iterations >= 1);
  // final size bounds: |A'| >= (alpha/2)|A| = 0.5
  CHECK(res.a_prime.size() >= 1);
  CHECK_FALSE(res.b_prime.empty());
  // final pair certifies (alpha^l, beta, alpha/2)-full
  spg::FullnessParams p{Rational(1, 4), Rational(1, 4), Rational(1, 8)};
  CHECK(spg::check_fullness_exact(g, res.a_prime, res.b_prime, p).certified());
}

TEST_CASE("refine_pair with empty B is vacuous, not a contract error") {
  Graph g = fixtures::er(6, 0.5, 9);
  VertexSet a = VertexSet::of(6, {0, 1, 2});
  FullnessEngine eng;
  eng.mode = FullnessEngine::Mode::Exact;
  auto res = spg::refine_pair(g, a, VertexSet(6), Rational(1, 2), Rational(1, 2), 1, eng);
  CHECK(res.a_prime == a);
  CHECK(res.b_prime.empty());
  CHECK(res.trace.iterations == 0);
}

TEST_CASE("refine_pair rejects bad domains") {
  Graph g = fixtures::complete_bipartite(3, 3);
  VertexSet a = VertexSet::of(6, {0, 1, 2});
  VertexSet b = VertexSet::of(6, {3, 4, 5});
  FullnessEngine eng;
  CHECK_THROWS_AS(spg::refine_pair(g, a, b, Rational(0, 1), Rational(1, 2), 1, eng),
                  spg::ParameterError);
  CHECK_THROWS_AS(spg::refine_pair(g, a, b, Rational(1, 2), Rational(1, 2), 0, eng),
                  spg::ParameterError);
  CHECK_THROWS_AS(spg::refine_pair(g, a, a, Rational(1, 2), Rational(1, 2), 1, eng),
                  spg::ContractError);
  // B not alpha-dense to A
  Graph sparse = fixtures::edgeless(6);
  CHECK_THROWS_AS(spg::refine_pair(sparse, a, b, Rational(1, 2), Rational(1, 2), 1, eng),
                  spg::ContractError);
}

TEST_CASE("refine_pair invariants on random dense pairs") {
  std::mt19937_64 rng(1234);
  int ran = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int na = 4 + static_cast<int>(rng() % 9);  // up to 12
    int nb = 1 + static_cast<int>(rng() % 6);  // up to 6
    Graph g = fixtures::bipartite_random(na, nb, 0.6, rng());
    VertexSet a(g.n()), b(g.n());
    for (int i = 0; i < na; ++i) a.insert(i);
    for (int i = 0; i < nb; ++i) b.insert(na + i);
    Rational alpha(1, 4), beta(1, 4);
    if (!spg::is_dense_to(g, b, a, alpha)) continue;
    FullnessEngine eng;
    eng.mode = FullnessEngine::Mode::Exact;
    auto res = spg::refine_pair(g, a, b, alpha, beta, 1, eng);
    ++ran;
    CHECK(res.trace.certified);
    // |A'| >= (alpha/2)|A|
    CHECK(alpha.div_int(2).ge_scaled(res.a_prime.size(), na));
    // iteration bound n <= (1/alpha)^{2l} = 16
    CHECK(res.trace.iterations <= 16);
    CHECK(res.a_prime.subset_of(a));
    CHECK(res.b_prime.subset_of(b));
  }
  CHECK(ran > 50);
}

TEST_CASE("balanced_dense_split with empty B accepts on the size condition alone") {
  Graph g = fixtures::edgeless(120);
  auto res = spg::balanced_dense_split(g, g.vertices(), VertexSet(120), Rational(1, 2), 42);
  REQUIRE(std::holds_alternative<spg::SplitResult>(res));
  auto& sr = std::get<spg::SplitResult>(res);
  CHECK(sr.t.size() >= 40);
  CHECK(sr.t_prime.size() >= 40);
  CHECK(sr.t.unite(sr.t_prime) == g.vertices());
  CHECK_FALSE(sr.t.intersects(sr.t_prime));
}

TEST_CASE("balanced_dense_split documented single-witness instance") {
  // A = 120 independent vertices, b adjacent to 60 of them.
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < 60; ++v) e.emplace_back(120, v);
  Graph g = Graph::from_edge_list(121, e);
  VertexSet a(121);
  for (int v = 0; v < 120; ++v) a.insert(v);
  VertexSet b = VertexSet::of(121, {120});
  auto res = spg::balanced_dense_split(g, a, b, Rational(1, 2), 7);
  REQUIRE(std::holds_alternative<spg::SplitResult>(res));
  auto& sr = std::get<spg::SplitResult>(res);
  CHECK(sr.t.size() >= 40);
  CHECK(sr.t.size() <= 80);
  CHECK(g.degree_in(120, sr.t) >= 20);  // (1/2)(1/3)|A|
  CHECK(spg::is_dense_to(g, b, sr.t, Rational(1, 4)));
}

TEST_CASE("balanced_dense_split preconditions") {
  Graph small = fixtures::edgeless(10);
  CHECK_THROWS_AS(
      spg::balanced_dense_split(small, small.vertices(), VertexSet(10), Rational(1, 2), 1),
      spg::ContractError);  // |A| < 100

  Graph g = fixtures::edgeless(130);
  VertexSet a(130);
  for (int v = 0; v < 120; ++v) a.insert(v);
  VertexSet big_b(130);
  for (int v = 120; v < 125; ++v) big_b.insert(v);
  // |B| = 5 > ceil((alpha/100)|A|) = 1
  CHECK_THROWS_AS(spg::balanced_dense_split(g, a, big_b, Rational(1, 2), 1),
                  spg::ContractError);

  // B not alpha-dense to A
  VertexSet one_b = VertexSet::of(130, {120});
  CHECK_THROWS_AS(spg::balanced_dense_split(g, a, one_b, Rational(1, 2), 1),
                  spg::ContractError);
}

TEST_CASE("balanced_dense_split is deterministic in the seed") {
  Graph g = fixtures::edgeless(120);
  auto r1 = spg::balanced_dense_split(g, g.vertices(), VertexSet(120), Rational(1, 2), 5);
  auto r2 = spg::balanced_dense_split(g, g.vertices(), VertexSet(120), Rational(1, 2), 5);
  REQUIRE(std::holds_alternative<spg::SplitResult>(r1));
  REQUIRE(std::holds_alternative<spg::SplitResult>(r2));
  CHECK(std::get<spg::SplitResult>(r1).t == std::get<spg::SplitResult>(r2).t);
}
