#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "spg/bench.hpp"
#include "spg/certificate.hpp"
#include "spg/generators.hpp"
#include "spg/oracle.hpp"
#include "spg/partitioner.hpp"
#include "test_graphs.hpp"

using spg::Graph;
using spg::Rational;
using spg::VertexSet;

TEST_CASE("mycielski iterations") {
  auto c5 = spg::gen::mycielski(1);
  CHECK(c5.graph.n() == 5);
  CHECK(c5.graph.edge_count() == 5);

  auto grotzsch = spg::gen::mycielski(2);
  CHECK(grotzsch.graph.n() == 11);
  CHECK(grotzsch.graph.edge_count() == 20);
  // triangle-free, confirmed by full triple enumeration
  bool triangle = false;
  for (int a = 0; a < 11; ++a)
    for (int b = a + 1; b < 11; ++b)
      for (int c = b + 1; c < 11; ++c)
        if (grotzsch.graph.has_edge(a, b) && grotzsch.graph.has_edge(b, c) &&
            grotzsch.graph.has_edge(a, c))
          triangle = true;
  CHECK_FALSE(triangle);
  CHECK(grotzsch.r == 2);
}

TEST_CASE("kneser(5,2) is the Petersen graph") {
  auto pet = spg::gen::kneser(5, 2);
  CHECK(pet.graph.n() == 10);
  CHECK(pet.graph.edge_count() == 15);
  for (int v = 0; v < 10; ++v)
    CHECK(pet.graph.degree_in(v, pet.graph.vertices()) == 3);
  CHECK_FALSE(spg::find_clique(pet.graph, 3, pet.graph.vertices()).has_value());
  CHECK(pet.r == 2);
}

TEST_CASE("multipartite blowup K_{2,2,2}") {
  auto b = spg::gen::multipartite_blowup({2, 2, 2});
  CHECK(b.graph.n() == 6);
  CHECK(b.graph.edge_count() == 12);
  CHECK(spg::find_clique(b.graph, 3, b.graph.vertices()).has_value());
  CHECK_FALSE(spg::find_clique(b.graph, 4, b.graph.vertices()).has_value());
  CHECK(b.r == 3);
}

TEST_CASE("c5 blowup is triangle-free") {
  auto b = spg::gen::c5_blowup({3, 3, 3, 3, 3});
  CHECK(b.graph.n() == 15);
  CHECK_FALSE(spg::find_clique(b.graph, 3, b.graph.vertices()).has_value());
}

TEST_CASE("random_kfree respects its clique bound") {
  for (int r : {2, 3, 4}) {
    auto gg = spg::gen::random_kfree(200, r, 10.0, 17);
    CHECK(gg.r == r);
    CHECK(spg::verify_clique_bound(gg));
    CHECK_FALSE(spg::find_clique(gg.graph, r + 1, gg.graph.vertices()).has_value());
  }
}

TEST_CASE("random_bipartite is triangle-free by construction") {
  auto gg = spg::gen::random_bipartite(20, 20, 0.4, 9);
  CHECK(gg.graph.n() == 40);
  CHECK_FALSE(spg::find_clique(gg.graph, 3, gg.graph.vertices()).has_value());
}

TEST_CASE("oracle examples") {
  Graph none = fixtures::edgeless(6);
  CHECK(spg::min_sparse_partition_oracle(none, Rational(1, 7)).min_parts == 1);

  // K_4 at eps=1/2: two adjacent pairs work, one part cannot (3 > 2)
  Graph k4 = fixtures::complete(4);
  auto res = spg::min_sparse_partition_oracle(k4, Rational(1, 2));
  CHECK(res.min_parts == 2);
  for (auto& part : res.witness)
    CHECK(spg::is_sparse_set(k4, part, Rational(1, 2)));

  Graph c5 = fixtures::cycle(5);
  CHECK(spg::min_sparse_partition_oracle(c5, Rational(2, 5)).min_parts == 1);
  CHECK(spg::min_sparse_partition_oracle(fixtures::edgeless(0), Rational(1, 2)).min_parts ==
        0);
}

TEST_CASE("oracle respects its cap") {
  Graph big = fixtures::edgeless(11);
  CHECK_THROWS_AS(spg::min_sparse_partition_oracle(big, Rational(1, 2)),
                  spg::CapacityError);
  CHECK(spg::min_sparse_partition_oracle(big, Rational(1, 2), 12).min_parts == 1);
}

TEST_CASE("oracle minimum is tight against brute-force sparsity checks") {
  // Any (min_parts - 1)-sized split must fail; the witness must pass.
  Graph pet_sub = fixtures::cycle(6);
  Rational eps(1, 6);
  auto res = spg::min_sparse_partition_oracle(pet_sub, eps);
  VertexSet seen(pet_sub.n());
  for (auto& part : res.witness) {
    CHECK(spg::is_sparse_set(pet_sub, part, eps));
    CHECK_FALSE(seen.intersects(part));
    seen = seen.unite(part);
  }
  CHECK(seen == pet_sub.vertices());
  CHECK(res.min_parts >= 2);  // C_6 at eps=1/6: one part has max degree 2 > 1
}

TEST_CASE("corpus loader") {
  std::string path = "/tmp/spg_test_corpus.txt";
  {
    std::ofstream out(path);
    out << "# comment line\n";
    out << "mycielski 2\n";
    out << "kneser 5 2\n";
    out << "blowup 2 2 2\n";
    out << "random_kfree 50 3 4 9\n";
  }
  auto corpus = spg::load_corpus_file(path);
  REQUIRE(corpus.size() == 4);
  CHECK(corpus[0].graph.n() == 11);
  CHECK(corpus[1].graph.n() == 10);
  CHECK(corpus[2].graph.n() == 6);
  CHECK(corpus[3].graph.n() == 50);
  std::remove(path.c_str());
}

TEST_CASE("bench sweep") {
  // empty corpus: header-only CSV
  std::string empty = spg::bench_sweep({}, {Rational(1, 4)}, 2,
                                       {spg::PartitionMode::Faithful}, {1}, {}, false);
  CHECK(empty == std::string("# spg-bench/1\n") + spg::kBenchCsvHeader + "\n");

  // Petersen at 3/10: one row with part_count=1
  std::vector<spg::GeneratedGraph> corpus = {spg::gen::kneser(5, 2)};
  std::string csv = spg::bench_sweep(corpus, {Rational(3, 10)}, 2,
                                     {spg::PartitionMode::Faithful}, {1}, {}, false);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // # spg-bench/1
  std::getline(lines, line);  // header
  std::getline(lines, line);
  CHECK(line.find(",10,15,3/10,2,faithful,1,1,") != std::string::npos);
  CHECK(line.find(",ok") != std::string::npos);

  // determinism without timing: byte-identical on re-run
  std::string again = spg::bench_sweep(corpus, {Rational(3, 10)}, 2,
                                       {spg::PartitionMode::Faithful}, {1}, {}, false);
  CHECK(csv == again);
}

TEST_CASE("certificate file round trip") {
  Graph g = fixtures::petersen();
  auto out = spg::partition(g, Rational(3, 10), 2, spg::PartitionMode::Faithful, {}, 4);
  REQUIRE(std::holds_alternative<spg::Certificate>(out));
  auto& cert = std::get<spg::Certificate>(out);
  std::string path = "/tmp/spg_test_cert.json";
  spg::write_certificate_file(cert, path);
  auto back = spg::read_certificate_file(path);
  CHECK(spg::certificate_to_string(back) == spg::certificate_to_string(cert));
  CHECK(spg::verify_certificate(g, back).ok);
  std::remove(path.c_str());

  CHECK_THROWS_AS(spg::read_certificate_file("/tmp/definitely_missing_cert.json"),
                  spg::InputError);
}
