#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "spg/errors.hpp"
#include "spg/graph.hpp"
#include "spg/vertex_set.hpp"

namespace spg {

// A generated test graph together with the clique bound its family
// advertises: the graph is K_{r+1}-free for the stated r.
struct GeneratedGraph {
  Graph graph;
  int r;
  std::string name;
};

namespace gen {

// Iterated Mycielski construction from K_2: one iteration gives C_5, two the
// 11-vertex Grötzsch graph. Triangle-free at every step.
inline GeneratedGraph mycielski(int iterations) {
  if (iterations < 0 || iterations > 10)
    throw ParameterError("mycielski: iterations must be in [0, 10]");
  int n = 2;
  std::vector<std::pair<int, int>> edges = {{0, 1}};
  for (int it = 0; it < iterations; ++it) {
    std::vector<std::pair<int, int>> next = edges;
    for (auto [u, v] : edges) {
      next.emplace_back(u, n + v);
      next.emplace_back(v, n + u);
    }
    for (int i = 0; i < n; ++i) next.emplace_back(n + i, 2 * n);
    n = 2 * n + 1;
    edges = std::move(next);
  }
  return {Graph::from_edge_list(n, edges), 2,
          "mycielski_" + std::to_string(iterations)};
}

// Kneser graph K(n,k): k-subsets of [n], adjacent when disjoint. Clique
// number floor(n/k).
inline GeneratedGraph kneser(int n, int k) {
  if (n < 1 || n > 16 || k < 1 || k > n)
    throw ParameterError("kneser: need 1 <= k <= n <= 16");
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (std::popcount(mask) == k) subsets.push_back(mask);
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (std::size_t j = i + 1; j < subsets.size(); ++j)
      if ((subsets[i] & subsets[j]) == 0)
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  int r = std::max(2, n / k);
  return {Graph::from_edge_list(static_cast<int>(subsets.size()), edges), r,
          "kneser_" + std::to_string(n) + "_" + std::to_string(k)};
}

// Complete multipartite graph with the given part sizes; K_{r+1}-free for
// r = number of parts.
inline GeneratedGraph multipartite_blowup(const std::vector<int>& sizes) {
  if (sizes.empty()) throw ParameterError("multipartite_blowup: need at least one part");
  int n = 0;
  std::vector<int> offset;
  for (int s : sizes) {
    if (s < 1) throw ParameterError("multipartite_blowup: part sizes must be positive");
    offset.push_back(n);
    n += s;
  }
  std::vector<std::pair<int, int>> edges;
  for (std::size_t a = 0; a < sizes.size(); ++a)
    for (std::size_t b = a + 1; b < sizes.size(); ++b)
      for (int i = 0; i < sizes[a]; ++i)
        for (int j = 0; j < sizes[b]; ++j)
          edges.emplace_back(offset[a] + i, offset[b] + j);
  std::string name = "blowup";
  for (int s : sizes) name += "_" + std::to_string(s);
  return {Graph::from_edge_list(n, edges), std::max<int>(2, static_cast<int>(sizes.size())),
          name};
}

// C_5 with vertices blown up to independent sets; triangle-free.
inline GeneratedGraph c5_blowup(const std::vector<int>& sizes) {
  if (sizes.size() != 5) throw ParameterError("c5_blowup: need exactly 5 part sizes");
  int n = 0;
  std::vector<int> offset;
  for (int s : sizes) {
    if (s < 1) throw ParameterError("c5_blowup: part sizes must be positive");
    offset.push_back(n);
    n += s;
  }
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < 5; ++a) {
    int b = (a + 1) % 5;
    for (int i = 0; i < sizes[std::size_t(a)]; ++i)
      for (int j = 0; j < sizes[std::size_t(b)]; ++j)
        edges.emplace_back(offset[std::size_t(a)] + i, offset[std::size_t(b)] + j);
  }
  std::string name = "c5blowup";
  for (int s : sizes) name += "_" + std::to_string(s);
  return {Graph::from_edge_list(n, edges), 2, name};
}

// Erdős–Rényi graph followed by greedy edge deletion until no K_{r+1}
// remains: from each found clique, the edge between the two highest-degree
// vertices (ties by id) is removed. A reproducible corpus source, not a
// uniform sampler.
inline GeneratedGraph random_kfree(int n, int r, double avg_degree, std::uint64_t seed,
                                   int n_max = kDefaultMaxVertices) {
  if (n < 1 || n > n_max) throw ParameterError("random_kfree: n out of range");
  if (r < 2) throw ParameterError("random_kfree: need r >= 2");
  if (avg_degree < 0) throw ParameterError("random_kfree: need avg_degree >= 0");
  std::mt19937_64 rng(seed);
  double p = n > 1 ? std::min(1.0, avg_degree / (n - 1)) : 0.0;
  const std::uint64_t cut = static_cast<std::uint64_t>(p * 18446744073709551615.0);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng() <= cut && p > 0) edges.emplace_back(u, v);

  while (true) {
    Graph g = Graph::from_edge_list(n, edges, n_max);
    auto clique = find_clique(g, r + 1, g.vertices());
    if (!clique) {
      return {std::move(g), r,
              "random_kfree_n" + std::to_string(n) + "_r" + std::to_string(r) + "_s" +
                  std::to_string(seed)};
    }
    std::vector<int> by_degree = *clique;
    std::sort(by_degree.begin(), by_degree.end(), [&](int a, int b) {
      int da = g.adjacency(a).size(), db = g.adjacency(b).size();
      return da != db ? da > db : a < b;
    });
    int u = std::min(by_degree[0], by_degree[1]);
    int v = std::max(by_degree[0], by_degree[1]);
    std::erase_if(edges, [&](const std::pair<int, int>& e) {
      return (std::min(e.first, e.second) == u && std::max(e.first, e.second) == v);
    });
  }
}

inline GeneratedGraph random_bipartite(int na, int nb, double p, std::uint64_t seed,
                                       int n_max = kDefaultMaxVertices) {
  if (na < 0 || nb < 0 || na + nb > n_max)
    throw ParameterError("random_bipartite: sizes out of range");
  if (p < 0 || p > 1) throw ParameterError("random_bipartite: need 0 <= p <= 1");
  std::mt19937_64 rng(seed);
  const std::uint64_t cut = static_cast<std::uint64_t>(p * 18446744073709551615.0);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < na; ++u)
    for (int v = 0; v < nb; ++v)
      if (p > 0 && rng() <= cut) edges.emplace_back(u, na + v);
  return {Graph::from_edge_list(na + nb, edges, n_max), 2,
          "random_bipartite_" + std::to_string(na) + "_" + std::to_string(nb) + "_s" +
              std::to_string(seed)};
}

}  // namespace gen

// Confirms the advertised clique bound: exhaustively for n <= 2000, by
// sampled neighbourhood checks above (a K_{r+1} through v is a K_r inside
// N(v)).
inline bool verify_clique_bound(const GeneratedGraph& gg, std::uint64_t sample_seed = 1,
                                int samples = 50) {
  const Graph& g = gg.graph;
  if (g.n() <= 2000) return !find_clique(g, gg.r + 1, g.vertices());
  std::mt19937_64 rng(sample_seed);
  for (int i = 0; i < samples; ++i) {
    int v = static_cast<int>(rng() % static_cast<std::uint64_t>(g.n()));
    if (find_clique(g, gg.r, g.adjacency(v))) return false;
  }
  return true;
}

}  // namespace spg
