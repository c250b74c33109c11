#pragma once

#include <vector>

#include "spg/errors.hpp"
#include "spg/graph.hpp"
#include "spg/rational.hpp"
#include "spg/sparsity.hpp"
#include "spg/vertex_set.hpp"

namespace spg {

struct OracleResult {
  int min_parts = 0;
  std::vector<VertexSet> witness;
};

// Exhaustive minimum eps-sparse partition by enumerating all set partitions
// in restricted-growth-string order. Always succeeds: singletons have max
// degree 0. Ground truth for small-instance acceptance only.
inline OracleResult min_sparse_partition_oracle(const Graph& g, const Rational& eps,
                                                int cap = 10) {
  if (g.n() > cap)
    throw CapacityError("oracle capped at n <= " + std::to_string(cap) +
                        " (set partitions grow as Bell numbers)");
  int n = g.n();
  if (n == 0) return {0, {}};

  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  int best = n + 1;
  std::vector<VertexSet> best_blocks;

  auto evaluate = [&]() {
    int blocks = 0;
    for (int v = 0; v < n; ++v) blocks = std::max(blocks, rgs[std::size_t(v)] + 1);
    if (blocks >= best) return;  // first minimum in RGS order wins
    std::vector<VertexSet> parts(static_cast<std::size_t>(blocks), VertexSet(n));
    for (int v = 0; v < n; ++v) parts[std::size_t(rgs[std::size_t(v)])].insert(v);
    for (const auto& p : parts)
      if (!is_sparse_set(g, p, eps)) return;
    best = blocks;
    best_blocks = parts;
  };

  // iterate restricted growth strings: rgs[0]=0, rgs[i] <= 1+max(prefix)
  while (true) {
    evaluate();
    int i = n - 1;
    for (; i >= 1; --i) {
      int prefix_max = 0;
      for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs[std::size_t(j)]);
      if (rgs[std::size_t(i)] <= prefix_max) {
        rgs[std::size_t(i)] += 1;
        for (int j = i + 1; j < n; ++j) rgs[std::size_t(j)] = 0;
        break;
      }
    }
    if (i == 0) break;
  }
  if (best > n)
    throw InternalError("oracle found no valid partition (singletons must work)");
  return {best, best_blocks};
}

}  // namespace spg
