#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spg/errors.hpp"
#include "spg/vertex_set.hpp"

namespace spg {

inline constexpr int kDefaultMaxVertices = 100000;

// Immutable undirected simple graph. All queries are restricted to a caller
// supplied vertex subset, which is the primitive every lemma reasons about.
class Graph {
 public:
  static Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges,
                              int n_max = kDefaultMaxVertices) {
    if (n < 0 || n > n_max) {
      throw InputError("vertex count " + std::to_string(n) + " outside [0," +
                       std::to_string(n_max) + "]");
    }
    std::vector<VertexSet> adj(n, VertexSet(n));
    for (const auto& [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n) {
        throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") references a vertex outside [0," + std::to_string(n) + ")");
      }
      if (u == v) continue;  // drop self-loops
      adj[u].insert(v);
      adj[v].insert(u);
    }
    return Graph(n, std::move(adj));
  }

  int n() const { return n_; }

  const VertexSet& adjacency(int v) const { return adj_[static_cast<std::size_t>(v)]; }

  bool has_edge(int u, int v) const { return adj_[static_cast<std::size_t>(u)].contains(v); }

  VertexSet vertices() const { return VertexSet::full(n_); }

  std::int64_t edge_count() const {
    std::int64_t twice = 0;
    for (const auto& a : adj_) twice += a.size();
    return twice / 2;
  }

  // |N(v) ∩ S|
  int degree_in(int v, const VertexSet& s) const {
    if (v < 0 || v >= n_) throw ContractError("degree_in: vertex out of range");
    return adj_[static_cast<std::size_t>(v)].intersection_size(s);
  }

  // max over v ∈ S of |N(v) ∩ S|; 0 on the empty set.
  int max_degree_in(const VertexSet& s) const {
    int best = 0;
    s.for_each([&](int v) { best = std::max(best, degree_in(v, s)); });
    return best;
  }

 private:
  Graph(int n, std::vector<VertexSet> adj) : n_(n), adj_(std::move(adj)) {}

  int n_;
  std::vector<VertexSet> adj_;
};

inline bool is_pairwise_adjacent(const Graph& g, const std::vector<int>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.has_edge(vs[i], vs[j])) return false;
  return true;
}

namespace detail {

inline bool clique_extend(const Graph& g, int q, std::vector<int>& cur,
                          const VertexSet& cand) {
  if (static_cast<int>(cur.size()) == q) return true;
  if (static_cast<int>(cur.size()) + cand.size() < q) return false;
  bool found = false;
  cand.for_each([&](int v) {
    if (found) return;
    cur.push_back(v);
    // extend with larger ids only; each clique is visited once, in
    // lexicographic order of its sorted vertex list
    VertexSet next = cand.intersect(g.adjacency(v)).suffix_after(v);
    if (clique_extend(g, q, cur, next)) {
      found = true;
      return;
    }
    cur.pop_back();
  });
  return found;
}

}  // namespace detail

// First q-clique inside `within` in lexicographic order, if any. The result
// is re-checked pairwise adjacent before being returned.
inline std::optional<std::vector<int>> find_clique(const Graph& g, int q,
                                                   const VertexSet& within) {
  if (q < 1) throw ParameterError("find_clique: q must be >= 1");
  std::vector<int> cur;
  cur.reserve(static_cast<std::size_t>(q));
  if (!detail::clique_extend(g, q, cur, within)) return std::nullopt;
  if (!is_pairwise_adjacent(g, cur))
    throw InternalError("find_clique produced a non-clique");
  return cur;
}

// Edge-list text format: optional '#' comment lines, a "n <count>" line,
// then one "u v" per line. write_edge_list emits the canonical form (sorted
// u < v pairs) so write -> read round-trips bit-exactly.
inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << "n " << g.n() << "\n";
  for (int u = 0; u < g.n(); ++u) {
    g.adjacency(u).for_each([&](int v) {
      if (u < v) out << u << " " << v << "\n";
    });
  }
}

inline Graph read_edge_list(std::istream& in, int n_max = kDefaultMaxVertices) {
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    if (n < 0) {
      std::string tag;
      ss >> tag >> n;
      if (tag != "n" || !ss || n < 0)
        throw InputError("edge list must start with 'n <count>', got: " + line);
      continue;
    }
    int u, v;
    if (!(ss >> u >> v)) throw InputError("bad edge line: " + line);
    edges.emplace_back(u, v);
  }
  if (n < 0) throw InputError("edge list missing 'n <count>' header");
  return Graph::from_edge_list(n, edges, n_max);
}

inline Graph read_edge_list_file(const std::string& path,
                                 int n_max = kDefaultMaxVertices) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path);
  return read_edge_list(in, n_max);
}

inline void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write graph file: " + path);
  write_edge_list(g, out);
}

}  // namespace spg
