#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "spg/errors.hpp"
#include "spg/graph.hpp"
#include "spg/rational.hpp"
#include "spg/vertex_set.hpp"

namespace spg {

// S is eps-sparse when G[S] has maximum degree at most eps|S|.
inline bool is_sparse_set(const Graph& g, const VertexSet& s, const Rational& eps) {
  return eps.le_scaled(g.max_degree_in(s), s.size());
}

// Every vertex of B has at least alpha|A| neighbours in A.
inline bool is_dense_to(const Graph& g, const VertexSet& b, const VertexSet& a,
                        const Rational& alpha) {
  if (b.intersects(a)) throw ContractError("is_dense_to: sets must be disjoint");
  std::int64_t asz = a.size();
  bool ok = true;
  b.for_each([&](int v) {
    if (ok && !alpha.ge_scaled(g.degree_in(v, a), asz)) ok = false;
  });
  return ok;
}

// Every vertex of B has at most alpha|A| neighbours in A.
inline bool is_sparse_to(const Graph& g, const VertexSet& b, const VertexSet& a,
                         const Rational& alpha) {
  if (b.intersects(a)) throw ContractError("is_sparse_to: sets must be disjoint");
  std::int64_t asz = a.size();
  bool ok = true;
  b.for_each([&](int v) {
    if (ok && !alpha.le_scaled(g.degree_in(v, a), asz)) ok = false;
  });
  return ok;
}

struct FullnessParams {
  Rational alpha;  // subset-size fraction
  Rational beta;   // exception fraction
  Rational gamma;  // density threshold
};

// Certified: no violating X exists (exact engine) / Violated: witness pair /
// Unknown: heuristic strategies exhausted without a witness.
struct FullnessVerdict {
  enum class Kind { Certified, Violated, Unknown };
  Kind kind = Kind::Unknown;
  VertexSet x;
  VertexSet y;
  std::string engine;
  std::string report;

  bool certified() const { return kind == Kind::Certified; }
  bool violated() const { return kind == Kind::Violated; }

  std::string serialize(const FullnessParams& p) const {
    std::ostringstream out;
    out << "fullness{engine=" << engine << " alpha=" << p.alpha.str()
        << " beta=" << p.beta.str() << " gamma=" << p.gamma.str() << " verdict=";
    switch (kind) {
      case Kind::Certified:
        out << "certified";
        break;
      case Kind::Unknown:
        out << "unknown " << report;
        break;
      case Kind::Violated: {
        out << "violated X=[";
        bool fst = true;
        x.for_each([&](int v) { out << (fst ? "" : ",") << v; fst = false; });
        out << "] Y=[";
        fst = true;
        y.for_each([&](int v) { out << (fst ? "" : ",") << v; fst = false; });
        out << "]";
        break;
      }
    }
    out << "}";
    return out.str();
  }
};

// Re-check a claimed violation against the definition: |X| >= ceil(alpha|A|),
// strictly more than beta|B| vertices of Y, and every y in Y has fewer than
// gamma|X| neighbours in X.
inline bool verify_fullness_violation(const Graph& g, const VertexSet& a,
                                      const VertexSet& b, const FullnessParams& p,
                                      const VertexSet& x, const VertexSet& y) {
  if (!x.subset_of(a) || !y.subset_of(b)) return false;
  std::int64_t xsz = x.size();
  if (xsz < p.alpha.ceil_mul(a.size())) return false;
  if (!p.beta.gt_scaled(y.size(), b.size())) return false;
  bool ok = true;
  y.for_each([&](int v) {
    if (ok && !p.gamma.lt_scaled(g.degree_in(v, x), xsz)) ok = false;
  });
  return ok;
}

inline constexpr int kDefaultExactFullnessCap = 20;

// Exhaustive fullness check: enumerates every X ⊆ A with |X| >= ceil(alpha|A|)
// in lexicographic bitmask order over the sorted vertex list of A. Violation
// is not monotone in |X|, so all sizes above the threshold are visited.
inline FullnessVerdict check_fullness_exact(const Graph& g, const VertexSet& a,
                                            const VertexSet& b, const FullnessParams& p,
                                            int exact_cap = kDefaultExactFullnessCap) {
  if (a.intersects(b)) throw ContractError("check_fullness_exact: sets must be disjoint");
  std::vector<int> av = a.to_vector();
  int asz = static_cast<int>(av.size());
  if (asz > exact_cap)
    throw CapacityError("exact fullness check capped at |A| <= " +
                        std::to_string(exact_cap) + ", got " + std::to_string(asz) +
                        "; use the heuristic engine");
  std::vector<int> bv = b.to_vector();
  std::vector<std::uint64_t> rows(bv.size(), 0);
  for (std::size_t i = 0; i < bv.size(); ++i)
    for (int j = 0; j < asz; ++j)
      if (g.has_edge(bv[i], av[j])) rows[i] |= (1ull << j);

  std::int64_t need = p.alpha.ceil_mul(asz);
  std::int64_t bsz = static_cast<std::int64_t>(bv.size());
  for (std::uint64_t mask = 0; mask < (1ull << asz); ++mask) {
    int xsz = std::popcount(mask);
    if (xsz < need) continue;
    std::int64_t bad = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (p.gamma.lt_scaled(std::popcount(rows[i] & mask), xsz)) ++bad;
    if (p.beta.gt_scaled(bad, bsz)) {
      FullnessVerdict v;
      v.kind = FullnessVerdict::Kind::Violated;
      v.engine = "exact";
      v.x = VertexSet(a.universe());
      v.y = VertexSet(a.universe());
      for (int j = 0; j < asz; ++j)
        if (mask & (1ull << j)) v.x.insert(av[j]);
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (p.gamma.lt_scaled(std::popcount(rows[i] & mask), xsz)) v.y.insert(bv[i]);
      if (!verify_fullness_violation(g, a, b, p, v.x, v.y))
        throw InternalError("exact engine produced an unverifiable violation witness");
      return v;
    }
  }
  FullnessVerdict v;
  v.kind = FullnessVerdict::Kind::Certified;
  v.engine = "exact";
  return v;
}

enum class ViolationStrategy { NonNeighborhood, GreedyPeel, RandomSubsets };

inline std::vector<ViolationStrategy> default_violation_strategies() {
  return {ViolationStrategy::NonNeighborhood, ViolationStrategy::GreedyPeel,
          ViolationStrategy::RandomSubsets};
}

namespace detail {

// Build the exception set Y for a candidate X; nullopt when |Y| <= beta|B|.
inline std::optional<VertexSet> violation_for_candidate(const Graph& g, const VertexSet& b,
                                                        const FullnessParams& p,
                                                        const VertexSet& x) {
  std::int64_t xsz = x.size();
  VertexSet y(b.universe());
  std::int64_t bad = 0;
  b.for_each([&](int v) {
    if (p.gamma.lt_scaled(g.degree_in(v, x), xsz)) {
      y.insert(v);
      ++bad;
    }
  });
  if (p.beta.gt_scaled(bad, b.size())) return y;
  return std::nullopt;
}

}  // namespace detail

// Sound-but-incomplete violation search for pairs too large for the exact
// engine. Any Violated verdict is re-verified against the definition;
// Unknown carries per-strategy counts and proves nothing.
inline FullnessVerdict search_fullness_violation(
    const Graph& g, const VertexSet& a, const VertexSet& b, const FullnessParams& p,
    const std::vector<ViolationStrategy>& strategies, std::uint64_t seed,
    int random_subsets = 32, int greedy_peel_cap = 512) {
  if (a.intersects(b))
    throw ContractError("search_fullness_violation: sets must be disjoint");
  std::vector<int> av = a.to_vector();
  std::int64_t asz = static_cast<std::int64_t>(av.size());
  std::int64_t need = p.alpha.ceil_mul(asz);
  std::ostringstream report;

  auto attempt = [&](const VertexSet& x) -> std::optional<FullnessVerdict> {
    if (x.size() < need) return std::nullopt;
    auto y = detail::violation_for_candidate(g, b, p, x);
    if (!y) return std::nullopt;
    if (!verify_fullness_violation(g, a, b, p, x, *y)) return std::nullopt;
    FullnessVerdict v;
    v.kind = FullnessVerdict::Kind::Violated;
    v.engine = "heuristic";
    v.x = x;
    v.y = *y;
    return v;
  };

  for (ViolationStrategy strat : strategies) {
    switch (strat) {
      case ViolationStrategy::NonNeighborhood: {
        // X = A \ N(b), padded with the smallest remaining A-vertices when
        // below the size threshold; also try the truncated minimum-size set.
        int tried = 0;
        std::optional<FullnessVerdict> hit;
        b.for_each([&](int bv) {
          if (hit) return;
          VertexSet x = a.minus(g.adjacency(bv));
          if (x.size() < need) {
            for (int u : av) {
              if (x.size() >= need) break;
              if (!x.contains(u)) x.insert(u);
            }
          }
          ++tried;
          hit = attempt(x);
          if (hit) return;
          if (x.size() > need) {
            VertexSet trunc(a.universe());
            std::int64_t taken = 0;
            x.for_each([&](int u) {
              if (taken < need) {
                trunc.insert(u);
                ++taken;
              }
            });
            hit = attempt(trunc);
          }
        });
        if (hit) return *hit;
        report << "non_neighborhood=" << tried << " ";
        break;
      }
      case ViolationStrategy::GreedyPeel: {
        if (asz > greedy_peel_cap) {
          report << "greedy_peel=skipped(|A|>" << greedy_peel_cap << ") ";
          break;
        }
        // Peel the A-vertex whose removal maximizes the gamma-sparse count
        // in B, testing each prefix set on the way down.
        VertexSet x = a;
        int tested = 0;
        while (x.size() >= need && !x.empty()) {
          if (auto hit = attempt(x)) return *hit;
          ++tested;
          int best_v = -1;
          std::int64_t best_bad = -1;
          x.for_each([&](int u) {
            VertexSet cand = x;
            cand.erase(u);
            std::int64_t csz = cand.size();
            std::int64_t bad = 0;
            b.for_each([&](int w) {
              if (p.gamma.lt_scaled(g.degree_in(w, cand), csz)) ++bad;
            });
            if (bad > best_bad) {  // ties resolved by lowest id (first seen)
              best_bad = bad;
              best_v = u;
            }
          });
          if (best_v < 0) break;
          x.erase(best_v);
        }
        report << "greedy_peel=" << tested << " ";
        break;
      }
      case ViolationStrategy::RandomSubsets: {
        std::mt19937_64 rng(seed);
        std::vector<std::int64_t> sizes = {need, std::min<std::int64_t>(2 * need, asz),
                                           asz / 2};
        int tried = 0;
        for (std::int64_t target : sizes) {
          if (target < need || target > asz) continue;
          for (int t = 0; t < random_subsets; ++t) {
            std::vector<int> pool = av;
            for (std::size_t i = pool.size(); i > 1; --i)
              std::swap(pool[i - 1], pool[rng() % i]);
            VertexSet x(a.universe());
            for (std::int64_t i = 0; i < target; ++i) x.insert(pool[static_cast<std::size_t>(i)]);
            ++tried;
            if (auto hit = attempt(x)) return *hit;
          }
        }
        report << "random_subsets=" << tried << " ";
        break;
      }
    }
  }
  FullnessVerdict v;
  v.kind = FullnessVerdict::Kind::Unknown;
  v.engine = "heuristic";
  v.report = report.str();
  return v;
}

// Engine selector shared by everything that needs fullness checks.
struct FullnessEngine {
  enum class Mode { Exact, Heuristic, Auto };
  Mode mode = Mode::Auto;
  int exact_cap = kDefaultExactFullnessCap;
  std::vector<ViolationStrategy> strategies = default_violation_strategies();
  std::uint64_t seed = 0;

  FullnessVerdict check(const Graph& g, const VertexSet& a, const VertexSet& b,
                        const FullnessParams& p) const {
    bool exact = mode == Mode::Exact ||
                 (mode == Mode::Auto && a.size() <= exact_cap);
    if (exact) return check_fullness_exact(g, a, b, p, exact_cap);
    return search_fullness_violation(g, a, b, p, strategies, seed);
  }
};

// Applies the engine to every ordered pair (S_i, S_j), i < j. Certified only
// when all pairs certify; the first non-certified pair's verdict is returned.
inline FullnessVerdict check_sequence_fullness(const Graph& g,
                                               const std::vector<VertexSet>& sets,
                                               const FullnessParams& p,
                                               const FullnessEngine& engine) {
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      FullnessVerdict v = engine.check(g, sets[i], sets[j], p);
      if (!v.certified()) return v;
    }
  FullnessVerdict v;
  v.kind = FullnessVerdict::Kind::Certified;
  v.engine = "sequence";
  return v;
}

struct SpanningClique {
  std::vector<int> vertices;  // one per input set, pairwise adjacent
};

// Structured failure: no vertex of the last set was gamma-dense to all
// earlier sets at the named recursion level (1-based, counting from the
// innermost set).
struct SpanningFailure {
  int level = 0;
};

// Clique extractor for a full sequence: pick the first vertex of S_r that is
// gamma-dense to every earlier set, restrict the earlier sets to its
// neighbourhood, recurse. Success output is re-verified pairwise adjacent.
inline std::variant<SpanningClique, SpanningFailure> find_spanning_clique(
    const Graph& g, std::vector<VertexSet> sets, const Rational& gamma) {
  if (sets.empty()) throw ParameterError("find_spanning_clique: need r >= 1 sets");
  if (gamma.is_zero() || gamma > Rational(1, 2))
    throw ParameterError("find_spanning_clique: need 0 < gamma <= 1/2");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) throw ContractError("find_spanning_clique: empty input set");
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (sets[i].intersects(sets[j]))
        throw ContractError("find_spanning_clique: sets must be disjoint");
  }

  std::vector<int> picked;
  int r = static_cast<int>(sets.size());
  for (int level = r; level >= 2; --level) {
    VertexSet& last = sets[static_cast<std::size_t>(level - 1)];
    int chosen = -1;
    last.for_each([&](int v) {
      if (chosen >= 0) return;
      for (int i = 0; i < level - 1; ++i) {
        const VertexSet& si = sets[static_cast<std::size_t>(i)];
        if (!gamma.ge_scaled(g.degree_in(v, si), si.size())) return;
      }
      chosen = v;
    });
    if (chosen < 0) return SpanningFailure{level};
    picked.push_back(chosen);
    for (int i = 0; i < level - 1; ++i) {
      sets[static_cast<std::size_t>(i)] =
          sets[static_cast<std::size_t>(i)].intersect(g.adjacency(chosen));
      if (sets[static_cast<std::size_t>(i)].empty()) return SpanningFailure{level};
    }
  }
  picked.push_back(sets[0].first());
  std::reverse(picked.begin(), picked.end());
  if (!is_pairwise_adjacent(g, picked))
    throw InternalError("find_spanning_clique produced a non-clique");
  return SpanningClique{picked};
}

}  // namespace spg
