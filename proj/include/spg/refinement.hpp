#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "spg/errors.hpp"
#include "spg/extraction.hpp"
#include "spg/graph.hpp"
#include "spg/rational.hpp"
#include "spg/sparsity.hpp"
#include "spg/vertex_set.hpp"

namespace spg {

// 2 e^{-delta^2 mu / 3}: tail bound for a binomial with mean mu.
inline double chernoff_tail(double mu, double delta) {
  if (mu < 0) throw ParameterError("chernoff_tail: need mu >= 0");
  if (delta <= 0 || delta >= 1) throw ParameterError("chernoff_tail: need 0 < delta < 1");
  return 2.0 * std::exp(-delta * delta * mu / 3.0);
}

struct RefineTrace {
  int iterations = 0;
  std::vector<std::pair<int, int>> witness_sizes;  // (|X|, |Y|) per iteration
  bool certified = false;

  std::string serialize() const {
    std::string out = "refine{n=" + std::to_string(iterations) +
                      " certified=" + (certified ? "yes" : "no") + " witnesses=";
    for (auto& [x, y] : witness_sizes)
      out += "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    return out + "}";
  }
};

struct RefineResult {
  VertexSet a_prime;
  VertexSet b_prime;
  RefineTrace trace;
};

// Iterative densification: strip fullness-violation witnesses from (A', B')
// until the pair is (alpha^l, beta, alpha/2)-full (or the engine gives up).
// Guarantees |A'| >= (alpha/2)|A| and |B'| >= beta^{(1/alpha)^{2l}}|B|.
inline RefineResult refine_pair(const Graph& g, const VertexSet& a, const VertexSet& b,
                                const Rational& alpha, const Rational& beta, int l,
                                const FullnessEngine& engine) {
  if (a.intersects(b)) throw ContractError("refine_pair: sets must be disjoint");
  if (alpha.is_zero() || alpha > Rational(1, 1) || beta.is_zero() || beta > Rational(1, 1))
    throw ParameterError("refine_pair: need 0 < alpha, beta <= 1");
  if (l < 1) throw ParameterError("refine_pair: need l >= 1");
  if (!is_dense_to(g, b, a, alpha))
    throw ContractError("refine_pair: B must be alpha-dense to A");

  auto alpha_l = Rational::pow(alpha, l);
  if (!alpha_l) throw ParameterError("refine_pair: alpha^l overflows; reduce l");
  Rational half_alpha = alpha.div_int(2);
  FullnessParams params{*alpha_l, beta, half_alpha};

  // The proof's claim bounds the iteration count by (1/alpha)^{2l}; exceeding
  // it with the exact engine means a bug.
  double iter_limit_log2 = inverse_pow_log2(alpha, 2.0 * l);
  std::int64_t asz = a.size();

  RefineResult out;
  out.a_prime = a;
  out.b_prime = b;
  while (true) {
    FullnessVerdict v = engine.check(g, out.a_prime, out.b_prime, params);
    if (v.certified()) {
      out.trace.certified = true;
      break;
    }
    if (!v.violated()) break;  // heuristic exhausted: stop with what we have
    out.a_prime = out.a_prime.minus(v.x);
    out.b_prime = v.y;
    out.trace.iterations += 1;
    out.trace.witness_sizes.emplace_back(v.x.size(), v.y.size());
    if (std::log2(static_cast<double>(out.trace.iterations)) > iter_limit_log2 + 1e-9)
      throw InternalError("refine_pair: iteration count exceeded (1/alpha)^{2l}");
    // per-iteration degree invariant from the proof, exact
    std::int64_t combined = asz + out.a_prime.size();
    bool deg_ok = true;
    out.b_prime.for_each([&](int y) {
      if (deg_ok && !half_alpha.ge_scaled(g.degree_in(y, out.a_prime), combined))
        deg_ok = false;
    });
    if (!deg_ok)
      throw InternalError("refine_pair: B' degree invariant violated at iteration " +
                          std::to_string(out.trace.iterations));
  }

  if (!b.empty()) {
    if (half_alpha.lt_scaled(out.a_prime.size(), asz))
      throw InternalError("refine_pair: |A'| >= (alpha/2)|A| violated");
    double blog = std::log2(static_cast<double>(out.b_prime.size()));
    double bound = -std::exp2(iter_limit_log2) *
                       (std::log2(static_cast<double>(beta.den())) -
                        std::log2(static_cast<double>(beta.num()))) +
                   std::log2(static_cast<double>(b.size()));
    if (blog + 1e-9 < bound)
      throw InternalError("refine_pair: |B'| lower bound violated");
  }
  return out;
}

struct SplitResult {
  VertexSet t;        // B is (alpha/2)-dense to this side
  VertexSet t_prime;  // A \ T
  int retries = 0;
  std::uint64_t seed = 0;
};

// Rejection sampling hit the retry cap; carries the seed for reproduction.
struct SplitFailure {
  int retries = 0;
  std::uint64_t seed = 0;
};

inline constexpr int kDefaultSplitRetryCap = 200;

// Randomized balanced split: sample T ⊆ A with per-vertex probability 1/2
// until |A|/3 <= |T| <= 2|A|/3 and every B-vertex keeps >= alpha|A|/3
// neighbours in T. Acceptance yields B (alpha/2)-dense to T.
inline std::variant<SplitResult, SplitFailure> balanced_dense_split(
    const Graph& g, const VertexSet& a, const VertexSet& b, const Rational& alpha,
    std::uint64_t seed, int retry_cap = kDefaultSplitRetryCap) {
  if (a.intersects(b)) throw ContractError("balanced_dense_split: sets must be disjoint");
  std::int64_t asz = a.size();
  if (asz < 100) throw ContractError("balanced_dense_split: need |A| >= 100");
  // Ceiling keeps the smallest legal |A| usable with a nonempty B.
  if (b.size() > alpha.div_int(100).ceil_mul(asz))
    throw ContractError("balanced_dense_split: need |B| <= ceil((alpha/100)|A|)");
  if (!is_dense_to(g, b, a, alpha))
    throw ContractError("balanced_dense_split: B must be alpha-dense to A");

  Rational third = alpha.div_int(3);
  Rational half_alpha = alpha.div_int(2);
  std::vector<int> av = a.to_vector();
  std::mt19937_64 rng(seed);

  for (int attempt = 0; attempt < retry_cap; ++attempt) {
    VertexSet t(a.universe());
    for (int v : av)
      if (rng() & 1) t.insert(v);
    std::int64_t tsz = t.size();
    if (3 * tsz < asz || 3 * tsz > 2 * asz) continue;  // (i)
    bool ok = true;
    b.for_each([&](int v) {
      if (ok && !third.ge_scaled(g.degree_in(v, t), asz)) ok = false;  // (ii)
    });
    if (!ok) continue;
    if (!is_dense_to(g, b, t, half_alpha))
      throw InternalError("balanced_dense_split: accepted T not (alpha/2)-dense");
    return SplitResult{t, a.minus(t), attempt, seed};
  }
  return SplitFailure{retry_cap, seed};
}

}  // namespace spg
