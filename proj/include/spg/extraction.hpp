#pragma once

#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

#include "spg/errors.hpp"
#include "spg/graph.hpp"
#include "spg/rational.hpp"
#include "spg/sparsity.hpp"
#include "spg/vertex_set.hpp"

namespace spg {

struct ExtractionResult {
  VertexSet part;                  // alpha-sparse, |part| >= alpha^{r-1}|input|
  std::vector<int> descent_trace;  // the high-degree vertices descended through
};

// Descent ran past r-1 levels, which can only happen when the input induces a
// K_{r+1}. The trace vertices are pairwise adjacent and `remaining` lies in
// their common neighbourhood, so trace + any remaining vertex is a clique
// witness candidate.
struct DescentOverflow {
  std::vector<int> trace;
  VertexSet remaining;
};

// Greedy sparse-set descent: while S is not alpha-sparse, move into the
// neighbourhood of the minimum-id vertex with at least alpha|S| neighbours.
inline std::variant<ExtractionResult, DescentOverflow> extract_sparse_set(
    const Graph& g, const VertexSet& s0, const Rational& alpha, int r) {
  if (alpha.is_zero() || alpha > Rational(1, 1))
    throw ParameterError("extract_sparse_set: need 0 < alpha <= 1");
  if (r < 1) throw ParameterError("extract_sparse_set: need r >= 1");

  VertexSet s = s0;
  std::vector<int> trace;
  while (!is_sparse_set(g, s, alpha)) {
    std::int64_t ssz = s.size();
    int chosen = -1;
    s.for_each([&](int v) {
      if (chosen < 0 && alpha.ge_scaled(g.degree_in(v, s), ssz)) chosen = v;
    });
    if (chosen < 0)
      throw InternalError("extract_sparse_set: non-sparse set without a qualifying vertex");
    trace.push_back(chosen);
    s = s.intersect(g.adjacency(chosen));
    if (static_cast<int>(trace.size()) > r - 1) return DescentOverflow{trace, s};
  }

  // Size guarantee holds whenever the descent stayed within r-1 levels:
  // each level keeps at least an alpha fraction.
  auto frac = Rational::pow(alpha, static_cast<int>(trace.size()));
  if (frac && frac->lt_scaled(s.size(), s0.size()))
    throw InternalError("extract_sparse_set: size guarantee violated");
  return ExtractionResult{s, trace};
}

struct GreedyPartition {
  std::vector<VertexSet> parts;  // all alpha-sparse, pairwise disjoint
  VertexSet leftover;            // the set L
};

// log2 of (1/alpha)^e.
inline double inverse_pow_log2(const Rational& alpha, double e) {
  return e * (std::log2(static_cast<double>(alpha.den())) -
              std::log2(static_cast<double>(alpha.num())));
}

// Bulk extraction: apply extract_sparse_set up to the budget
// floor((1/alpha)^{m+2r-1}) or until the set is exhausted. The leftover bound
// |L| <= alpha^{(r-1)(1/alpha)^m}|G| is asserted afterwards in the log domain.
inline std::variant<GreedyPartition, DescentOverflow> partition_most(
    const Graph& g, const VertexSet& s0, const Rational& alpha, int r, int m) {
  if (alpha.is_zero() || alpha > Rational(1, 2))
    throw ParameterError("partition_most: need 0 < alpha <= 1/2");
  if (r < 2) throw ParameterError("partition_most: need r >= 2");
  if (m < 0) throw ParameterError("partition_most: need m >= 0");

  // The nominal budget can dwarf any representable graph (faithful-mode
  // exponents); it only ever binds when smaller than |S0|, since every
  // extraction removes at least one vertex.
  std::int64_t budget;
  auto exact_budget = alpha.inverse_pow_floor(m + 2 * r - 1);
  if (exact_budget) {
    budget = *exact_budget;
  } else if (inverse_pow_log2(alpha, m + 2 * r - 1) >
             std::log2(static_cast<double>(s0.size()) + 1.0)) {
    budget = s0.size();
  } else {
    throw ParameterError("partition_most: budget overflow; shrink m or grow alpha");
  }

  GreedyPartition out;
  out.leftover = s0;
  for (std::int64_t i = 0; i < budget && !out.leftover.empty(); ++i) {
    auto res = extract_sparse_set(g, out.leftover, alpha, r);
    if (auto* fail = std::get_if<DescentOverflow>(&res)) return *fail;
    auto& ex = std::get<ExtractionResult>(res);
    out.parts.push_back(ex.part);
    out.leftover = out.leftover.minus(ex.part);
  }

  if (!out.leftover.empty()) {
    double lhs = std::log2(static_cast<double>(out.leftover.size()));
    double exponent = (r - 1) * std::pow(alpha.den() / static_cast<double>(alpha.num()), m);
    double rhs = -exponent * inverse_pow_log2(alpha, 1.0) +
                 std::log2(static_cast<double>(s0.size()));
    if (lhs > rhs + 1e-9)
      throw InternalError("partition_most: leftover bound violated");
  }
  return out;
}

// log(LHS) - log(RHS) of (1-x)^{(1/x)^s} <= x^{(1/x)^{s-2}}, i.e.
// (1/x)^s ln(1-x) - (1/x)^{s-2} ln(x). Nonpositive (up to 1e-9) on the
// lemma's domain.
inline double approx_log_margin(const Rational& x, double s) {
  if (x.is_zero() || x >= Rational(1, 1))
    throw ParameterError("approx_log_margin: need 0 < x < 1");
  if (s < 1.0) throw ParameterError("approx_log_margin: need s >= 1");
  double xd = x.value();
  double t = std::log(1.0 / xd);  // ln(1/x) > 0
  return std::exp(s * t) * std::log1p(-xd) - std::exp((s - 2.0) * t) * std::log(xd);
}

}  // namespace spg
