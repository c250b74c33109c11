#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spg/constants.hpp"
#include "spg/errors.hpp"
#include "spg/extraction.hpp"
#include "spg/graph.hpp"
#include "spg/rational.hpp"
#include "spg/refinement.hpp"
#include "spg/sparsity.hpp"
#include "spg/vertex_set.hpp"

namespace spg {

enum class PartitionMode { Faithful, Practical };

inline std::string mode_name(PartitionMode m) {
  return m == PartitionMode::Faithful ? "faithful" : "practical";
}

// Surrogate thresholds that make the escalation machinery reachable at desk
// scale. Output validity never depends on these; they only steer which code
// path produces the parts.
struct PracticalConfig {
  std::int64_t escalation_threshold = 0;   // 0 = auto: 10 * ceil(1/eps) * r
  std::optional<Rational> z0_alpha;        // default eps^2
  std::optional<Rational> beta_surrogate;  // default eps
  int pairs_l = 2;
  int lemma4_m = 0;
  FullnessEngine::Mode engine = FullnessEngine::Mode::Auto;
  int exact_cap = kDefaultExactFullnessCap;
  int split_retry_cap = kDefaultSplitRetryCap;
};

struct Certificate {
  std::string format = "spg-cert/1";
  Rational epsilon;
  int r = 0;
  PartitionMode mode = PartitionMode::Faithful;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> parts;
  std::vector<int> per_part_max_degree;
  std::int64_t part_count = 0;
  double bound_value_log2 = 0.0;
  int escalations = 0;
  int fallbacks = 0;
  std::vector<std::string> traces;
};

// r+1 pairwise-adjacent vertices: the input was not K_{r+1}-free.
struct CliqueWitness {
  std::vector<int> vertices;
};

using PartitionOutcome = std::variant<Certificate, CliqueWitness>;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Per-step child seed: round index and step index fold into the root seed.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t round,
                                 std::uint64_t step) {
  return splitmix64(root ^ splitmix64(round * 131 + step));
}

class PartitionRun {
 public:
  PartitionRun(const Graph& g, const Rational& eps, int r, PartitionMode mode,
               const PracticalConfig& config, std::uint64_t seed)
      : g_(g), eps_(eps), r_(r), mode_(mode), cfg_(config), seed_(seed),
        consts_(solve_constants(r)), rset_(g.vertices()) {
    if (eps_.is_zero() || eps_ > Rational(1, 2))
      throw ParameterError("partition: need 0 < eps <= 1/2 as a rational");
    if (!cfg_.z0_alpha) cfg_.z0_alpha = eps_.times(eps_);
    if (!cfg_.beta_surrogate) cfg_.beta_surrogate = eps_;
    if (cfg_.escalation_threshold <= 0) {
      std::int64_t inv = (eps_.den() + eps_.num() - 1) / eps_.num();
      cfg_.escalation_threshold = 10 * inv * r_;
    }
  }

  PartitionOutcome run() {
    while (true) {
      if (forced_finish_ || below_threshold()) break;
      if (k_ == r_) {
        if (try_claim2_witness()) return CliqueWitness{witness_};
        note("claim2: no spanning clique found; finishing greedily");
        ++fallbacks_;
        break;
      }
      Step outcome = escalate();
      if (outcome == Step::Witness) return CliqueWitness{witness_};
      if (outcome == Step::Fallback) {
        ++fallbacks_;
        forced_finish_ = true;
      }
    }
    if (!finish()) return CliqueWitness{witness_};
    return make_certificate();
  }

  // log2 of the claim-1 leftover threshold: 100 (1/eps)^{r (1/eps)^{a_0}} in
  // faithful mode, the configured surrogate otherwise.
  static double threshold_log2(const Rational& eps, int r, PartitionMode mode,
                               std::int64_t practical_threshold) {
    if (mode == PartitionMode::Practical)
      return std::log2(static_cast<double>(practical_threshold));
    Constants c = solve_constants(r);
    double l = std::log2(static_cast<double>(eps.den())) -
               std::log2(static_cast<double>(eps.num()));
    return std::log2(100.0) + static_cast<double>(r) * std::exp2(c.a[0] * l) * l;
  }

 private:
  enum class Step { Ok, Fallback, Witness };

  bool below_threshold() const {
    if (rset_.empty()) return true;
    double lr = std::log2(static_cast<double>(rset_.size()));
    return lr < threshold_log2(eps_, r_, mode_, cfg_.escalation_threshold);
  }

  void note(const std::string& s) { traces_.push_back(s); }

  // In faithful mode an invariant failure means a bug (or a non-free input
  // that slipped every clique check); in practical mode it means the
  // surrogate constants were too weak, and the greedy finisher takes over.
  Step soft_fail(const std::string& what) {
    if (mode_ == PartitionMode::Faithful)
      throw InternalError("faithful-mode invariant failure: " + what);
    note("fallback: " + what);
    return Step::Fallback;
  }

  bool witness_from_overflow(const DescentOverflow& fail) {
    std::vector<int> w = fail.trace;
    w.push_back(fail.remaining.first());
    if (static_cast<int>(w.size()) != r_ + 1 || !is_pairwise_adjacent(g_, w))
      throw InternalError("descent overflow produced an invalid clique witness");
    witness_ = w;
    return true;
  }

  FullnessEngine engine(std::uint64_t step) const {
    FullnessEngine e;
    e.mode = cfg_.engine;
    e.exact_cap = cfg_.exact_cap;
    e.seed = derive_seed(seed_, static_cast<std::uint64_t>(escalations_), step);
    return e;
  }

  // One induction round of the main proof: turns the k-state into a
  // (k+1)-state. All mutations are staged locally and committed only when
  // every claim that gates validity has been checked.
  Step escalate() {
    if (mode_ == PartitionMode::Faithful)
      throw InternalError("faithful mode must finish via claim 1 at desk scale");
    Rational third = eps_.div_int(3);
    Rational sixth = eps_.div_int(6);

    // (1) Z_0: very-sparse seed set inside R
    auto z0res = extract_sparse_set(g_, rset_, *cfg_.z0_alpha, r_);
    if (auto* fail = std::get_if<DescentOverflow>(&z0res))
      return witness_from_overflow(*fail) ? Step::Witness : Step::Fallback;
    VertexSet z = std::get<ExtractionResult>(z0res).part;

    // (2) pairs-lemma chain along the existing S_i
    std::vector<VertexSet> xs;
    for (int i = 0; i < k_; ++i) {
      RefineResult rr;
      try {
        rr = refine_pair(g_, s_sets_[std::size_t(i)], z, sixth, *cfg_.beta_surrogate,
                         cfg_.pairs_l, engine(2 + std::uint64_t(i)));
      } catch (const ContractError& e) {
        return soft_fail(std::string("refine_pair: ") + e.what());
      }
      xs.push_back(rr.a_prime);
      z = rr.b_prime;
      note("escalation " + std::to_string(escalations_) + " refine i=" +
           std::to_string(i + 1) + " " + rr.trace.serialize());
    }

    // (3)+(4) split each X_i by alternating sorted ids; S_i minus its kept
    // half must already be eps-sparse
    std::vector<VertexSet> ys = xs;  // placeholder; filled below
    std::vector<VertexSet> staged_parts;
    for (int i = 0; i < k_; ++i) {
      const VertexSet& xi = xs[std::size_t(i)];
      if (xi.size() < 2) return soft_fail("escalation: |X_i| < 2, cannot split");
      VertexSet yi(g_.n());
      int pos = 0;
      xi.for_each([&](int v) {
        if (pos++ % 2 == 0) yi.insert(v);
      });
      ys[std::size_t(i)] = yi;
      VertexSet rest = s_sets_[std::size_t(i)].minus(yi);
      if (!is_sparse_set(g_, rest, eps_))
        return soft_fail("escalation: S_i \\ Y_i not eps-sparse");
      staged_parts.push_back(rest);
    }
    ys.push_back(z);  // Y_{k+1} = Z_k

    // (5) greedy bulk partition of R minus the protected Y_{k+1}
    auto pm = partition_most(g_, rset_.minus(z), eps_, r_, cfg_.lemma4_m);
    if (auto* fail = std::get_if<DescentOverflow>(&pm))
      return witness_from_overflow(*fail) ? Step::Witness : Step::Fallback;
    auto& gp = std::get<GreedyPartition>(pm);
    for (auto& p : gp.parts) staged_parts.push_back(p);
    VertexSet r_prime = gp.leftover;

    // (6) B_i: leftover vertices (eps/3)-sparse to Y_i, claimed greedily in
    // order; the remainder R~ is (eps/3)-dense to every Y_i by construction
    std::vector<VertexSet> bs;
    VertexSet rest = r_prime;
    for (int i = 0; i <= k_; ++i) {
      const VertexSet& yi = ys[std::size_t(i)];
      std::int64_t ysz = yi.size();
      VertexSet bi(g_.n());
      rest.for_each([&](int v) {
        if (third.le_scaled(g_.degree_in(v, yi), ysz)) bi.insert(v);
      });
      bs.push_back(bi);
      rest = rest.minus(bi);
    }
    VertexSet r_tilde = rest;

    // claim 3 gates the splits
    Rational r300 = eps_.div_int(300);
    for (int i = 0; i <= k_; ++i) {
      if (ys[std::size_t(i)].size() < 100)
        return soft_fail("claim 3: |Y_i| < 100 at i=" + std::to_string(i + 1));
      if (!r300.le_scaled(r_prime.size(), ys[std::size_t(i)].size()))
        return soft_fail("claim 3: |R'| > (eps/300)|Y_i| at i=" + std::to_string(i + 1));
    }

    // (7) balanced split of each Y_i against R~; the dense-side half becomes
    // the new S~_i, the other half absorbs B_i as a finished part
    std::vector<VertexSet> new_s;
    for (int i = 0; i <= k_; ++i) {
      auto sp = balanced_dense_split(g_, ys[std::size_t(i)], r_tilde, third,
                                     derive_seed(seed_, std::uint64_t(escalations_),
                                                 100 + std::uint64_t(i)),
                                     cfg_.split_retry_cap);
      if (auto* fail = std::get_if<SplitFailure>(&sp))
        return soft_fail("split: retry cap " + std::to_string(fail->retries) +
                         " exhausted (seed " + std::to_string(fail->seed) + ")");
      auto& split = std::get<SplitResult>(sp);
      VertexSet finished_part = split.t_prime.unite(bs[std::size_t(i)]);
      if (!is_sparse_set(g_, finished_part, eps_))
        return soft_fail("escalation: T_i' u B_i not eps-sparse");
      staged_parts.push_back(finished_part);
      new_s.push_back(split.t);
      note("escalation " + std::to_string(escalations_) + " split i=" +
           std::to_string(i + 1) + " retries=" + std::to_string(split.retries));
    }

    // claim 7 gates the new state
    Rational r100 = eps_.div_int(100);
    for (int i = 0; i <= k_; ++i)
      if (!r100.le_scaled(r_tilde.size(), new_s[std::size_t(i)].size()))
        return soft_fail("claim 7: |R~| > (eps/100)|S~_i|");

    // claims 5-6 are informational under surrogate constants: checked
    // exactly when set sizes permit, logged as unverified otherwise
    check_claims_5_6(new_s);

    // (8) commit the (k+1)-state
    for (auto& p : staged_parts)
      if (!p.empty()) finished_.push_back(p);
    s_sets_ = new_s;
    rset_ = r_tilde;
    k_ += 1;
    ++escalations_;
    assert_state_invariants();
    return Step::Ok;
  }

  void check_claims_5_6(const std::vector<VertexSet>& new_s) {
    int exponent = 13 * r_ - 8 * (k_ + 1) - 1;
    auto thr = exponent >= 1 ? Rational::pow(eps_, exponent) : std::nullopt;
    auto gamma5 = Rational::pow(eps_, 5);
    bool small = true;
    for (const auto& s : new_s)
      if (s.size() > cfg_.exact_cap) small = false;
    if (thr && gamma5 && small) {
      FullnessEngine ex;
      ex.mode = FullnessEngine::Mode::Exact;
      ex.exact_cap = cfg_.exact_cap;
      FullnessParams p{*thr, *thr, *gamma5};
      auto v = check_sequence_fullness(g_, new_s, p, ex);
      note("claim 5 fullness: " + std::string(v.certified() ? "certified" : "violated"));
    } else {
      note("claim 5 fullness: unverified (size or exponent range)");
    }
    int sp_exp = 8 * (r_ - k_ - 1) + 1;
    auto sp_thr = Rational::pow(eps_, sp_exp);
    if (sp_thr) {
      bool ok = true;
      for (const auto& s : new_s)
        if (!is_sparse_set(g_, s, *sp_thr)) ok = false;
      note("claim 6 sparsity: " + std::string(ok ? "holds" : "violated"));
    } else {
      note("claim 6 sparsity: unverified (exponent overflow)");
    }
  }

  // The claim-2 finisher at k = r: any R-vertex dense to every S_i spans a
  // K_r through the full sequence, giving a K_{r+1} with the vertex itself.
  bool try_claim2_witness() {
    Rational sixth = eps_.div_int(6);
    auto gamma5 = Rational::pow(eps_, 5);
    if (!gamma5 || gamma5->is_zero() || *gamma5 > Rational(1, 2)) return false;
    int chosen = -1;
    rset_.for_each([&](int v) {
      if (chosen >= 0) return;
      for (const auto& s : s_sets_)
        if (!sixth.ge_scaled(g_.degree_in(v, s), s.size())) return;
      chosen = v;
    });
    if (chosen < 0) return false;
    std::vector<VertexSet> nbhd;
    for (const auto& s : s_sets_) {
      VertexSet ns = s.intersect(g_.adjacency(chosen));
      if (ns.empty()) return false;
      nbhd.push_back(ns);
    }
    auto res = find_spanning_clique(g_, nbhd, *gamma5);
    if (auto* clique = std::get_if<SpanningClique>(&res)) {
      std::vector<int> w = clique->vertices;
      w.push_back(chosen);
      if (!is_pairwise_adjacent(g_, w))
        throw InternalError("claim 2 produced an invalid clique witness");
      witness_ = w;
      return true;
    }
    return false;
  }

  // Exhaustive greedy partition of one set; used for S_i remnants that are
  // not eps-sparse themselves and for practical-mode leftovers.
  bool exhaust_into_parts(VertexSet s) {
    while (!s.empty()) {
      auto res = extract_sparse_set(g_, s, eps_, r_);
      if (auto* fail = std::get_if<DescentOverflow>(&res)) {
        witness_from_overflow(*fail);
        return false;
      }
      auto& ex = std::get<ExtractionResult>(res);
      finished_.push_back(ex.part);
      s = s.minus(ex.part);
    }
    return true;
  }

  // Claim 1: greedy lemma-4 partition of the (small) leftover, plus the S_i
  // themselves. Returns false when a clique witness surfaced instead.
  bool finish() {
    for (auto& s : s_sets_) {
      if (s.empty()) continue;
      if (is_sparse_set(g_, s, eps_)) {
        finished_.push_back(s);
      } else if (!exhaust_into_parts(s)) {
        return false;
      }
    }
    s_sets_.clear();
    int m = mode_ == PartitionMode::Faithful ? static_cast<int>(consts_.a[0]) + 2
                                             : cfg_.lemma4_m;
    VertexSet rest = rset_;
    rset_ = VertexSet(g_.n());
    while (!rest.empty()) {
      auto pm = partition_most(g_, rest, eps_, r_, m);
      if (auto* fail = std::get_if<DescentOverflow>(&pm)) {
        witness_from_overflow(*fail);
        return false;
      }
      auto& gp = std::get<GreedyPartition>(pm);
      for (auto& p : gp.parts)
        if (!p.empty()) finished_.push_back(p);
      if (mode_ == PartitionMode::Faithful && !gp.leftover.empty())
        throw InternalError("claim 1: faithful-mode leftover not empty");
      rest = gp.leftover;
    }
    return true;
  }

  void assert_state_invariants() const {
    // partition property, exact
    std::int64_t total = rset_.size();
    VertexSet seen = rset_;
    auto add = [&](const VertexSet& p) {
      if (seen.intersects(p)) throw InternalError("state: parts overlap");
      seen = seen.unite(p);
      total += p.size();
    };
    for (const auto& p : finished_) add(p);
    for (const auto& s : s_sets_) add(s);
    if (total != g_.n()) throw InternalError("state: parts do not cover V(G)");
    // |A| <= k (1/eps)^{a_0+2r} + k^2, log domain (vacuously loose)
    if (!finished_.empty() && k_ > 0) {
      double l = std::log2(static_cast<double>(eps_.den())) -
                 std::log2(static_cast<double>(eps_.num()));
      double bound = detail::log2_add(
          std::log2(static_cast<double>(k_)) + (consts_.a[0] + 2.0 * r_) * l,
          2.0 * std::log2(static_cast<double>(k_)));
      if (std::log2(static_cast<double>(finished_.size())) > bound + 1e-9)
        throw InternalError("state: finished-part count bound violated");
    }
    for (const auto& p : finished_)
      if (!is_sparse_set(g_, p, eps_))
        throw InternalError("state: finished part not eps-sparse");
    Rational sixth = eps_.div_int(6);
    Rational r100 = eps_.div_int(100);
    for (const auto& s : s_sets_) {
      if (!r100.le_scaled(rset_.size(), s.size()))
        throw InternalError("state: |R| > (eps/100)|S_i|");
      if (!is_dense_to(g_, rset_, s, sixth))
        throw InternalError("state: R not (eps/6)-dense to S_i");
    }
  }

  Certificate make_certificate() const {
    Certificate cert;
    cert.epsilon = eps_;
    cert.r = r_;
    cert.mode = mode_;
    cert.seed = seed_;
    cert.escalations = escalations_;
    cert.fallbacks = fallbacks_;
    cert.traces = traces_;
    std::int64_t covered = 0;
    for (const auto& p : finished_) {
      if (p.empty()) continue;
      if (!is_sparse_set(g_, p, eps_))
        throw InternalError("certificate: part not eps-sparse");
      cert.parts.push_back(p.to_vector());
      cert.per_part_max_degree.push_back(g_.max_degree_in(p));
      covered += p.size();
    }
    if (covered != g_.n())
      throw InternalError("certificate: parts do not cover V(G)");
    cert.part_count = static_cast<std::int64_t>(cert.parts.size());
    double l = std::log2(static_cast<double>(eps_.den())) -
               std::log2(static_cast<double>(eps_.num()));
    cert.bound_value_log2 = static_cast<double>(consts_.c_r) * l;
    return cert;
  }

  const Graph& g_;
  Rational eps_;
  int r_;
  PartitionMode mode_;
  PracticalConfig cfg_;
  std::uint64_t seed_;
  Constants consts_;

  std::vector<VertexSet> finished_;
  std::vector<VertexSet> s_sets_;
  VertexSet rset_;
  int k_ = 0;
  bool forced_finish_ = false;
  int escalations_ = 0;
  int fallbacks_ = 0;
  std::vector<std::string> traces_;
  std::vector<int> witness_;
};

}  // namespace detail

// The main-theorem engine. Always returns either a verified eps-sparse
// partition of V(G) or a verified K_{r+1} witness, in any mode.
inline PartitionOutcome partition(const Graph& g, const Rational& eps, int r,
                                  PartitionMode mode, const PracticalConfig& config,
                                  std::uint64_t seed) {
  if (r < 2) throw ParameterError("partition: need r >= 2");
  detail::PartitionRun run(g, eps, r, mode, config, seed);
  return run.run();
}

inline double escalation_threshold_log2(const Rational& eps, int r, PartitionMode mode,
                                        std::int64_t practical_threshold) {
  return detail::PartitionRun::threshold_log2(eps, r, mode, practical_threshold);
}

struct VerifyVerdict {
  bool ok = false;
  std::string reason;
};

// Independent certificate checker: reconstructs the partition property and
// every per-part maximum degree straight from the adjacency structure.
inline VerifyVerdict verify_certificate(const Graph& g, const Certificate& cert) {
  std::vector<int> owner(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t pi = 0; pi < cert.parts.size(); ++pi) {
    for (int v : cert.parts[pi]) {
      if (v < 0 || v >= g.n())
        return {false, "part " + std::to_string(pi) + " references vertex " +
                           std::to_string(v) + " outside the graph"};
      if (owner[static_cast<std::size_t>(v)] != -1)
        return {false, "vertex " + std::to_string(v) + " appears in parts " +
                           std::to_string(owner[static_cast<std::size_t>(v)]) + " and " +
                           std::to_string(pi)};
      owner[static_cast<std::size_t>(v)] = static_cast<int>(pi);
    }
  }
  for (int v = 0; v < g.n(); ++v)
    if (owner[static_cast<std::size_t>(v)] == -1)
      return {false, "vertex " + std::to_string(v) + " is not covered by any part"};
  if (cert.part_count != static_cast<std::int64_t>(cert.parts.size()))
    return {false, "part_count field does not match the number of parts"};
  if (cert.per_part_max_degree.size() != cert.parts.size())
    return {false, "per_part_max_degree length mismatch"};
  for (std::size_t pi = 0; pi < cert.parts.size(); ++pi) {
    const auto& part = cert.parts[pi];
    int maxdeg = 0;
    for (int u : part) {
      int d = 0;
      for (int w : part)
        if (w != u && g.has_edge(u, w)) ++d;
      if (d > maxdeg) maxdeg = d;
    }
    if (maxdeg != cert.per_part_max_degree[pi])
      return {false, "part " + std::to_string(pi) + ": recorded max degree " +
                         std::to_string(cert.per_part_max_degree[pi]) +
                         " but recomputed " + std::to_string(maxdeg)};
    if (!cert.epsilon.le_scaled(maxdeg, static_cast<std::int64_t>(part.size()))) {
      int offender = 0;
      for (int u : part) {
        int d = 0;
        for (int w : part)
          if (w != u && g.has_edge(u, w)) ++d;
        if (d == maxdeg) {
          offender = u;
          break;
        }
      }
      return {false, "part " + std::to_string(pi) + " is not eps-sparse (vertex " +
                         std::to_string(offender) + " has degree " +
                         std::to_string(maxdeg) + " > eps*" +
                         std::to_string(part.size()) + ")"};
    }
  }
  return {true, ""};
}

}  // namespace spg
