#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spg/certificate.hpp"
#include "spg/errors.hpp"
#include "spg/generators.hpp"
#include "spg/graph.hpp"
#include "spg/partitioner.hpp"
#include "spg/rational.hpp"

namespace spg {

// One corpus entry: either a graph file or a generator invocation. Corpus
// file lines:
//   file <path>
//   mycielski <iterations>
//   kneser <n> <k>
//   blowup <size> <size> ...
//   c5_blowup <s1> <s2> <s3> <s4> <s5>
//   random_kfree <n> <r> <avg_degree> <seed>
//   random_bipartite <na> <nb> <p> <seed>
// '#' lines are comments.
inline GeneratedGraph load_corpus_entry(const std::string& line) {
  std::istringstream ss(line);
  std::string kind;
  ss >> kind;
  auto fail = [&]() -> GeneratedGraph {
    throw InputError("bad corpus line: " + line);
  };
  if (kind == "file") {
    std::string path;
    if (!(ss >> path)) return fail();
    Graph g = read_edge_list_file(path);
    int r = 2;
    while (g.n() <= 2000 && find_clique(g, r + 1, g.vertices())) ++r;
    return {std::move(g), r, path};
  }
  if (kind == "mycielski") {
    int it;
    if (!(ss >> it)) return fail();
    return gen::mycielski(it);
  }
  if (kind == "kneser") {
    int n, k;
    if (!(ss >> n >> k)) return fail();
    return gen::kneser(n, k);
  }
  if (kind == "blowup" || kind == "c5_blowup") {
    std::vector<int> sizes;
    int s;
    while (ss >> s) sizes.push_back(s);
    if (sizes.empty()) return fail();
    return kind == "blowup" ? gen::multipartite_blowup(sizes) : gen::c5_blowup(sizes);
  }
  if (kind == "random_kfree") {
    int n, r;
    double d;
    std::uint64_t seed;
    if (!(ss >> n >> r >> d >> seed)) return fail();
    return gen::random_kfree(n, r, d, seed);
  }
  if (kind == "random_bipartite") {
    int na, nb;
    double p;
    std::uint64_t seed;
    if (!(ss >> na >> nb >> p >> seed)) return fail();
    return gen::random_bipartite(na, nb, p, seed);
  }
  return fail();
}

inline std::vector<GeneratedGraph> load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file: " + path);
  std::vector<GeneratedGraph> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(load_corpus_entry(line));
  }
  return out;
}

inline const char* kBenchCsvHeader =
    "name,n,m,eps,r,mode,seed,part_count,bound_log2,escalations,fallbacks,wall_ms,status";

// Sweeps (graph, eps, mode, seed) combinations, verifying every certificate.
// A failing run becomes an error row, not an aborted sweep. With
// record_timing=false the wall_ms column is written as 0 so repeated runs
// are byte-identical.
inline std::string bench_sweep(const std::vector<GeneratedGraph>& corpus,
                               const std::vector<Rational>& eps_list, int r,
                               const std::vector<PartitionMode>& modes,
                               const std::vector<std::uint64_t>& seeds,
                               const PracticalConfig& config = {},
                               bool record_timing = true) {
  std::ostringstream csv;
  csv << "# spg-bench/1\n" << kBenchCsvHeader << "\n";
  for (const auto& entry : corpus) {
    int run_r = std::max(r, entry.r);
    for (const auto& eps : eps_list)
      for (auto mode : modes)
        for (auto seed : seeds) {
          csv << entry.name << "," << entry.graph.n() << "," << entry.graph.edge_count()
              << "," << eps.str() << "," << run_r << "," << mode_name(mode) << ","
              << seed << ",";
          try {
            auto start = std::chrono::steady_clock::now();
            PartitionOutcome out = partition(entry.graph, eps, run_r, mode, config, seed);
            auto stop = std::chrono::steady_clock::now();
            long ms = record_timing
                          ? std::chrono::duration_cast<std::chrono::milliseconds>(stop -
                                                                                  start)
                                .count()
                          : 0;
            if (auto* cert = std::get_if<Certificate>(&out)) {
              VerifyVerdict v = verify_certificate(entry.graph, *cert);
              csv << cert->part_count << "," << cert->bound_value_log2 << ","
                  << cert->escalations << "," << cert->fallbacks << "," << ms << ","
                  << (v.ok ? "ok" : "verify_failed") << "\n";
            } else {
              csv << "0,0,0,0," << ms << ",clique_witness\n";
            }
          } catch (const std::exception& e) {
            std::string what = e.what();
            for (auto& c : what)
              if (c == ',' || c == '\n') c = ';';
            csv << "0,0,0,0,0,error:" << what << "\n";
          }
        }
  }
  return csv.str();
}

}  // namespace spg
