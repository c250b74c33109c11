// spg: sparse partitions of clique-bounded graphs.
//
// Subcommands: generate, partition, verify, oracle, constants, bench.
// Exit codes: 0 success/accept, 1 reject or invalid input, 2 internal
// invariant failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spg/bench.hpp"
#include "spg/certificate.hpp"
#include "spg/constants.hpp"
#include "spg/errors.hpp"
#include "spg/generators.hpp"
#include "spg/graph.hpp"
#include "spg/oracle.hpp"
#include "spg/partitioner.hpp"

namespace {

spg::PracticalConfig load_config_file(const std::string& path) {
  spg::PracticalConfig cfg;
  std::ifstream in(path);
  if (!in) throw spg::InputError("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key, value;
    if (!(ss >> key >> value)) throw spg::InputError("bad config line: " + line);
    if (key == "escalation_threshold")
      cfg.escalation_threshold = std::stoll(value);
    else if (key == "z0_alpha")
      cfg.z0_alpha = spg::Rational::parse(value);
    else if (key == "beta")
      cfg.beta_surrogate = spg::Rational::parse(value);
    else if (key == "pairs_l")
      cfg.pairs_l = std::stoi(value);
    else if (key == "lemma4_m")
      cfg.lemma4_m = std::stoi(value);
    else if (key == "exact_cap")
      cfg.exact_cap = std::stoi(value);
    else if (key == "split_retry_cap")
      cfg.split_retry_cap = std::stoi(value);
    else if (key == "engine")
      cfg.engine = value == "exact"       ? spg::FullnessEngine::Mode::Exact
                   : value == "heuristic" ? spg::FullnessEngine::Mode::Heuristic
                   : value == "auto"
                       ? spg::FullnessEngine::Mode::Auto
                       : throw spg::InputError("unknown engine: " + value);
    else
      throw spg::InputError("unknown config key: " + key);
  }
  return cfg;
}

std::vector<spg::Rational> parse_eps_list(const std::vector<std::string>& items) {
  std::vector<spg::Rational> out;
  for (const auto& s : items) out.push_back(spg::Rational::parse(s));
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"certified eps-sparse partitioning of clique-bounded graphs"};
  app.require_subcommand(1);

  // generate
  auto* cmd_gen = app.add_subcommand("generate", "generate a clique-bounded test graph");
  std::string family, out_path = "-";
  std::vector<int> int_params;
  double gen_p = 5.0;
  std::uint64_t gen_seed = 1;
  cmd_gen->add_option("--family", family,
                      "mycielski|kneser|multipartite_blowup|c5_blowup|random_kfree|"
                      "random_bipartite")
      ->required();
  cmd_gen->add_option("--params", int_params, "integer family parameters");
  cmd_gen->add_option("--p", gen_p, "edge density / average degree (random families)");
  cmd_gen->add_option("--seed", gen_seed, "generator seed");
  cmd_gen->add_option("-o,--output", out_path, "edge-list output path ('-' = stdout)");

  // partition
  auto* cmd_part = app.add_subcommand("partition", "compute a certified eps-sparse partition");
  std::string in_path, eps_text, mode_text = "faithful", config_path, cert_path = "-";
  int part_r = 2;
  std::uint64_t part_seed = 1;
  cmd_part->add_option("-i,--input", in_path, "edge-list input")->required();
  cmd_part->add_option("--eps", eps_text, "epsilon as p/q")->required();
  cmd_part->add_option("--r", part_r, "clique bound r (graph is K_{r+1}-free)")->required();
  cmd_part->add_option("--mode", mode_text, "faithful|practical");
  cmd_part->add_option("--config", config_path, "practical-config file");
  cmd_part->add_option("--seed", part_seed, "run seed");
  cmd_part->add_option("-o,--output", cert_path, "certificate output path ('-' = stdout)");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "verify a certificate against a graph");
  std::string v_graph, v_cert;
  cmd_verify->add_option("-i,--input", v_graph, "edge-list input")->required();
  cmd_verify->add_option("-c,--certificate", v_cert, "certificate file")->required();

  // oracle
  auto* cmd_oracle = app.add_subcommand("oracle", "exhaustive minimum partition (n <= 10)");
  std::string o_graph, o_eps;
  int o_cap = 10;
  cmd_oracle->add_option("-i,--input", o_graph, "edge-list input")->required();
  cmd_oracle->add_option("--eps", o_eps, "epsilon as p/q")->required();
  cmd_oracle->add_flag_callback("--allow-large", [&] { o_cap = 12; },
                                "raise the cap to n <= 12");

  // constants
  auto* cmd_const = app.add_subcommand("constants", "solve and check the a_i / C_r recurrences");
  int const_r = 2;
  cmd_const->add_option("--r", const_r, "clique bound r")->required();

  // bench
  auto* cmd_bench = app.add_subcommand("bench", "sweep a corpus and emit CSV");
  std::string b_corpus, b_out = "-";
  std::vector<std::string> b_eps, b_modes = {"faithful", "practical"};
  std::vector<std::uint64_t> b_seeds = {1};
  int b_r = 2;
  bool b_no_timing = false;
  std::string b_config;
  cmd_bench->add_option("--corpus", b_corpus, "corpus file")->required();
  cmd_bench->add_option("--eps", b_eps, "epsilon list (p/q)")->required();
  cmd_bench->add_option("--r", b_r, "clique bound r");
  cmd_bench->add_option("--modes", b_modes, "faithful|practical list");
  cmd_bench->add_option("--seeds", b_seeds, "seed list");
  cmd_bench->add_option("--config", b_config, "practical-config file");
  cmd_bench->add_flag("--no-timing", b_no_timing, "write wall_ms as 0 for reproducible CSV");
  cmd_bench->add_option("-o,--output", b_out, "CSV output path ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);

  auto emit = [](const std::string& path, const std::string& text) {
    if (path == "-") {
      std::cout << text;
    } else {
      std::ofstream out(path);
      if (!out) throw spg::InputError("cannot write: " + path);
      out << text;
    }
  };

  if (cmd_gen->parsed()) {
    spg::GeneratedGraph gg = [&]() -> spg::GeneratedGraph {
      auto need = [&](std::size_t k) {
        if (int_params.size() != k)
          throw spg::ParameterError("family " + family + " expects " + std::to_string(k) +
                                    " --params value(s)");
      };
      if (family == "mycielski") {
        need(1);
        return spg::gen::mycielski(int_params[0]);
      }
      if (family == "kneser") {
        need(2);
        return spg::gen::kneser(int_params[0], int_params[1]);
      }
      if (family == "multipartite_blowup") return spg::gen::multipartite_blowup(int_params);
      if (family == "c5_blowup") return spg::gen::c5_blowup(int_params);
      if (family == "random_kfree") {
        need(2);
        return spg::gen::random_kfree(int_params[0], int_params[1], gen_p, gen_seed);
      }
      if (family == "random_bipartite") {
        need(2);
        return spg::gen::random_bipartite(int_params[0], int_params[1],
                                          std::min(1.0, gen_p), gen_seed);
      }
      throw spg::ParameterError("unknown family: " + family);
    }();
    if (!spg::verify_clique_bound(gg))
      throw spg::InternalError("generated graph failed its advertised clique bound");
    std::ostringstream text;
    text << "# " << gg.name << " (K_" << gg.r + 1 << "-free)\n";
    spg::write_edge_list(gg.graph, text);
    emit(out_path, text.str());
    return 0;
  }

  if (cmd_part->parsed()) {
    spg::Graph g = spg::read_edge_list_file(in_path);
    spg::Rational eps = spg::Rational::parse(eps_text);
    spg::PartitionMode mode = mode_text == "practical" ? spg::PartitionMode::Practical
                                                       : spg::PartitionMode::Faithful;
    if (mode_text != "practical" && mode_text != "faithful")
      throw spg::ParameterError("mode must be faithful or practical");
    spg::PracticalConfig cfg =
        config_path.empty() ? spg::PracticalConfig{} : load_config_file(config_path);
    spg::PartitionOutcome out = spg::partition(g, eps, part_r, mode, cfg, part_seed);
    if (auto* witness = std::get_if<spg::CliqueWitness>(&out)) {
      std::cerr << "input is not K_" << part_r + 1 << "-free; witness clique:";
      for (int v : witness->vertices) std::cerr << " " << v;
      std::cerr << "\n";
      return 1;
    }
    auto& cert = std::get<spg::Certificate>(out);
    spg::VerifyVerdict v = spg::verify_certificate(g, cert);
    if (!v.ok) throw spg::InternalError("self-verification failed: " + v.reason);
    emit(cert_path, spg::certificate_to_string(cert));
    return 0;
  }

  if (cmd_verify->parsed()) {
    spg::Graph g = spg::read_edge_list_file(v_graph);
    spg::Certificate cert = spg::read_certificate_file(v_cert);
    spg::VerifyVerdict v = spg::verify_certificate(g, cert);
    if (v.ok) {
      std::cout << "accept: " << cert.part_count << " parts, all " << cert.epsilon.str()
                << "-sparse\n";
      return 0;
    }
    std::cout << "reject: " << v.reason << "\n";
    return 1;
  }

  if (cmd_oracle->parsed()) {
    spg::Graph g = spg::read_edge_list_file(o_graph);
    spg::Rational eps = spg::Rational::parse(o_eps);
    spg::OracleResult res = spg::min_sparse_partition_oracle(g, eps, o_cap);
    std::cout << "min_parts " << res.min_parts << "\n";
    for (const auto& p : res.witness) {
      std::cout << "part";
      p.for_each([&](int v) { std::cout << " " << v; });
      std::cout << "\n";
    }
    return 0;
  }

  if (cmd_const->parsed()) {
    spg::Constants c = spg::solve_constants(const_r);
    std::cout << "r " << c.r << "\n";
    for (int i = 0; i < c.r; ++i) std::cout << "a_" << i << " " << c.a[std::size_t(i)] << "\n";
    std::cout << "C_r " << c.c_r << "\n";
    std::cout << "grid check: both inequalities hold at x in {2, 2.5, 3, 4, 10, 100, 1e6} "
                 "(log domain), exponent gaps verified\n";
    return 0;
  }

  if (cmd_bench->parsed()) {
    auto corpus = spg::load_corpus_file(b_corpus);
    std::vector<spg::PartitionMode> modes;
    for (const auto& m : b_modes)
      modes.push_back(m == "practical" ? spg::PartitionMode::Practical
                                       : spg::PartitionMode::Faithful);
    spg::PracticalConfig cfg =
        b_config.empty() ? spg::PracticalConfig{} : load_config_file(b_config);
    std::string csv = spg::bench_sweep(corpus, parse_eps_list(b_eps), b_r, modes, b_seeds,
                                       cfg, !b_no_timing);
    emit(b_out, csv);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const spg::InternalError& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
