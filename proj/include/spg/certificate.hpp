#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "spg/errors.hpp"
#include "spg/partitioner.hpp"
#include "spg/rational.hpp"

namespace spg {

// Certificate file format "spg-cert/1": JSON with sorted id lists and
// rationals rendered "num/den". Field order is fixed so identical runs
// serialize to identical bytes.
inline nlohmann::ordered_json certificate_to_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["format"] = cert.format;
  j["epsilon"] = cert.epsilon.str();
  j["r"] = cert.r;
  j["mode"] = mode_name(cert.mode);
  j["seed"] = cert.seed;
  j["part_count"] = cert.part_count;
  j["bound_value_log2"] = cert.bound_value_log2;
  j["per_part_max_degree"] = cert.per_part_max_degree;
  j["parts"] = cert.parts;
  j["escalations"] = cert.escalations;
  j["fallbacks"] = cert.fallbacks;
  j["traces"] = cert.traces;
  return j;
}

inline std::string certificate_to_string(const Certificate& cert) {
  return certificate_to_json(cert).dump(2) + "\n";
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate cert;
  cert.format = j.at("format").get<std::string>();
  if (cert.format != "spg-cert/1")
    throw InputError("unsupported certificate format: " + cert.format);
  cert.epsilon = Rational::parse(j.at("epsilon").get<std::string>());
  cert.r = j.at("r").get<int>();
  std::string mode = j.at("mode").get<std::string>();
  if (mode == "faithful")
    cert.mode = PartitionMode::Faithful;
  else if (mode == "practical")
    cert.mode = PartitionMode::Practical;
  else
    throw InputError("unknown certificate mode: " + mode);
  cert.seed = j.at("seed").get<std::uint64_t>();
  cert.part_count = j.at("part_count").get<std::int64_t>();
  cert.bound_value_log2 = j.at("bound_value_log2").get<double>();
  cert.per_part_max_degree = j.at("per_part_max_degree").get<std::vector<int>>();
  cert.parts = j.at("parts").get<std::vector<std::vector<int>>>();
  cert.escalations = j.value("escalations", 0);
  cert.fallbacks = j.value("fallbacks", 0);
  cert.traces = j.value("traces", std::vector<std::string>{});
  return cert;
}

inline void write_certificate_file(const Certificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write certificate file: " + path);
  out << certificate_to_string(cert);
}

inline Certificate read_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open certificate file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed certificate JSON: " + std::string(e.what()));
  }
  return certificate_from_json(j);
}

}  // namespace spg
