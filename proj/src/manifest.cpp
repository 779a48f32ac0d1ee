#include "sweatpp/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sweatpp {

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot digest " + path);
  std::uint64_t hash = 14695981039346656037ull;
  char buffer[65536];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 1099511628211ull;
    }
    if (got < static_cast<std::streamsize>(sizeof(buffer))) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(hex);
}

void write_run_manifest(const std::string& manifest_path,
                        const std::string& command,
                        const std::vector<std::string>& argv,
                        const nlohmann::json& parameters, std::uint64_t seed,
                        const std::vector<std::string>& inputs,
                        const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["command"] = command;
  m["argv"] = argv;
  m["parameters"] = parameters;
  m["seed"] = seed;
  m["version"] = kVersion;
  nlohmann::json in_digests = nlohmann::json::object();
  for (const std::string& p : inputs) in_digests[p] = file_digest(p);
  nlohmann::json out_digests = nlohmann::json::object();
  for (const std::string& p : outputs) out_digests[p] = file_digest(p);
  m["inputs"] = in_digests;
  m["outputs"] = out_digests;

  std::ofstream out(manifest_path);
  if (!out) throw std::runtime_error("cannot write " + manifest_path);
  out << m.dump(2) << "\n";
}

nlohmann::json load_run_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json m;
  try {
    in >> m;
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": bad manifest JSON: " + e.what());
  }
  return m;
}

}  // namespace sweatpp
