#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace sweatpp {

inline constexpr const char* kVersion = "0.1.0";

// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string file_digest(const std::string& path);

// One manifest per run, written next to the primary output. Records enough
// to replay the run bit-exactly: the verbatim argv, the resolved parameter
// map, the seed, and input/output digests.
void write_run_manifest(const std::string& manifest_path,
                        const std::string& command,
                        const std::vector<std::string>& argv,
                        const nlohmann::json& parameters, std::uint64_t seed,
                        const std::vector<std::string>& inputs,
                        const std::vector<std::string>& outputs);

nlohmann::json load_run_manifest(const std::string& path);

}  // namespace sweatpp
