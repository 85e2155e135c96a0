#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace postedit {

// 64-bit FNV-1a over a file's bytes, hex-encoded. Used for input digests in
// run manifests.
std::string file_digest(const std::string& path);

// Writes <out_path> describing a run: command, seed, configuration and
// input digests. Contains no timestamps so reruns are byte-identical.
void write_manifest(const std::string& out_path, const std::string& command,
                    std::uint64_t seed,
                    const std::map<std::string, std::string>& config,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs);

}  // namespace postedit
