#include "postedit/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "postedit/error.hpp"

namespace postedit {

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001B3ULL;
    }
    if (!in) break;
  }
  std::ostringstream hex;
  hex << "fnv1a64:" << std::hex << h;
  return hex.str();
}

void write_manifest(const std::string& out_path, const std::string& command,
                    std::uint64_t seed,
                    const std::map<std::string, std::string>& config,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["command"] = command;
  m["version"] = "0.1.0";
  m["seed"] = seed;
  m["config"] = config;
  nlohmann::json digests = nlohmann::json::object();
  for (const auto& p : inputs) digests[p] = file_digest(p);
  m["inputs"] = digests;
  m["outputs"] = outputs;
  std::ofstream out(out_path);
  if (!out) throw Error(Errc::io_error, "cannot write " + out_path);
  out << m.dump(2) << '\n';
}

}  // namespace postedit
