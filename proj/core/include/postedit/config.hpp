#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace postedit {

// Flat key=value run configuration. Every key has a documented default;
// unknown keys are rejected. Values are stored as strings and parsed on
// access.
class RunConfig {
 public:
  RunConfig();

  // Parses "key=value" lines; '#' starts a comment. Throws
  // Error(usage_error) on unknown keys or malformed lines.
  void load_file(const std::string& path);
  void set(const std::string& key, const std::string& value);

  const std::string& get_str(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  double get_double(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  static const std::map<std::string, std::string>& defaults();

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace postedit
