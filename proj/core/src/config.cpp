#include "postedit/config.hpp"

#include <fstream>

#include "postedit/error.hpp"

namespace postedit {

const std::map<std::string, std::string>& RunConfig::defaults() {
  static const std::map<std::string, std::string> kDefaults = {
      // synthetic corpus generation
      {"synth.sentences", "12"},
      {"synth.words_per_sentence", "10"},
      {"synth.error_fraction", "0.18"},
      {"synth.editors", "6"},
      {"synth.sessions_per_editor", "300"},
      {"synth.jitter", "0.15"},
      {"synth.lang", "xx-yy"},
      // action-sequence vocabulary
      {"vocab.max_words", "50"},
      // editor identifier (sequence classifier)
      {"id.embed_dim", "64"},
      {"id.hidden_dim", "128"},
      {"id.layers", "2"},
      {"id.dropout", "0.3"},
      {"id.repr_dim", "128"},
      // text baselines
      {"text.vocab_size", "1000"},
      {"text.embed_dim", "64"},
      {"text.hidden_dim", "128"},
      {"text.layers", "1"},
      {"text.dropout", "0.3"},
      {"text.ff_dim", "128"},
      {"text.max_len", "0"},  // 0 = unlimited
      // delta baseline
      {"delta.embed_dim", "16"},
      {"delta.ff_dim", "64"},
      {"delta.dropout", "0.3"},
      // time predictor
      {"time.ff_dim", "128"},
      // training
      {"train.lr", "0.001"},
      {"train.batch", "32"},
      {"train.max_epochs", "100"},
      {"train.patience", "5"},
      // balanced splits
      {"balance.editors", "6"},
      {"balance.train", "998"},
      {"balance.dev", "58"},
      {"balance.test", "58"},
      // editor-level tables
      {"editor.min_sessions", "10"},
      {"store.capacity", "10"},
      // execution
      {"threads", "1"},
  };
  return kDefaults;
}

RunConfig::RunConfig() : values_(defaults()) {}

void RunConfig::set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end())
    throw Error(Errc::usage_error, "unknown config key '" + key + "'");
  it->second = value;
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open config file " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    // trim
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::usage_error,
                  path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto ke = key.find_last_not_of(" \t");
    key = key.substr(0, ke + 1);
    const auto vb = value.find_first_not_of(" \t");
    value = vb == std::string::npos ? "" : value.substr(vb);
    set(key, value);
  }
}

const std::string& RunConfig::get_str(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    throw Error(Errc::usage_error, "unknown config key '" + key + "'");
  return it->second;
}

std::int64_t RunConfig::get_int(const std::string& key) const {
  const std::string& v = get_str(key);
  try {
    std::size_t used = 0;
    const std::int64_t x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(Errc::usage_error, "config key '" + key + "' is not an integer: " + v);
  }
}

double RunConfig::get_double(const std::string& key) const {
  const std::string& v = get_str(key);
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(Errc::usage_error, "config key '" + key + "' is not a number: " + v);
  }
}

}  // namespace postedit
