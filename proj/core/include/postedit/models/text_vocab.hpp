#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace postedit::models {

// Token vocabulary for the text baselines: the most frequent corpus tokens
// plus UNK (trainable embeddings stand in for pretrained vectors).
class TextVocab {
 public:
  TextVocab() = default;
  explicit TextVocab(std::vector<std::string> words);

  static TextVocab build(const std::vector<std::vector<std::string>>& docs,
                         std::size_t max_words = 1000);

  std::size_t size() const { return words_.size() + 1; }  // + UNK
  std::uint32_t unk_id() const { return static_cast<std::uint32_t>(words_.size()); }
  std::vector<std::uint32_t> encode(const std::vector<std::string>& tokens) const;
  const std::vector<std::string>& words() const { return words_; }

  void write(std::ostream& out) const;
  static TextVocab read(std::istream& in);

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace postedit::models
