#include "postedit/models/text_vocab.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

#include "postedit/error.hpp"

namespace postedit::models {

TextVocab::TextVocab(std::vector<std::string> words) : words_(std::move(words)) {
  for (std::uint32_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
}

TextVocab TextVocab::build(const std::vector<std::vector<std::string>>& docs,
                           std::size_t max_words) {
  if (docs.empty()) throw Error(Errc::empty_corpus, "no documents");
  std::map<std::string, std::size_t> freq;
  for (const auto& doc : docs)
    for (const auto& tok : doc) ++freq[tok];
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > max_words) ranked.resize(max_words);
  std::vector<std::string> words;
  words.reserve(ranked.size());
  for (auto& [w, n] : ranked) words.push_back(std::move(w));
  return TextVocab(std::move(words));
}

std::vector<std::uint32_t> TextVocab::encode(
    const std::vector<std::string>& tokens) const {
  std::vector<std::uint32_t> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    auto it = index_.find(tok);
    out.push_back(it == index_.end() ? unk_id() : it->second);
  }
  return out;
}

void TextVocab::write(std::ostream& out) const {
  out << "postedit-textvocab\tv1\t" << words_.size() << '\n';
  for (const auto& w : words_) out << w << '\n';
}

TextVocab TextVocab::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw Error(Errc::malformed_record, "empty text vocabulary");
  std::size_t tab1 = line.find('\t');
  std::size_t tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
  if (line.substr(0, tab1) != "postedit-textvocab" || tab2 == std::string::npos)
    throw Error(Errc::malformed_record, "bad text vocabulary header");
  const std::size_t count = std::stoull(line.substr(tab2 + 1));
  std::vector<std::string> words;
  words.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line))
      throw Error(Errc::malformed_record, "text vocabulary truncated");
    words.push_back(line);
  }
  return TextVocab(std::move(words));
}

}  // namespace postedit::models
