#include "postedit/tokenize.hpp"

#include "postedit/utf8.hpp"

namespace postedit {

namespace {

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\r' || c == U'\n' || c == U'\f' ||
         c == U'\v';
}

bool is_punct(char32_t c) {
  if (c >= 128) return false;
  if (c >= U'0' && c <= U'9') return false;
  if (c >= U'a' && c <= U'z') return false;
  if (c >= U'A' && c <= U'Z') return false;
  return c > U' ' && c < 127;
}

bool all_punct(std::u32string_view tok) {
  for (char32_t c : tok)
    if (!is_punct(c)) return false;
  return !tok.empty();
}

bool is_placeholder(std::u32string_view tok) {
  if (tok.size() < 3 || tok.front() != U'<' || tok.back() != U'>') return false;
  for (std::size_t i = 1; i + 1 < tok.size(); ++i)
    if (tok[i] == U'<' || tok[i] == U'>') return false;
  return true;
}

bool all_punct_range(std::u32string_view s, std::size_t b, std::size_t e) {
  for (std::size_t i = b; i < e; ++i)
    if (!is_punct(s[i])) return false;
  return true;
}

// Emits the sub-tokens of one whitespace-delimited chunk, with code point
// offsets relative to the chunk start.
template <typename Emit>
void split_chunk(std::u32string_view chunk, Emit&& emit) {
  if (all_punct(chunk) || is_placeholder(chunk)) {
    emit(chunk, 0);
    return;
  }
  // A placeholder wrapped in punctuation ("<Name>.") keeps its core whole.
  const std::size_t lt = chunk.find(U'<');
  if (lt != std::u32string_view::npos) {
    const std::size_t gt = chunk.find(U'>', lt + 1);
    if (gt != std::u32string_view::npos &&
        is_placeholder(chunk.substr(lt, gt - lt + 1)) &&
        all_punct_range(chunk, 0, lt) &&
        all_punct_range(chunk, gt + 1, chunk.size())) {
      if (lt > 0) emit(chunk.substr(0, lt), 0);
      emit(chunk.substr(lt, gt - lt + 1), lt);
      if (gt + 1 < chunk.size()) emit(chunk.substr(gt + 1), gt + 1);
      return;
    }
  }
  std::size_t lead = 0;
  while (lead < chunk.size() && is_punct(chunk[lead])) ++lead;
  std::size_t trail = 0;
  while (trail < chunk.size() - lead && is_punct(chunk[chunk.size() - 1 - trail]))
    ++trail;
  if (lead > 0) emit(chunk.substr(0, lead), 0);
  emit(chunk.substr(lead, chunk.size() - lead - trail), lead);
  if (trail > 0) emit(chunk.substr(chunk.size() - trail), chunk.size() - trail);
}

template <typename Emit>
void tokenize_u32(std::u32string_view sentence, Emit&& emit) {
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && is_space(sentence[i])) ++i;
    if (i >= sentence.size()) break;
    std::size_t j = i;
    while (j < sentence.size() && !is_space(sentence[j])) ++j;
    split_chunk(sentence.substr(i, j - i),
                [&](std::u32string_view tok, std::size_t off) { emit(tok, i + off); });
    i = j;
  }
}

}  // namespace

std::vector<std::string> tokenize_sentence(std::string_view sentence) {
  std::vector<std::string> out;
  const std::u32string u = utf8_decode(sentence);
  tokenize_u32(u, [&](std::u32string_view tok, std::size_t) {
    out.push_back(utf8_encode(tok));
  });
  return out;
}

TokenizedDoc tokenize(const std::vector<std::string>& segments) {
  TokenizedDoc doc;
  doc.sentences.reserve(segments.size());
  for (const auto& seg : segments) doc.sentences.push_back(tokenize_sentence(seg));
  return doc;
}

TokenizedDoc tokenize_text(std::string_view text) {
  return tokenize(split_lines(text));
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

std::size_t TokenizedDoc::word_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

std::vector<std::string> TokenizedDoc::flat() const {
  std::vector<std::string> out;
  out.reserve(word_count());
  for (const auto& s : sentences)
    for (const auto& w : s) out.push_back(w);
  return out;
}

std::vector<SpanToken> tokenize_with_spans(const std::u32string& joined) {
  std::vector<SpanToken> out;
  std::size_t sent = 1;
  std::size_t word = 1;
  std::size_t line_start = 0;
  std::size_t i = 0;
  auto flush_line = [&](std::size_t end) {
    std::u32string_view line(joined.data() + line_start, end - line_start);
    tokenize_u32(line, [&](std::u32string_view tok, std::size_t off) {
      SpanToken t;
      t.text = utf8_encode(tok);
      t.begin = line_start + off;
      t.end = t.begin + tok.size();
      t.sentence = sent;
      t.word = word++;
      out.push_back(std::move(t));
    });
  };
  for (; i < joined.size(); ++i) {
    if (joined[i] == U'\n') {
      flush_line(i);
      line_start = i + 1;
      ++sent;
      word = 1;
    }
  }
  flush_line(joined.size());
  return out;
}

}  // namespace postedit
