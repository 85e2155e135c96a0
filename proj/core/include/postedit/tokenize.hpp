#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace postedit {

// Word/punctuation tokens grouped by sentence. Sentences correspond to the
// document's segments; word-level edits never change the sentence count,
// though a sentence may become empty.
struct TokenizedDoc {
  std::vector<std::vector<std::string>> sentences;

  std::size_t word_count() const;
  std::vector<std::string> flat() const;
  bool operator==(const TokenizedDoc&) const = default;
};

// Tokenization convention:
//   1. split on whitespace;
//   2. a token that is all punctuation stays whole (":)" is one token);
//   3. a token of the form <...> stays whole (anonymization placeholders
//      such as <Name> are atomic);
//   4. otherwise a leading and a trailing punctuation run are split off as
//      single tokens ("Bonjour," -> ["Bonjour", ","]).
// Punctuation means ASCII graphic characters that are not alphanumeric;
// non-ASCII characters always count as word characters.
std::vector<std::string> tokenize_sentence(std::string_view sentence);

TokenizedDoc tokenize(const std::vector<std::string>& segments);

// Tokenize text that may contain newlines by splitting it into segments
// first (final_document output).
TokenizedDoc tokenize_text(std::string_view text);

std::vector<std::string> split_lines(std::string_view text);

// Span-aware tokens over a joined document, used by the action extractor.
struct SpanToken {
  std::string text;
  std::size_t begin = 0;  // code point offsets into the joined document
  std::size_t end = 0;
  std::size_t sentence = 0;  // 1-based
  std::size_t word = 0;      // 1-based within the sentence
};

std::vector<SpanToken> tokenize_with_spans(const std::u32string& joined);

}  // namespace postedit
