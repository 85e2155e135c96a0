#include <doctest.h>

#include "postedit/tokenize.hpp"

using namespace postedit;

TEST_CASE("trailing punctuation splits off") {
  CHECK(tokenize_sentence("Bonjour,") == std::vector<std::string>{"Bonjour", ","});
  CHECK(tokenize_sentence("espagnol, sinon") ==
        std::vector<std::string>{"espagnol", ",", "sinon"});
}

TEST_CASE("whitespace split") {
  CHECK(tokenize_sentence("sinon notre système").size() == 3);
  CHECK(tokenize_sentence("  a   b  ") == std::vector<std::string>{"a", "b"});
  CHECK(tokenize_sentence("").empty());
}

TEST_CASE("all-punctuation tokens stay whole") {
  CHECK(tokenize_sentence(":)") == std::vector<std::string>{":)"});
  CHECK(tokenize_sentence("système :)") == std::vector<std::string>{"système", ":)"});
}

TEST_CASE("placeholders stay whole") {
  CHECK(tokenize_sentence("<Name>") == std::vector<std::string>{"<Name>"});
  CHECK(tokenize_sentence("Merci <Name>.") ==
        std::vector<std::string>{"Merci", "<Name>", "."});
}

TEST_CASE("leading and trailing runs become single tokens") {
  CHECK(tokenize_sentence("(hello)") == std::vector<std::string>{"(", "hello", ")"});
  CHECK(tokenize_sentence("«mot»...") == std::vector<std::string>{"«mot»", "..."});
  // interior punctuation is untouched
  CHECK(tokenize_sentence("don't") == std::vector<std::string>{"don't"});
}

TEST_CASE("fixture sentence puts 'se' at word 9") {
  const auto toks = tokenize_sentence(
      "Certains agents parlent espagnol, sinon notre système se traduira par :)");
  REQUIRE(toks.size() == 12);
  CHECK(toks[8] == "se");  // word 9, 1-based
  CHECK(toks[4] == ",");
  CHECK(toks[11] == ":)");
}

TEST_CASE("tokenize keeps sentence structure") {
  const TokenizedDoc doc = tokenize({"Bonjour,", "", "a b"});
  REQUIRE(doc.sentences.size() == 3);
  CHECK(doc.sentences[0].size() == 2);
  CHECK(doc.sentences[1].empty());
  CHECK(doc.sentences[2].size() == 2);
  CHECK(doc.word_count() == 4);
}

TEST_CASE("span tokens carry sentence/word indices and spans") {
  const std::u32string joined = U"ab cd\nx yz";
  const auto toks = tokenize_with_spans(joined);
  REQUIRE(toks.size() == 4);
  CHECK(toks[0].sentence == 1);
  CHECK(toks[0].word == 1);
  CHECK(toks[0].begin == 0);
  CHECK(toks[0].end == 2);
  CHECK(toks[2].sentence == 2);
  CHECK(toks[2].word == 1);
  CHECK(toks[3].begin == 8);
  CHECK(toks[3].text == "yz");
}
