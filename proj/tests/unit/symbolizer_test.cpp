#include <doctest.h>

#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "postedit/action_extractor.hpp"
#include "postedit/error.hpp"
#include "postedit/symbolizer.hpp"

using namespace postedit;

TEST_CASE("bin_value follows the smallest-edge rule") {
  CHECK(bin_label(BinKind::wait, bin_value(BinKind::wait, 0)) == "0");
  CHECK(bin_label(BinKind::wait, bin_value(BinKind::wait, 23)) == "30");
  CHECK(bin_label(BinKind::wait, bin_value(BinKind::wait, 5)) == "5");
  CHECK(bin_label(BinKind::wait, bin_value(BinKind::wait, 6)) == "7");
  CHECK(bin_label(BinKind::wait, bin_value(BinKind::wait, 151)) == "200+");
  CHECK(bin_label(BinKind::wait, bin_value(BinKind::wait, 100000)) == "200+");
  CHECK(bin_label(BinKind::mouse, bin_value(BinKind::mouse, 12)) == "10+");
  CHECK(bin_label(BinKind::sentence_jump, bin_value(BinKind::sentence_jump, 8)) ==
        "10+");
  CHECK(bin_count(BinKind::wait) == 16);
  CHECK(bin_count(BinKind::word_jump) == 16);
  CHECK(bin_count(BinKind::sentence_jump) == 8);
  CHECK(bin_count(BinKind::mouse) == 8);
}

TEST_CASE("bin_value is total and monotone over [0, 1000]") {
  for (const BinKind kind : {BinKind::wait, BinKind::word_jump,
                             BinKind::sentence_jump, BinKind::mouse}) {
    std::size_t prev = 0;
    for (std::int64_t v = 0; v <= 1000; ++v) {
      const std::size_t b = bin_value(kind, v);
      CHECK(b < bin_count(kind));
      CHECK(b >= prev);
      prev = b;
    }
  }
}

namespace {

ActionRecord record_of(std::vector<Action> actions) {
  ActionRecord rec;
  rec.editor_id = "e";
  rec.doc_id = "d";
  rec.lang_pair = "xx-yy";
  rec.actions = std::move(actions);
  return rec;
}

}  // namespace

TEST_CASE("vocabulary size arithmetic") {
  // 3 distinct words -> 5 * 4 + 3*16 + 4*8 + 1 = 101
  const std::vector<ActionRecord> corpus = {record_of({
      Action::edit(ActionType::erase, "a"),
      Action::edit(ActionType::replace, "b"),
      Action::edit(ActionType::insert, "c"),
      Action::stop_marker(),
  })};
  const Vocabulary v = build_vocab(corpus);
  CHECK(v.words().size() == 3);
  CHECK(v.size() == 101);

  // full 50-word vocabulary -> 336 symbols
  std::vector<Action> many;
  for (int i = 0; i < 60; ++i)
    for (int k = 0; k < 60 - i; ++k)
      many.push_back(Action::edit(ActionType::erase, "w" + std::to_string(i)));
  many.push_back(Action::stop_marker());
  const Vocabulary v50 = build_vocab({record_of(many)});
  CHECK(v50.words().size() == 50);
  CHECK(v50.size() == 336);
  // the 50 most frequent kept: w0 (60 occurrences) .. w49 (11 occurrences)
  CHECK(v50.word_index("w0").has_value());
  CHECK(v50.word_index("w49").has_value());
  CHECK_FALSE(v50.word_index("w50").has_value());
}

TEST_CASE("vocabulary ties break lexicographically") {
  // brute-force frequency count oracle: all words once -> purely lexicographic
  std::vector<Action> acts;
  for (const char* w : {"pear", "apple", "fig", "date", "cherry"})
    acts.push_back(Action::edit(ActionType::erase, w));
  acts.push_back(Action::stop_marker());
  const Vocabulary v = build_vocab({record_of(acts)}, 3);
  CHECK(v.words() == std::vector<std::string>{"apple", "cherry", "date"});
}

TEST_CASE("build_vocab rejects an empty corpus") {
  CHECK_THROWS_AS(build_vocab({}), Error);
}

TEST_CASE("symbol table is a bijection over all 336 symbols") {
  std::vector<Action> many;
  for (int i = 0; i < 50; ++i)
    many.push_back(Action::edit(ActionType::erase, "w" + std::to_string(i)));
  many.push_back(Action::stop_marker());
  const Vocabulary v = build_vocab({record_of(many)});
  REQUIRE(v.size() == 336);
  std::set<std::pair<int, std::size_t>> seen;
  for (std::uint32_t id = 0; id < v.size(); ++id) {
    const DecodedSymbol d = v.decode(SymbolId{id});
    seen.insert({static_cast<int>(d.type), d.arg});
    // decode . encode identity via a representative action
    Action a;
    a.type = d.type;
    if (is_edit_action(d.type)) {
      a.word = d.arg == v.unk_index() ? "zz-not-in-vocab" : v.words()[d.arg];
    } else if (d.type != ActionType::stop) {
      // representative value for the bin: its label without the '+' suffix
      const bool wide = d.type == ActionType::wait ||
                        d.type == ActionType::jump_fwd ||
                        d.type == ActionType::jump_back;
      std::string lbl = bin_label(wide ? BinKind::wait : BinKind::mouse, d.arg);
      if (lbl.back() == '+') lbl.pop_back();
      a.count = std::stoll(lbl);
    }
    CHECK(v.encode(a) == SymbolId{id});
  }
  CHECK(seen.size() == v.size());
  CHECK_THROWS_AS(v.decode(SymbolId{336}), Error);
}

TEST_CASE("symbolize preserves length and maps unknown words to UNK") {
  const std::vector<ActionRecord> corpus = {record_of({
      Action::edit(ActionType::erase, "se"),
      Action::stop_marker(),
  })};
  const Vocabulary v = build_vocab(corpus);
  const std::vector<Action> seq = {Action::edit(ActionType::erase, "se"),
                                   Action::edit(ActionType::replace, "rareword"),
                                   Action::stop_marker()};
  const auto ids = symbolize(seq, v);
  REQUIRE(ids.size() == seq.size());
  CHECK(v.decode(ids[0]) == DecodedSymbol{ActionType::erase, 0});
  CHECK(v.decode(ids[1]) == DecodedSymbol{ActionType::replace, v.unk_index()});
  CHECK(v.decode(ids[2]).type == ActionType::stop);
}

TEST_CASE("fixture sequence symbolizes to 17 ids with the same type sequence") {
  const auto log = testing::email_fixture();
  const auto actions = extract_actions(log);
  ActionRecord rec = record_of(actions);
  const Vocabulary v = build_vocab({rec});
  const auto ids = symbolize(actions, v);
  REQUIRE(ids.size() == 17);
  for (std::size_t i = 0; i < ids.size(); ++i)
    CHECK(v.decode(ids[i]).type == actions[i].type);
}

TEST_CASE("anonymize replaces editors and words by dense ids") {
  std::vector<ActionRecord> corpus;
  corpus.push_back(record_of({Action::edit(ActionType::erase, "se"),
                              Action::stop_marker()}));
  corpus.push_back(record_of({Action::edit(ActionType::erase, "rare"),
                              Action::stop_marker()}));
  corpus[0].editor_id = "alice";
  corpus[1].editor_id = "bob";
  Vocabulary v = build_vocab({corpus[0]});  // vocabulary = {"se"}

  const auto anon = anonymize(corpus, v);
  CHECK(anon[0].editor_id == "0");
  CHECK(anon[1].editor_id == "1");
  CHECK(anon[0].actions[0].word == "0");   // "se" -> index 0
  CHECK(anon[1].actions[0].word == "1");   // out of vocabulary -> UNK index

  // idempotent on anonymized input
  const auto twice = anonymize(anon, v);
  CHECK(twice == anon);

  // type sequence unchanged
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t k = 0; k < corpus[i].actions.size(); ++k)
      CHECK(anon[i].actions[k].type == corpus[i].actions[k].type);
}

TEST_CASE("vocabulary and symbol files round trip") {
  std::vector<Action> acts = {Action::edit(ActionType::erase, "se"),
                              Action::edit(ActionType::block_insert, "two words"),
                              Action::stop_marker()};
  const Vocabulary v = build_vocab({record_of(acts)});
  std::stringstream vf;
  write_vocab(vf, v);
  const Vocabulary v2 = read_vocab(vf);
  CHECK(v2.words() == v.words());
  CHECK(v2.size() == v.size());

  std::stringstream sf;
  SymbolRecord rec{"e1", "d1", symbolize(acts, v)};
  write_symbol_file(sf, {rec});
  const auto back = read_symbol_file(sf);
  REQUIRE(back.size() == 1);
  CHECK(back[0].symbols == rec.symbols);
  CHECK(back[0].editor_id == "e1");
}
