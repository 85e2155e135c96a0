#include <doctest.h>

#include "fixtures.hpp"
#include "postedit/action_extractor.hpp"
#include "postedit/error.hpp"
#include "postedit/session_log.hpp"
#include "postedit/tokenize.hpp"

using namespace postedit;

TEST_CASE("golden extraction of the email fixture") {
  const SessionLog log = testing::email_fixture();
  const auto actions = extract_actions(log);
  CHECK(sequence_to_string(actions) == testing::email_fixture_golden());
}

TEST_CASE("no-edit session emits wait then stop") {
  SessionLog log;
  log.doc_id = "d";
  log.editor_id = "e";
  log.lang_pair = "xx-yy";
  log.source_segments = {"a"};
  log.mt_segments = {"b"};
  log.end_t = 12300;
  const auto actions = extract_actions(log);
  CHECK(sequence_to_string(actions) == "W:12 S");
}

TEST_CASE("first waiting time splits when a mouse event comes first") {
  SessionLog log;
  log.doc_id = "d";
  log.editor_id = "e";
  log.lang_pair = "xx-yy";
  log.source_segments = {"one two three"};
  log.mt_segments = {"uno dos tres"};
  // click at 2s, then replace word (1,2) beginning at 5s
  log.events = {
      RawEvent{2000, EventKind::mouse_click, 4, 0, {}},
      RawEvent{5000, EventKind::delete_text, 4, 3, {}},   // "dos"
      RawEvent{5400, EventKind::insert_text, 4, 0, "deux"},
  };
  log.end_t = 6000;
  const auto actions = extract_actions(log);
  CHECK(sequence_to_string(actions) == "W:2 MC:1 W:3 JF:1 R:deux W:1 S");
}

TEST_CASE("wait rounds to nearest second, ties up") {
  SessionLog log;
  log.doc_id = "d";
  log.editor_id = "e";
  log.lang_pair = "xx-yy";
  log.source_segments = {"a b"};
  log.mt_segments = {"aa bb"};
  log.events = {RawEvent{1500, EventKind::delete_text, 3, 2, {}}};  // "bb"
  log.end_t = 1500;
  const auto actions = extract_actions(log);
  CHECK(sequence_to_string(actions) == "W:2 JF:1 D:bb W:0 S");
}

TEST_CASE("selection-replacing paste emits BD then BI in one group") {
  SessionLog log;
  log.doc_id = "d";
  log.editor_id = "e";
  log.lang_pair = "xx-yy";
  log.source_segments = {"s"};
  log.mt_segments = {"alpha beta gamma delta"};
  log.events = {
      RawEvent{1000, EventKind::mouse_select, 6, 10, {}},          // "beta gamma"
      RawEvent{2000, EventKind::delete_text, 6, 10, {}},
      RawEvent{2000, EventKind::insert_text, 6, 0, "x y z"},
  };
  log.end_t = 3000;
  const auto actions = extract_actions(log);
  // first wait splits around the leading selection; BD/BI stay one group
  CHECK(sequence_to_string(actions) ==
        "W:1 MS:1 W:1 JF:1 BD:beta%20gamma BI:x%20y%20z W:1 S");
  // replays to the pasted text
  const auto final_toks = tokenize_text(final_document(log));
  CHECK(replay(tokenize(log.mt_segments), actions) == final_toks);
}

TEST_CASE("word_diff classifies single and multi word changes") {
  using V = std::vector<std::string>;
  SUBCASE("substitution") {
    const WordDiff d = word_diff(V{"a", "b", "c"}, V{"a", "x", "c"});
    CHECK(d.position == 2);
    CHECK(d.removed == V{"b"});
    CHECK(d.inserted == V{"x"});
    const auto acts = diff_to_actions(d);
    REQUIRE(acts.size() == 1);
    CHECK(acts[0] == Action::edit(ActionType::replace, "x"));
  }
  SUBCASE("deletion") {
    const WordDiff d = word_diff(V{"a", "b", "c"}, V{"a", "c"});
    CHECK(d.position == 2);
    const auto acts = diff_to_actions(d);
    REQUIRE(acts.size() == 1);
    CHECK(acts[0] == Action::edit(ActionType::erase, "b"));
  }
  SUBCASE("block replacement composes BD then BI") {
    const WordDiff d = word_diff(V{"a", "b", "c", "d"}, V{"a", "x", "y", "z", "d"});
    CHECK(d.position == 2);
    const auto acts = diff_to_actions(d);
    REQUIRE(acts.size() == 2);
    CHECK(acts[0] == Action::edit(ActionType::block_delete, "b c"));
    CHECK(acts[1] == Action::edit(ActionType::block_insert, "x y z"));
  }
  SUBCASE("no change throws") {
    CHECK_THROWS_AS(word_diff(V{"a"}, V{"a"}), Error);
  }
  SUBCASE("hint disambiguates equal neighbours") {
    // deleting the first of three equal words; hint points at chars [0,1)
    const WordDiff d = word_diff(V{"a", "a", "a"}, V{"a", "a"}, CharRange{0, 1});
    CHECK(d.position == 1);
    const WordDiff d2 = word_diff(V{"a", "a", "a"}, V{"a", "a"}, CharRange{4, 5});
    CHECK(d2.position == 3);
  }
}

TEST_CASE("replay of the email fixture reproduces the post-edited tokens") {
  const SessionLog log = testing::email_fixture();
  const auto actions = extract_actions(log);
  const TokenizedDoc got = replay(tokenize(log.mt_segments), actions);
  CHECK(got == tokenize_text(testing::email_fixture_pe()));
}

TEST_CASE("replay identity and jump errors") {
  const TokenizedDoc doc = tokenize({"a b c", "d e"});
  SUBCASE("waits and mouse actions are ignored") {
    const std::vector<Action> seq = {Action::counted(ActionType::wait, 5),
                                     Action::stop_marker()};
    CHECK(replay(doc, seq) == doc);
  }
  SUBCASE("sentence jump out of bounds") {
    const std::vector<Action> seq = {Action::counted(ActionType::jump_sent_fwd, 2),
                                     Action::stop_marker()};
    try {
      replay(doc, seq);
      FAIL("expected InvalidJump");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::invalid_jump);
    }
  }
  SUBCASE("edit on an empty document") {
    const TokenizedDoc empty = tokenize({""});
    const std::vector<Action> seq = {Action::edit(ActionType::replace, "x"),
                                     Action::stop_marker()};
    try {
      replay(empty, seq);
      FAIL("expected MalformedSequence");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::malformed_sequence);
    }
  }
}

TEST_CASE("coalescing: character-by-character typing is one action") {
  SessionLog log;
  log.doc_id = "d";
  log.editor_id = "e";
  log.lang_pair = "xx-yy";
  log.source_segments = {"s"};
  log.mt_segments = {"aa bb cc"};
  // backspace "bb" one char at a time, then type "xyz" one char at a time
  log.events = {
      RawEvent{1000, EventKind::delete_text, 4, 1, {}},
      RawEvent{1100, EventKind::delete_text, 3, 1, {}},
      RawEvent{1200, EventKind::insert_text, 3, 0, "x"},
      RawEvent{1300, EventKind::insert_text, 4, 0, "y"},
      RawEvent{1400, EventKind::insert_text, 5, 0, "z"},
  };
  log.end_t = 2000;
  const auto actions = extract_actions(log);
  CHECK(sequence_to_string(actions) == "W:1 JF:1 R:xyz W:1 S");
}

TEST_CASE("typing a brand-new word emits I") {
  SessionLog log;
  log.doc_id = "d";
  log.editor_id = "e";
  log.lang_pair = "xx-yy";
  log.source_segments = {"s"};
  log.mt_segments = {"aa bb"};
  log.events = {
      RawEvent{1000, EventKind::insert_text, 5, 0, " "},
      RawEvent{1200, EventKind::insert_text, 6, 0, "n"},
      RawEvent{1300, EventKind::insert_text, 7, 0, "ew"},
  };
  log.end_t = 2000;
  const auto actions = extract_actions(log);
  // the bare space is a no-op; the new word begins at t=1.2s
  CHECK(sequence_to_string(actions) == "W:1 W:0 JF:2 I:new W:1 S");
}
