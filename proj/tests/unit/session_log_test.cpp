#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "postedit/error.hpp"
#include "postedit/rng.hpp"
#include "postedit/session_log.hpp"
#include "postedit/utf8.hpp"

using namespace postedit;

namespace {

SessionLog minimal_log() {
  SessionLog log;
  log.doc_id = "d1";
  log.editor_id = "e1";
  log.lang_pair = "en-fr";
  log.source_segments = {"Hello world"};
  log.mt_segments = {"Bonjour monde"};
  log.end_t = 1000;
  return log;
}

}  // namespace

TEST_CASE("parse minimal session log") {
  const std::string text =
      R"({"doc_id":"d1","editor_id":"e1","lang_pair":"en-fr",)"
      R"("source_segments":["Hello"],"mt_segments":["Bonjour"],"end_t":600})"
      "\n"
      R"({"t":500,"kind":"INSERT_TEXT","pos":7,"text":"!"})"
      "\n";
  const SessionLog log = parse_session_log(text);
  CHECK(log.events.size() == 1);
  CHECK(log.events[0].t == 500);
  CHECK(log.end_t >= 500);
  CHECK(final_document(log) == "Bonjour!");
}

TEST_CASE("parse rejects degenerate input") {
  CHECK_THROWS_WITH_AS(parse_session_log(std::string_view{""}),
                       doctest::Contains("empty"), Error);

  SessionLog log = minimal_log();
  RawEvent a{900, EventKind::mouse_click, 0, 0, {}};
  RawEvent b{400, EventKind::mouse_click, 0, 0, {}};
  log.events = {a, b};
  log.end_t = 1000;
  try {
    validate_session_log(log);
    FAIL("expected NonMonotonicTime");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_monotonic_time);
  }
}

TEST_CASE("parse rejects out-of-bounds edits") {
  SessionLog log = minimal_log();
  log.events = {RawEvent{10, EventKind::delete_text, 10, 20, {}}};
  try {
    validate_session_log(log);
    FAIL("expected OutOfBoundsEdit");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::out_of_bounds_edit);
  }
}

TEST_CASE("serialize/parse round trip is byte identical") {
  const SessionLog log = testing::email_fixture();
  const std::string once = serialize_session_log(log);
  const std::string twice = serialize_session_log(parse_session_log(once));
  CHECK(once == twice);
}

TEST_CASE("final_document: no events leaves MT unchanged") {
  const SessionLog log = minimal_log();
  CHECK(final_document(log) == "Bonjour monde");
}

TEST_CASE("final_document: email fixture reaches the post-edited text") {
  const SessionLog log = testing::email_fixture();
  CHECK(final_document(log) == testing::email_fixture_pe());
}

TEST_CASE("final_document: mouse events never change the text") {
  SessionLog log = minimal_log();
  log.events = {RawEvent{10, EventKind::mouse_click, 3, 0, {}},
                RawEvent{20, EventKind::mouse_select, 0, 7, {}}};
  CHECK(final_document(log) == joined_mt(log));
}

// Independent oracle: naive code-point splice, one character at a time.
namespace {

std::u32string naive_replay(const SessionLog& log) {
  std::u32string doc = utf8_decode(joined_mt(log));
  for (const auto& e : log.events) {
    if (e.kind == EventKind::insert_text) {
      const std::u32string ins = utf8_decode(e.text);
      std::u32string next;
      for (std::size_t i = 0; i < e.pos; ++i) next.push_back(doc[i]);
      for (char32_t c : ins) next.push_back(c);
      for (std::size_t i = e.pos; i < doc.size(); ++i) next.push_back(doc[i]);
      doc = next;
    } else if (e.kind == EventKind::delete_text) {
      std::u32string next;
      for (std::size_t i = 0; i < doc.size(); ++i)
        if (i < e.pos || i >= e.pos + e.len) next.push_back(doc[i]);
      doc = next;
    }
  }
  return doc;
}

}  // namespace

TEST_CASE("final_document matches brute-force splice on random logs") {
  Rng rng(20240817);
  for (int trial = 0; trial < 50; ++trial) {
    SessionLog log = minimal_log();
    log.mt_segments = {"alpha beta gamma delta", "un deux trois quatre cinq"};
    log.source_segments = {"a b c d", "one two three four five"};
    std::u32string doc = utf8_decode(joined_mt(log));
    std::int64_t t = 0;
    std::size_t inserted = 0, deleted = 0;
    for (int i = 0; i < 20; ++i) {
      t += rng.uniform_int(0, 900);
      RawEvent e;
      e.t = t;
      if (rng.bernoulli(0.5) || doc.empty()) {
        e.kind = EventKind::insert_text;
        e.pos = static_cast<std::size_t>(rng.uniform_u64(doc.size() + 1));
        const int n = static_cast<int>(rng.uniform_int(1, 4));
        for (int k = 0; k < n; ++k)
          e.text += static_cast<char>('a' + rng.uniform_int(0, 25));
        inserted += static_cast<std::size_t>(n);
        doc.insert(e.pos, utf8_decode(e.text));
      } else {
        e.kind = EventKind::delete_text;
        e.pos = static_cast<std::size_t>(rng.uniform_u64(doc.size()));
        e.len = static_cast<std::size_t>(
            rng.uniform_int(1, static_cast<std::int64_t>(
                                   std::min<std::size_t>(4, doc.size() - e.pos))));
        deleted += e.len;
        doc.erase(e.pos, e.len);
      }
      log.events.push_back(std::move(e));
    }
    log.end_t = t + 100;
    validate_session_log(log);
    CHECK(final_document(log) == utf8_encode(naive_replay(log)));
    // length arithmetic: |final| = |MT| + inserted - deleted
    CHECK(utf8_decode(final_document(log)).size() ==
          utf8_decode(joined_mt(log)).size() + inserted - deleted);
  }
}
