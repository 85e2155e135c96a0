#pragma once

#include <string>
#include <vector>

#include "postedit/session_log.hpp"

namespace postedit::testing {

// A small customer-service email session: the editor waits, deletes "se",
// deletes "par" via a mouse selection, replaces "traduira" with "traduit"
// after another selection, makes one final selection and stops. Expected
// action sequence:
//   W:23 JSF:1 JF:8 D:se W:2 MC:1 MS:1 JF:1 D:par
//   W:7 MC:1 MS:1 JB:1 R:traduit W:2 MS:1 S
inline SessionLog email_fixture() {
  SessionLog log;
  log.doc_id = "doc-0001";
  log.editor_id = "editor-a";
  log.lang_pair = "en-fr";
  log.source_segments = {
      "Hey there,",
      "Some agents do speak Spanish, otherwise our system will translate :)",
      "Best,",
      "<Name>",
  };
  log.mt_segments = {
      "Bonjour,",
      "Certains agents parlent espagnol, sinon notre système se traduira par :)",
      "Cordialement,",
      "<Name>",
  };
  auto ev = [&](std::int64_t t, EventKind kind, std::size_t pos, std::size_t len,
                std::string text = {}) {
    RawEvent e;
    e.t = t;
    e.kind = kind;
    e.pos = pos;
    e.len = len;
    e.text = std::move(text);
    log.events.push_back(std::move(e));
  };
  // Offsets are code points into the joined MT document ("système" has an
  // accented character, so offsets are not byte offsets).
  ev(23000, EventKind::delete_text, 63, 3);        // "se "
  ev(24200, EventKind::mouse_click, 70, 0);
  ev(24600, EventKind::mouse_select, 72, 4);       // "par "
  ev(25000, EventKind::delete_text, 72, 4);
  ev(30500, EventKind::mouse_click, 65, 0);
  ev(31000, EventKind::mouse_select, 63, 8);       // "traduira"
  ev(32000, EventKind::delete_text, 63, 8);
  ev(32600, EventKind::insert_text, 63, 0, "traduit");
  ev(33500, EventKind::mouse_select, 49, 5);       // "notre"
  log.end_t = 34000;
  return log;
}

inline const char* email_fixture_golden() {
  return "W:23 JSF:1 JF:8 D:se W:2 MC:1 MS:1 JF:1 D:par "
         "W:7 MC:1 MS:1 JB:1 R:traduit W:2 MS:1 S";
}

inline std::string email_fixture_pe() {
  return "Bonjour,\n"
         "Certains agents parlent espagnol, sinon notre système traduit :)\n"
         "Cordialement,\n"
         "<Name>";
}

}  // namespace postedit::testing
