#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace postedit {

// The 13-symbol action alphabet: five text-editing actions carrying a word
// or block argument, jump/mouse/wait actions carrying a count, and the
// session stop marker.
enum class ActionType {
  replace,          // R, new word
  insert,           // I, new word
  erase,            // D, old word
  block_insert,     // BI, new block of words
  block_delete,     // BD, old block of words
  jump_fwd,         // JF, # words
  jump_back,        // JB, # words
  jump_sent_fwd,    // JSF, # sentences
  jump_sent_back,   // JSB, # sentences
  mouse_clicks,     // MC, # clicks
  mouse_selects,    // MS, # selections
  wait,             // W, seconds
  stop,             // S
};

constexpr int kActionTypeCount = 13;

const char* action_type_symbol(ActionType t);
ActionType action_type_from_symbol(const std::string& s);

bool is_edit_action(ActionType t);    // R/I/D/BI/BD
bool is_mouse_action(ActionType t);   // MC/MS
bool is_jump_action(ActionType t);    // JF/JB/JSF/JSB

struct Action {
  ActionType type = ActionType::stop;
  std::string word;         // R/I/D word, BI/BD block (words joined by ' ')
  std::int64_t count = 0;   // JF/JB/JSF/JSB/MC/MS/W argument

  static Action edit(ActionType t, std::string w);
  static Action counted(ActionType t, std::int64_t n);
  static Action stop_marker();

  bool operator==(const Action&) const = default;
};

// Canonical display form: "R:traduit", "W:23", bare "S".
std::string action_to_string(const Action& a);
std::string sequence_to_string(const std::vector<Action>& actions);

// File token form is identical except the stop marker is written "S:--".
// Word arguments are escaped so tokens never contain whitespace.
std::string action_to_file_token(const Action& a);
Action action_from_token(const std::string& token);

// One line of the action-sequence text format:
//   editor_id TAB doc_id TAB lang_pair TAB space-separated tokens
struct ActionRecord {
  std::string editor_id;
  std::string doc_id;
  std::string lang_pair;
  std::vector<Action> actions;

  bool operator==(const ActionRecord&) const = default;
};

std::string format_action_record(const ActionRecord& rec);
ActionRecord parse_action_record(const std::string& line);

void write_action_file(std::ostream& out, const std::vector<ActionRecord>& recs);
std::vector<ActionRecord> read_action_file(std::istream& in);

}  // namespace postedit
