#include "postedit/action.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <sstream>

#include "postedit/error.hpp"

namespace postedit {

namespace {

struct TypeName {
  ActionType type;
  const char* symbol;
};

constexpr std::array<TypeName, kActionTypeCount> kTypeNames = {{
    {ActionType::replace, "R"},
    {ActionType::insert, "I"},
    {ActionType::erase, "D"},
    {ActionType::block_insert, "BI"},
    {ActionType::block_delete, "BD"},
    {ActionType::jump_fwd, "JF"},
    {ActionType::jump_back, "JB"},
    {ActionType::jump_sent_fwd, "JSF"},
    {ActionType::jump_sent_back, "JSB"},
    {ActionType::mouse_clicks, "MC"},
    {ActionType::mouse_selects, "MS"},
    {ActionType::wait, "W"},
    {ActionType::stop, "S"},
}};

// Word arguments may contain characters that collide with the token and
// record delimiters; percent-escape those.
std::string escape_arg(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case ' ': out += "%20"; break;
      case '\t': out += "%09"; break;
      case '\n': out += "%0A"; break;
      case '%': out += "%25"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_arg(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      const std::string hex = s.substr(i + 1, 2);
      if (hex == "20") { out += ' '; i += 2; continue; }
      if (hex == "09") { out += '\t'; i += 2; continue; }
      if (hex == "0A") { out += '\n'; i += 2; continue; }
      if (hex == "25") { out += '%'; i += 2; continue; }
    }
    out += s[i];
  }
  return out;
}

}  // namespace

const char* action_type_symbol(ActionType t) {
  for (const auto& tn : kTypeNames)
    if (tn.type == t) return tn.symbol;
  return "?";
}

ActionType action_type_from_symbol(const std::string& s) {
  for (const auto& tn : kTypeNames)
    if (s == tn.symbol) return tn.type;
  throw Error(Errc::malformed_record, "unknown action symbol '" + s + "'");
}

bool is_edit_action(ActionType t) {
  return t == ActionType::replace || t == ActionType::insert ||
         t == ActionType::erase || t == ActionType::block_insert ||
         t == ActionType::block_delete;
}

bool is_mouse_action(ActionType t) {
  return t == ActionType::mouse_clicks || t == ActionType::mouse_selects;
}

bool is_jump_action(ActionType t) {
  return t == ActionType::jump_fwd || t == ActionType::jump_back ||
         t == ActionType::jump_sent_fwd || t == ActionType::jump_sent_back;
}

Action Action::edit(ActionType t, std::string w) {
  Action a;
  a.type = t;
  a.word = std::move(w);
  return a;
}

Action Action::counted(ActionType t, std::int64_t n) {
  Action a;
  a.type = t;
  a.count = n;
  return a;
}

Action Action::stop_marker() { return Action{}; }

std::string action_to_string(const Action& a) {
  if (a.type == ActionType::stop) return "S";
  std::string out = action_type_symbol(a.type);
  out += ':';
  if (is_edit_action(a.type))
    out += escape_arg(a.word);
  else
    out += std::to_string(a.count);
  return out;
}

std::string sequence_to_string(const std::vector<Action>& actions) {
  std::string out;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i) out += ' ';
    out += action_to_string(actions[i]);
  }
  return out;
}

std::string action_to_file_token(const Action& a) {
  if (a.type == ActionType::stop) return "S:--";
  return action_to_string(a);
}

Action action_from_token(const std::string& token) {
  const std::size_t colon = token.find(':');
  const std::string sym = token.substr(0, colon);
  const ActionType t = action_type_from_symbol(sym);
  Action a;
  a.type = t;
  if (t == ActionType::stop) return a;  // accepts "S" and "S:--"
  if (colon == std::string::npos)
    throw Error(Errc::malformed_record, "action token '" + token + "' has no argument");
  const std::string arg = token.substr(colon + 1);
  if (is_edit_action(t)) {
    a.word = unescape_arg(arg);
    if (a.word.empty())
      throw Error(Errc::malformed_record, "empty word argument in '" + token + "'");
  } else {
    try {
      std::size_t used = 0;
      a.count = std::stoll(arg, &used);
      if (used != arg.size() || a.count < 0) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw Error(Errc::malformed_record, "bad numeric argument in '" + token + "'");
    }
  }
  return a;
}

std::string format_action_record(const ActionRecord& rec) {
  std::string out = rec.editor_id;
  out += '\t';
  out += rec.doc_id;
  out += '\t';
  out += rec.lang_pair;
  out += '\t';
  for (std::size_t i = 0; i < rec.actions.size(); ++i) {
    if (i) out += ' ';
    out += action_to_file_token(rec.actions[i]);
  }
  return out;
}

ActionRecord parse_action_record(const std::string& line) {
  std::array<std::string, 4> cols;
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos)
      throw Error(Errc::malformed_record, "action record needs 4 tab-separated columns");
    cols[i] = line.substr(start, tab - start);
    start = tab + 1;
  }
  cols[3] = line.substr(start);

  ActionRecord rec;
  rec.editor_id = cols[0];
  rec.doc_id = cols[1];
  rec.lang_pair = cols[2];
  std::istringstream toks(cols[3]);
  std::string tok;
  while (toks >> tok) rec.actions.push_back(action_from_token(tok));
  if (rec.actions.empty())
    throw Error(Errc::malformed_record, "action record with no actions");
  return rec;
}

void write_action_file(std::ostream& out, const std::vector<ActionRecord>& recs) {
  for (const auto& rec : recs) out << format_action_record(rec) << '\n';
}

std::vector<ActionRecord> read_action_file(std::istream& in) {
  std::vector<ActionRecord> recs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    recs.push_back(parse_action_record(line));
  }
  return recs;
}

}  // namespace postedit
