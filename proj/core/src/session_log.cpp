#include "postedit/session_log.hpp"

#include <istream>
#include <sstream>

#include <json.hpp>

#include "postedit/error.hpp"
#include "postedit/utf8.hpp"

namespace postedit {

using nlohmann::json;

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::insert_text: return "INSERT_TEXT";
    case EventKind::delete_text: return "DELETE_TEXT";
    case EventKind::mouse_click: return "MOUSE_CLICK";
    case EventKind::mouse_select: return "MOUSE_SELECT";
  }
  return "?";
}

EventKind event_kind_from_name(const std::string& name) {
  if (name == "INSERT_TEXT") return EventKind::insert_text;
  if (name == "DELETE_TEXT") return EventKind::delete_text;
  if (name == "MOUSE_CLICK") return EventKind::mouse_click;
  if (name == "MOUSE_SELECT") return EventKind::mouse_select;
  throw Error(Errc::malformed_record, "unknown event kind '" + name + "'");
}

DocumentBuffer::DocumentBuffer(std::string_view utf8) : text_(utf8_decode(utf8)) {}
DocumentBuffer::DocumentBuffer(std::u32string text) : text_(std::move(text)) {}

std::string DocumentBuffer::str() const { return utf8_encode(text_); }

void DocumentBuffer::apply(const RawEvent& e) {
  switch (e.kind) {
    case EventKind::insert_text: {
      if (e.pos > text_.size())
        throw Error(Errc::out_of_bounds_edit, "insert at " + std::to_string(e.pos) +
                                                  " beyond document length " +
                                                  std::to_string(text_.size()));
      text_.insert(e.pos, utf8_decode(e.text));
      break;
    }
    case EventKind::delete_text:
    case EventKind::mouse_select: {
      if (e.pos > text_.size() || e.len > text_.size() - e.pos)
        throw Error(Errc::out_of_bounds_edit,
                    "range [" + std::to_string(e.pos) + ", " +
                        std::to_string(e.pos + e.len) + ") beyond document length " +
                        std::to_string(text_.size()));
      if (e.kind == EventKind::delete_text) text_.erase(e.pos, e.len);
      break;
    }
    case EventKind::mouse_click: {
      if (e.pos > text_.size())
        throw Error(Errc::out_of_bounds_edit, "click beyond document length");
      break;
    }
  }
}

std::string joined_mt(const SessionLog& log) {
  std::string out;
  for (std::size_t i = 0; i < log.mt_segments.size(); ++i) {
    if (i) out += '\n';
    out += log.mt_segments[i];
  }
  return out;
}

void validate_session_log(const SessionLog& log) {
  if (log.mt_segments.empty())
    throw Error(Errc::malformed_record, "mt_segments empty");
  if (log.source_segments.size() != log.mt_segments.size())
    throw Error(Errc::malformed_record, "source/mt segment counts differ");
  for (const auto& seg : log.source_segments)
    if (seg.find('\n') != std::string::npos)
      throw Error(Errc::malformed_record, "segment contains a newline");
  for (const auto& seg : log.mt_segments)
    if (seg.find('\n') != std::string::npos)
      throw Error(Errc::malformed_record, "segment contains a newline");

  std::int64_t prev_t = 0;
  for (const auto& e : log.events) {
    if (e.t < 0) throw Error(Errc::malformed_record, "negative timestamp");
    if (e.t < prev_t) throw Error(Errc::non_monotonic_time,
                                  "timestamp " + std::to_string(e.t) +
                                      " after " + std::to_string(prev_t));
    prev_t = e.t;
    switch (e.kind) {
      case EventKind::insert_text:
        if (e.text.empty())
          throw Error(Errc::malformed_record, "INSERT_TEXT with empty text");
        break;
      case EventKind::delete_text:
      case EventKind::mouse_select:
        if (e.len < 1)
          throw Error(Errc::malformed_record,
                      std::string(event_kind_name(e.kind)) + " with len < 1");
        break;
      case EventKind::mouse_click:
        break;
    }
  }
  if (log.end_t < prev_t)
    throw Error(Errc::non_monotonic_time, "end_t before last event");

  // Replay for bounds.
  DocumentBuffer buf(joined_mt(log));
  for (const auto& e : log.events) buf.apply(e);
}

namespace {

json get_field(const json& rec, const char* key) {
  auto it = rec.find(key);
  if (it == rec.end())
    throw Error(Errc::malformed_record, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t get_size(const json& rec, const char* key) {
  json v = get_field(rec, key);
  if (!v.is_number_unsigned())
    throw Error(Errc::malformed_record, std::string("field '") + key +
                                            "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::int64_t get_time(const json& rec, const char* key) {
  json v = get_field(rec, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw Error(Errc::malformed_record, std::string("field '") + key +
                                            "' must be a non-negative integer");
  return v.get<std::int64_t>();
}

json parse_line(const std::string& line, std::size_t lineno) {
  json rec = json::parse(line, nullptr, false);
  if (rec.is_discarded() || !rec.is_object())
    throw Error(Errc::malformed_record,
                "line " + std::to_string(lineno) + " is not a JSON object");
  return rec;
}

}  // namespace

SessionLog parse_session_log(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;

  // Header record.
  do {
    if (!std::getline(in, line))
      throw Error(Errc::malformed_record, "empty session log stream");
    ++lineno;
  } while (line.empty());

  json hdr = parse_line(line, lineno);
  SessionLog log;
  log.doc_id = get_field(hdr, "doc_id").get<std::string>();
  log.editor_id = get_field(hdr, "editor_id").get<std::string>();
  log.lang_pair = get_field(hdr, "lang_pair").get<std::string>();
  log.source_segments = get_field(hdr, "source_segments").get<std::vector<std::string>>();
  log.mt_segments = get_field(hdr, "mt_segments").get<std::vector<std::string>>();
  log.end_t = get_time(hdr, "end_t");

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json rec = parse_line(line, lineno);
    RawEvent e;
    e.t = get_time(rec, "t");
    e.kind = event_kind_from_name(get_field(rec, "kind").get<std::string>());
    e.pos = get_size(rec, "pos");
    switch (e.kind) {
      case EventKind::insert_text:
        e.text = get_field(rec, "text").get<std::string>();
        break;
      case EventKind::delete_text:
      case EventKind::mouse_select:
        e.len = get_size(rec, "len");
        break;
      case EventKind::mouse_click:
        break;
    }
    log.events.push_back(std::move(e));
  }

  validate_session_log(log);
  return log;
}

SessionLog parse_session_log(std::string_view bytes) {
  std::istringstream in{std::string(bytes)};
  return parse_session_log(in);
}

std::string serialize_session_log(const SessionLog& log) {
  std::string out;
  json hdr;
  hdr["doc_id"] = log.doc_id;
  hdr["editor_id"] = log.editor_id;
  hdr["lang_pair"] = log.lang_pair;
  hdr["source_segments"] = log.source_segments;
  hdr["mt_segments"] = log.mt_segments;
  hdr["end_t"] = log.end_t;
  out += hdr.dump();
  out += '\n';
  for (const auto& e : log.events) {
    json rec;
    rec["t"] = e.t;
    rec["kind"] = event_kind_name(e.kind);
    rec["pos"] = e.pos;
    switch (e.kind) {
      case EventKind::insert_text: rec["text"] = e.text; break;
      case EventKind::delete_text:
      case EventKind::mouse_select: rec["len"] = e.len; break;
      case EventKind::mouse_click: break;
    }
    out += rec.dump();
    out += '\n';
  }
  return out;
}

std::string final_document(const SessionLog& log) {
  DocumentBuffer buf(joined_mt(log));
  for (const auto& e : log.events) buf.apply(e);
  return buf.str();
}

}  // namespace postedit
