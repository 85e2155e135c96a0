#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace postedit {

enum class EventKind { insert_text, delete_text, mouse_click, mouse_select };

const char* event_kind_name(EventKind k);
EventKind event_kind_from_name(const std::string& name);

// One timestamped keyboard or mouse event. `pos`/`len` are code-point
// offsets into the joined document text (MT segments joined by '\n').
struct RawEvent {
  std::int64_t t = 0;  // milliseconds since session start
  EventKind kind = EventKind::insert_text;
  std::size_t pos = 0;
  std::size_t len = 0;    // delete_text / mouse_select
  std::string text;       // insert_text
};

// One post-editing session over one document.
struct SessionLog {
  std::string doc_id;
  std::string editor_id;
  std::string lang_pair;
  std::vector<std::string> source_segments;
  std::vector<std::string> mt_segments;
  std::vector<RawEvent> events;
  std::int64_t end_t = 0;  // session end, ms; >= t of last event
};

// Mutable document state used to replay events. Offsets are code points,
// so multi-byte characters cannot be split by an edit.
class DocumentBuffer {
 public:
  explicit DocumentBuffer(std::string_view utf8);
  explicit DocumentBuffer(std::u32string text);

  // Applies one event; mouse events only validate their range.
  // Throws Error(out_of_bounds_edit).
  void apply(const RawEvent& e);

  std::size_t size() const { return text_.size(); }
  const std::u32string& text() const { return text_; }
  std::string str() const;

 private:
  std::u32string text_;
};

// MT segments joined by a single newline: the initial editable document.
std::string joined_mt(const SessionLog& log);

// Validates structural invariants and replays every event for bounds.
// Throws Error(malformed_record | non_monotonic_time | out_of_bounds_edit).
void validate_session_log(const SessionLog& log);

// Line-delimited JSON: header record, then one record per event.
SessionLog parse_session_log(std::istream& in);
SessionLog parse_session_log(std::string_view bytes);
std::string serialize_session_log(const SessionLog& log);

// The text after applying every event to the joined MT document.
std::string final_document(const SessionLog& log);

}  // namespace postedit
