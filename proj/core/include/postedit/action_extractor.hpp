#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "postedit/action.hpp"
#include "postedit/session_log.hpp"
#include "postedit/tokenize.hpp"

namespace postedit {

// Position of the word currently being edited: 1-based sentence index and
// 1-based word index within that sentence.
struct Cursor {
  std::size_t sentence = 1;
  std::size_t word = 1;
  bool operator==(const Cursor&) const = default;
};

// Result of diffing two token lists. `position` is the 1-based index of the
// first affected word (flat, across sentences); `removed`/`inserted` hold
// the window contents. Single-word changes classify as R/I/D, multi-word
// changes as a BD and/or BI composition.
struct WordDiff {
  std::size_t position = 0;
  std::vector<std::string> removed;
  std::vector<std::string> inserted;

  bool single_word() const { return removed.size() <= 1 && inserted.size() <= 1; }
};

struct CharRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // half-open
};

// Diffs `before` against `after` at the word level. Throws
// Error(no_change) when the lists are equal. The optional hint (a code
// point range over the space-joined `before` text) disambiguates window
// placement when equal neighbouring tokens allow several alignments.
WordDiff word_diff(const std::vector<std::string>& before,
                   const std::vector<std::string>& after,
                   std::optional<CharRange> hint = std::nullopt);

// Converts the change a word-diff describes into 1 or 2 edit actions
// (R/I/D, or BD/BI for windows spanning several words).
std::vector<Action> diff_to_actions(const WordDiff& d);

// Compiles a session's raw events into its action sequence. Emits, per
// committed edit, the group <W, MC?, MS?, JSF|JSB?, JF|JB?, edit...> and a
// final <W, MC?, MS?, S> tail; the first waiting time is split in two when
// the session's first input event does not begin the first edit.
std::vector<Action> extract_actions(const SessionLog& log);

// Applies an action sequence to a tokenized MT document: jumps move the
// cursor, R/I/D/BI/BD mutate tokens, W/MC/MS are ignored, S stops.
// Inverse oracle of extract_actions.
TokenizedDoc replay(const TokenizedDoc& mt, const std::vector<Action>& actions);

}  // namespace postedit
