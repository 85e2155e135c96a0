#include "postedit/action_extractor.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

#include "postedit/error.hpp"
#include "postedit/utf8.hpp"

namespace postedit {

namespace {

std::int64_t round_seconds(std::int64_t ms) {
  // nearest whole second, ties up
  return (ms + 500) / 1000;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

struct DiffWindow {
  std::size_t prefix = 0;
  std::size_t removed = 0;
  std::size_t inserted = 0;
};

// Maximal-prefix (rightmost) window plus the list of valid left slides.
// A window can slide left by one when the token leaving it on the right
// matches in both lists.
template <typename Str>
std::vector<std::size_t> window_placements(const std::vector<Str>& before,
                                           const std::vector<Str>& after,
                                           DiffWindow& w) {
  const std::size_t n = before.size(), m = after.size();
  std::size_t p = 0;
  while (p < n && p < m && before[p] == after[p]) ++p;
  std::size_t s = 0;
  while (s + p < n && s + p < m && before[n - 1 - s] == after[m - 1 - s]) ++s;
  w.prefix = p;
  w.removed = n - p - s;
  w.inserted = m - p - s;

  std::vector<std::size_t> placements{p};
  std::size_t q = p;
  while (q > 0 && q - 1 + w.removed < n && q - 1 + w.inserted < m &&
         before[q - 1 + w.removed] == after[q - 1 + w.inserted]) {
    --q;
    placements.push_back(q);
  }
  return placements;
}

// Score a placement against the edited char range: overlap for removal
// windows, negated distance for pure insertions.
long long placement_score(std::size_t q, const DiffWindow& w,
                          const std::vector<SpanToken>& before_spans,
                          const CharRange& hint) {
  if (w.removed > 0) {
    const std::size_t wb = before_spans[q].begin;
    const std::size_t we = before_spans[q + w.removed - 1].end;
    const long long lo = static_cast<long long>(std::max(wb, hint.begin));
    const long long hi = static_cast<long long>(std::min(we, hint.end));
    if (hi > lo) return hi - lo;
    // No overlap: prefer the nearest window.
    const long long gap = lo - hi;
    return -gap;
  }
  // Insertion slot: boundary between tokens q-1 and q.
  const long long slot = static_cast<long long>(
      q < before_spans.size() ? before_spans[q].begin
                              : (before_spans.empty() ? 0 : before_spans.back().end));
  const long long want = static_cast<long long>(hint.begin);
  return -std::llabs(slot - want);
}

WordDiff make_word_diff(const std::vector<std::string>& before,
                        const std::vector<std::string>& after,
                        const std::vector<SpanToken>* before_spans,
                        std::optional<CharRange> hint) {
  DiffWindow w;
  auto placements = window_placements(before, after, w);
  if (w.removed == 0 && w.inserted == 0)
    throw Error(Errc::no_change, "token lists are identical");

  std::size_t best = placements.front();
  if (hint && before_spans && placements.size() > 1) {
    long long best_score = placement_score(best, w, *before_spans, *hint);
    for (std::size_t i = 1; i < placements.size(); ++i) {
      const long long sc = placement_score(placements[i], w, *before_spans, *hint);
      if (sc > best_score) {
        best_score = sc;
        best = placements[i];
      }
    }
  }

  WordDiff d;
  d.position = best + 1;
  d.removed.assign(before.begin() + best, before.begin() + best + w.removed);
  d.inserted.assign(after.begin() + best, after.begin() + best + w.inserted);
  return d;
}

}  // namespace

WordDiff word_diff(const std::vector<std::string>& before,
                   const std::vector<std::string>& after,
                   std::optional<CharRange> hint) {
  if (hint) {
    // Give the tokens canonical spans over the space-joined text.
    std::vector<SpanToken> spans;
    spans.reserve(before.size());
    std::size_t off = 0;
    for (const auto& tok : before) {
      SpanToken t;
      t.text = tok;
      t.begin = off;
      t.end = off + utf8_decode(tok).size();
      off = t.end + 1;
      spans.push_back(std::move(t));
    }
    return make_word_diff(before, after, &spans, hint);
  }
  return make_word_diff(before, after, nullptr, std::nullopt);
}

std::vector<Action> diff_to_actions(const WordDiff& d) {
  std::vector<Action> out;
  if (d.removed.size() == 1)
    out.push_back(Action::edit(d.inserted.size() == 1 ? ActionType::replace
                                                      : ActionType::erase,
                               d.removed.size() == 1 && d.inserted.size() == 1
                                   ? d.inserted[0]
                                   : d.removed[0]));
  else if (d.removed.size() >= 2)
    out.push_back(Action::edit(ActionType::block_delete, join_words(d.removed)));
  if (d.inserted.size() >= 2)
    out.push_back(Action::edit(ActionType::block_insert, join_words(d.inserted)));
  else if (d.inserted.size() == 1 && d.removed.size() != 1)
    out.push_back(Action::edit(ActionType::insert, d.inserted[0]));
  return out;
}

namespace {

struct Pending {
  std::int64_t t_begin = 0;
  Cursor anchor;
  bool existed_before = false;
  std::string before_form;
  bool exists_now = false;
  std::string current_form;
  std::size_t flat = 0;
  std::vector<Action> block_prefix;
};

struct BlockStash {
  std::int64_t t_begin = 0;
  Cursor anchor;
  std::vector<std::string> removed;
  std::size_t char_pos = 0;
  std::size_t flat = 0;
};

class Extractor {
 public:
  explicit Extractor(const SessionLog& log)
      : log_(log), buf_(joined_mt(log)), cur_(tokenize_with_spans(buf_.text())) {}

  std::vector<Action> run() {
    for (const auto& e : log_.events) {
      if (!first_input_t_) {
        first_input_t_ = e.t;
        first_is_mouse_ =
            e.kind == EventKind::mouse_click || e.kind == EventKind::mouse_select;
      }
      switch (e.kind) {
        case EventKind::mouse_click:
          commit_pending();
          flush_stash();
          ++clicks_;
          break;
        case EventKind::mouse_select:
          commit_pending();
          flush_stash();
          ++sels_;
          break;
        case EventKind::insert_text:
        case EventKind::delete_text:
          on_text_event(e);
          break;
      }
    }
    commit_pending();
    flush_stash();
    emit_tail();
    return std::move(out_);
  }

 private:
  static std::vector<std::string> token_strings(const std::vector<SpanToken>& toks) {
    std::vector<std::string> out;
    out.reserve(toks.size());
    for (const auto& t : toks) out.push_back(t.text);
    return out;
  }

  void on_text_event(const RawEvent& e) {
    const std::vector<SpanToken> before = cur_;
    buf_.apply(e);
    std::vector<SpanToken> after = tokenize_with_spans(buf_.text());

    const auto before_strs = token_strings(before);
    const auto after_strs = token_strings(after);
    CharRange hint{e.pos, e.kind == EventKind::delete_text ? e.pos + e.len : e.pos};

    WordDiff d;
    try {
      d = make_word_diff(before_strs, after_strs, &before, hint);
    } catch (const Error& err) {
      if (err.code() == Errc::no_change) {  // whitespace-only change
        cur_ = std::move(after);
        return;
      }
      throw;
    }
    const std::size_t p = d.position - 1;

    if (d.single_word()) {
      if (try_coalesce(d, p, e)) {
        cur_ = std::move(after);
        return;
      }
      commit_pending();
      if (try_compose_single(d, p, e)) {
        cur_ = std::move(after);
        return;
      }
      flush_stash();
      start_pending(d, p, e, before, after);
    } else {
      commit_pending();
      if (e.kind == EventKind::delete_text && d.inserted.empty()) {
        flush_stash();
        stash_ = BlockStash{e.t,
                            Cursor{before[p].sentence, before[p].word},
                            d.removed,
                            e.pos,
                            p};
      } else if (e.kind == EventKind::insert_text && stash_ &&
                 e.pos == stash_->char_pos && d.removed.empty() &&
                 p == stash_->flat) {
        // paste replacing a selection: one commit, BD then BI
        std::vector<Action> edits;
        edits.push_back(
            Action::edit(ActionType::block_delete, join_words(stash_->removed)));
        edits.push_back(Action::edit(ActionType::block_insert, join_words(d.inserted)));
        emit_group(stash_->t_begin, stash_->anchor, edits);
        stash_.reset();
      } else {
        flush_stash();
        const Cursor anchor = d.removed.empty()
                                  ? Cursor{after[p].sentence, after[p].word}
                                  : Cursor{before[p].sentence, before[p].word};
        emit_group(e.t, anchor, diff_to_actions(d));
      }
    }
    cur_ = std::move(after);
  }

  bool try_coalesce(const WordDiff& d, std::size_t p, const RawEvent&) {
    if (!pending_) return false;
    if (pending_->exists_now && d.removed.size() == 1 && p == pending_->flat &&
        d.removed[0] == pending_->current_form) {
      pending_->exists_now = !d.inserted.empty();
      pending_->current_form = d.inserted.empty() ? std::string() : d.inserted[0];
      return true;
    }
    if (!pending_->exists_now && d.removed.empty() && d.inserted.size() == 1 &&
        p == pending_->flat) {
      pending_->exists_now = true;
      pending_->current_form = d.inserted[0];
      return true;
    }
    return false;
  }

  // A single-word insertion right after a block delete at the same position
  // starts a pending edit that carries the BD with it (select a block, then
  // type its one-word replacement).
  bool try_compose_single(const WordDiff& d, std::size_t p, const RawEvent& e) {
    if (!stash_ || e.kind != EventKind::insert_text) return false;
    if (e.pos != stash_->char_pos || !d.removed.empty() || d.inserted.size() != 1 ||
        p != stash_->flat)
      return false;
    Pending pend;
    pend.t_begin = stash_->t_begin;
    pend.anchor = stash_->anchor;
    pend.existed_before = false;
    pend.exists_now = true;
    pend.current_form = d.inserted[0];
    pend.flat = p;
    pend.block_prefix.push_back(
        Action::edit(ActionType::block_delete, join_words(stash_->removed)));
    pending_ = std::move(pend);
    stash_.reset();
    return true;
  }

  void start_pending(const WordDiff& d, std::size_t p, const RawEvent& e,
                     const std::vector<SpanToken>& before,
                     const std::vector<SpanToken>& after) {
    Pending pend;
    pend.t_begin = e.t;
    pend.flat = p;
    if (d.removed.size() == 1) {
      pend.anchor = Cursor{before[p].sentence, before[p].word};
      pend.existed_before = true;
      pend.before_form = d.removed[0];
      pend.exists_now = !d.inserted.empty();
      pend.current_form = d.inserted.empty() ? std::string() : d.inserted[0];
    } else {
      pend.anchor = Cursor{after[p].sentence, after[p].word};
      pend.existed_before = false;
      pend.exists_now = true;
      pend.current_form = d.inserted[0];
    }
    pending_ = std::move(pend);
  }

  void commit_pending() {
    if (!pending_) return;
    std::vector<Action> edits = pending_->block_prefix;
    if (pending_->existed_before && pending_->exists_now) {
      if (pending_->before_form != pending_->current_form)
        edits.push_back(Action::edit(ActionType::replace, pending_->current_form));
    } else if (!pending_->existed_before && pending_->exists_now) {
      edits.push_back(Action::edit(ActionType::insert, pending_->current_form));
    } else if (pending_->existed_before && !pending_->exists_now) {
      edits.push_back(Action::edit(ActionType::erase, pending_->before_form));
    }
    if (!edits.empty()) emit_group(pending_->t_begin, pending_->anchor, edits);
    pending_.reset();
  }

  void flush_stash() {
    if (!stash_) return;
    std::vector<Action> edits{
        Action::edit(ActionType::block_delete, join_words(stash_->removed))};
    emit_group(stash_->t_begin, stash_->anchor, edits);
    stash_.reset();
  }

  void emit_group(std::int64_t t_begin, const Cursor& anchor,
                  const std::vector<Action>& edits) {
    if (!any_group_) {
      const std::int64_t fi = first_input_t_.value_or(t_begin);
      out_.push_back(Action::counted(ActionType::wait, round_seconds(fi)));
      emit_mouse();
      if (first_is_mouse_ || fi != t_begin)
        out_.push_back(Action::counted(ActionType::wait, round_seconds(t_begin - fi)));
    } else {
      out_.push_back(
          Action::counted(ActionType::wait, round_seconds(t_begin - last_begin_t_)));
      emit_mouse();
    }

    const auto ds = static_cast<std::int64_t>(anchor.sentence) -
                    static_cast<std::int64_t>(last_anchor_.sentence);
    std::size_t word_ref = last_anchor_.word;
    if (ds > 0) {
      out_.push_back(Action::counted(ActionType::jump_sent_fwd, ds));
      word_ref = 1;  // entering a sentence re-anchors the word index
    } else if (ds < 0) {
      out_.push_back(Action::counted(ActionType::jump_sent_back, -ds));
      word_ref = 1;
    }
    const auto dw = static_cast<std::int64_t>(anchor.word) -
                    static_cast<std::int64_t>(word_ref);
    if (dw > 0)
      out_.push_back(Action::counted(ActionType::jump_fwd, dw));
    else if (dw < 0)
      out_.push_back(Action::counted(ActionType::jump_back, -dw));

    out_.insert(out_.end(), edits.begin(), edits.end());
    last_anchor_ = anchor;
    last_begin_t_ = t_begin;
    any_group_ = true;
  }

  void emit_mouse() {
    if (clicks_) out_.push_back(Action::counted(ActionType::mouse_clicks, clicks_));
    if (sels_) out_.push_back(Action::counted(ActionType::mouse_selects, sels_));
    clicks_ = sels_ = 0;
  }

  void emit_tail() {
    const std::int64_t ref = any_group_ ? last_begin_t_ : 0;
    out_.push_back(Action::counted(ActionType::wait, round_seconds(log_.end_t - ref)));
    emit_mouse();
    out_.push_back(Action::stop_marker());
  }

  const SessionLog& log_;
  DocumentBuffer buf_;
  std::vector<SpanToken> cur_;
  std::vector<Action> out_;
  std::optional<Pending> pending_;
  std::optional<BlockStash> stash_;
  std::int64_t clicks_ = 0;
  std::int64_t sels_ = 0;
  Cursor last_anchor_{1, 1};
  std::int64_t last_begin_t_ = 0;
  std::optional<std::int64_t> first_input_t_;
  bool first_is_mouse_ = false;
  bool any_group_ = false;
};

std::size_t block_word_count(const std::string& block) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : block) {
    if (c == ' ') {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

std::vector<std::string> block_words(const std::string& block) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < block.size()) {
    std::size_t sp = block.find(' ', start);
    if (sp == std::string::npos) sp = block.size();
    if (sp > start) out.push_back(block.substr(start, sp - start));
    start = sp + 1;
  }
  return out;
}

}  // namespace

std::vector<Action> extract_actions(const SessionLog& log) {
  return Extractor(log).run();
}

TokenizedDoc replay(const TokenizedDoc& mt, const std::vector<Action>& actions) {
  TokenizedDoc doc = mt;
  Cursor cur;

  auto sentence_at = [&](std::size_t s) -> std::vector<std::string>& {
    return doc.sentences[s - 1];
  };
  auto require_word = [&](const char* what) {
    if (cur.sentence < 1 || cur.sentence > doc.sentences.size() ||
        cur.word < 1 || cur.word > sentence_at(cur.sentence).size())
      throw Error(Errc::malformed_sequence,
                  std::string(what) + " at sentence " + std::to_string(cur.sentence) +
                      ", word " + std::to_string(cur.word) + ": no word there");
  };

  for (const auto& a : actions) {
    switch (a.type) {
      case ActionType::wait:
      case ActionType::mouse_clicks:
      case ActionType::mouse_selects:
        break;
      case ActionType::jump_sent_fwd:
      case ActionType::jump_sent_back: {
        const std::int64_t delta =
            a.type == ActionType::jump_sent_fwd ? a.count : -a.count;
        const std::int64_t s = static_cast<std::int64_t>(cur.sentence) + delta;
        if (s < 1 || s > static_cast<std::int64_t>(doc.sentences.size()))
          throw Error(Errc::invalid_jump,
                      "sentence jump to " + std::to_string(s) + " of " +
                          std::to_string(doc.sentences.size()));
        cur.sentence = static_cast<std::size_t>(s);
        cur.word = 1;  // word jumps after a sentence jump count from the start
        break;
      }
      case ActionType::jump_fwd:
      case ActionType::jump_back: {
        const std::int64_t delta = a.type == ActionType::jump_fwd ? a.count : -a.count;
        const std::int64_t w = static_cast<std::int64_t>(cur.word) + delta;
        if (w < 1) throw Error(Errc::invalid_jump, "word jump below 1");
        cur.word = static_cast<std::size_t>(w);
        break;
      }
      case ActionType::replace: {
        require_word("replace");
        sentence_at(cur.sentence)[cur.word - 1] = a.word;
        break;
      }
      case ActionType::erase: {
        require_word("delete");
        auto& sent = sentence_at(cur.sentence);
        sent.erase(sent.begin() + static_cast<std::ptrdiff_t>(cur.word - 1));
        break;
      }
      case ActionType::insert: {
        auto& sent = sentence_at(cur.sentence);
        if (cur.word > sent.size() + 1)
          throw Error(Errc::malformed_sequence, "insert beyond sentence end");
        sent.insert(sent.begin() + static_cast<std::ptrdiff_t>(cur.word - 1), a.word);
        break;
      }
      case ActionType::block_insert: {
        auto& sent = sentence_at(cur.sentence);
        if (cur.word > sent.size() + 1)
          throw Error(Errc::malformed_sequence, "block insert beyond sentence end");
        const auto words = block_words(a.word);
        sent.insert(sent.begin() + static_cast<std::ptrdiff_t>(cur.word - 1),
                    words.begin(), words.end());
        break;
      }
      case ActionType::block_delete: {
        require_word("block delete");
        std::size_t remaining = block_word_count(a.word);
        std::size_t s = cur.sentence;
        std::size_t w = cur.word;
        while (remaining > 0) {
          if (s > doc.sentences.size())
            throw Error(Errc::malformed_sequence, "block delete past document end");
          auto& sent = doc.sentences[s - 1];
          const std::size_t take = std::min(remaining, sent.size() - (w - 1));
          sent.erase(sent.begin() + static_cast<std::ptrdiff_t>(w - 1),
                     sent.begin() + static_cast<std::ptrdiff_t>(w - 1 + take));
          remaining -= take;
          if (remaining > 0) {
            ++s;
            w = 1;
          }
        }
        break;
      }
      case ActionType::stop:
        return doc;
    }
  }
  return doc;
}

}  // namespace postedit
