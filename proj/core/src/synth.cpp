#include "postedit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "postedit/rng.hpp"
#include "postedit/tokenize.hpp"

namespace postedit::synth {

namespace {

constexpr std::size_t kLexiconSize = 200;

const std::vector<std::string>& target_lexicon() {
  static const std::vector<std::string> lex = [] {
    static const char* syl[20] = {"ba", "be", "bi", "bo", "bu", "da", "de",
                                  "di", "do", "du", "ka", "ke", "ki", "ko",
                                  "ku", "la", "le", "li", "lo", "lu"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < kLexiconSize; ++i)
      out.push_back(std::string(syl[i / 20]) + syl[i % 20]);
    return out;
  }();
  return lex;
}

const std::vector<std::string>& source_lexicon() {
  static const std::vector<std::string> lex = [] {
    static const char* syl[20] = {"ma", "me", "mi", "mo", "mu", "na", "ne",
                                  "ni", "no", "nu", "pa", "pe", "pi", "po",
                                  "pu", "ra", "re", "ri", "ro", "ru"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < kLexiconSize; ++i)
      out.push_back(std::string(syl[i / 20]) + syl[i % 20]);
    return out;
  }();
  return lex;
}

// Zipf-ish draw so the top of the lexicon dominates and a 50-word
// vocabulary is meaningful.
std::size_t draw_word(Rng& rng) {
  const double u = rng.uniform();
  return static_cast<std::size_t>(u * u * static_cast<double>(kLexiconSize)) %
         kLexiconSize;
}

std::size_t poisson(Rng& rng, double lambda) {
  if (lambda <= 0.0) return 0;
  const double limit = std::exp(-lambda);
  std::size_t k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= rng.uniform();
  } while (p > limit);
  return k - 1;
}

struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct Rendered {
  std::string text;
  std::vector<std::vector<CharSpan>> spans;  // parallel to sentences/cells
  std::vector<std::size_t> sentence_begin;
};

Rendered render(const std::vector<std::vector<Cell>>& sentences) {
  Rendered out;
  out.spans.resize(sentences.size());
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    if (s) out.text += '\n';
    out.sentence_begin.push_back(out.text.size());
    const auto& cells = sentences[s];
    out.spans[s].resize(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0 && !cells[i].attach) out.text += ' ';
      out.spans[s][i].begin = out.text.size();
      out.text += cells[i].text;
      out.spans[s][i].end = out.text.size();
    }
  }
  return out;
}

std::size_t find_cell(const std::vector<Cell>& cells, std::uint32_t id) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].id == id) return i;
  return cells.size();
}

}  // namespace

std::vector<std::string> SynthDocument::mt_segments() const {
  return split_lines(render(mt_sentences).text);
}

std::size_t SynthDocument::source_word_count() const {
  return tokenize(source_segments).word_count();
}

std::vector<EditorProfile> default_profiles() {
  // planner = reads first, edits left to right, keyboard-centric
  // jumper  = starts fast, hops back and forth, mouse-centric
  std::vector<EditorProfile> out;
  auto add = [&](std::string id, double rf_mean, double rf_sd, double typing,
                 double mouse, double jb, double block, double speed,
                 double edit_rate) {
    EditorProfile p;
    p.profile_id = std::move(id);
    p.read_first_mean_s = rf_mean;
    p.read_first_sd_s = rf_sd;
    p.typing_interval_mean_ms = typing;
    p.typing_interval_sd_ms = typing * 0.3;
    p.mouse_rate = mouse;
    p.jump_back_prob = jb;
    p.block_op_prob = block;
    p.speed_multiplier = speed;
    p.edit_rate = edit_rate;
    out.push_back(std::move(p));
  };
  add("planner-slow", 28.0, 5.0, 290.0, 0.30, 0.04, 0.32, 2.4, 0.88);
  add("planner-mid", 20.0, 4.0, 230.0, 0.50, 0.06, 0.20, 1.5, 0.74);
  add("planner-fast", 14.0, 3.0, 175.0, 0.70, 0.08, 0.10, 0.95, 0.60);
  add("jumper-slow", 3.0, 1.0, 270.0, 1.20, 0.24, 0.06, 2.1, 0.62);
  add("jumper-mid", 5.0, 1.3, 205.0, 2.00, 0.40, 0.12, 1.3, 0.44);
  add("jumper-fast", 7.5, 1.6, 150.0, 2.90, 0.56, 0.04, 0.70, 0.28);
  return out;
}

SynthDocument generate_document(std::uint64_t seed, std::size_t n_sentences,
                                std::size_t words_per_sentence,
                                double error_fraction) {
  Rng rng(seed);
  SynthDocument doc;
  std::uint32_t next_id = 1;
  std::size_t word_cells = 0;

  for (std::size_t s = 0; s < n_sentences; ++s) {
    std::vector<Cell> cells;
    const bool name_signoff = s + 1 == n_sentences && rng.bernoulli(0.15);
    if (name_signoff) {
      cells.push_back(Cell{next_id++, "<Name>", false});
    } else {
      const std::int64_t lo =
          std::max<std::int64_t>(3, static_cast<std::int64_t>(words_per_sentence) - 4);
      const std::int64_t hi = static_cast<std::int64_t>(words_per_sentence) + 1;
      const std::size_t len = static_cast<std::size_t>(rng.uniform_int(lo, hi));
      const bool comma = len >= 5 && rng.bernoulli(0.25);
      const std::size_t comma_after =
          comma ? static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(len) - 1))
                : 0;
      for (std::size_t w = 0; w < len; ++w) {
        cells.push_back(Cell{next_id++, target_lexicon()[draw_word(rng)], false});
        ++word_cells;
        if (comma && w + 1 == comma_after)
          cells.push_back(Cell{next_id++, ",", true});
      }
      cells.push_back(Cell{next_id++, ".", true});
    }
    doc.mt_sentences.push_back(std::move(cells));
  }

  // Source: aligned sentence count, similar lengths, its own lexicon.
  for (const auto& cells : doc.mt_sentences) {
    std::string src;
    std::size_t words = 0;
    for (const auto& c : cells)
      if (!c.attach && c.text != "<Name>") ++words;
    if (words == 0) {
      src = "<Name>";
    } else {
      for (std::size_t w = 0; w < words; ++w) {
        if (w) src += ' ';
        src += source_lexicon()[draw_word(rng)];
      }
      src += '.';
    }
    doc.source_segments.push_back(std::move(src));
  }

  // Plant errors on word cells.
  std::vector<std::pair<std::size_t, std::size_t>> eligible;  // (sentence idx, cell idx)
  for (std::size_t s = 0; s < doc.mt_sentences.size(); ++s)
    for (std::size_t i = 0; i < doc.mt_sentences[s].size(); ++i) {
      const Cell& c = doc.mt_sentences[s][i];
      if (!c.attach && c.text != "<Name>") eligible.push_back({s, i});
    }
  rng.shuffle(eligible);
  const std::size_t n_errors = static_cast<std::size_t>(
      std::llround(error_fraction * static_cast<double>(word_cells)));
  std::vector<std::pair<std::size_t, std::size_t>> chosen(
      eligible.begin(), eligible.begin() + std::min(n_errors, eligible.size()));
  // deterministic order: by position
  std::sort(chosen.begin(), chosen.end());

  for (auto [s, i] : chosen) {
    Cell& cell = doc.mt_sentences[s][i];
    const double kind_draw = rng.uniform();
    SynthError err;
    err.sentence = s + 1;
    if (kind_draw < 0.70) {
      err.kind = SynthError::Kind::substitution;
      err.cell_id = cell.id;
      err.correction = cell.text;
      std::size_t other = draw_word(rng);
      while (target_lexicon()[other] == cell.text) other = (other + 1) % kLexiconSize;
      cell.text = target_lexicon()[other];  // the MT shows the wrong word
    } else if (kind_draw < 0.85) {
      err.kind = SynthError::Kind::spurious;
      err.cell_id = cell.id;  // this extra word must be deleted
      err.correction.clear();
    } else {
      err.kind = SynthError::Kind::missing;
      err.cell_id = i > 0 ? doc.mt_sentences[s][i - 1].id : 0;
      err.correction = target_lexicon()[draw_word(rng)];
    }
    doc.errors.push_back(std::move(err));
  }
  return doc;
}

namespace {

struct EventSink {
  SessionLog* log;
  std::int64_t t = 0;

  void advance(Rng& rng, double mean_ms, double sd_ms, double scale) {
    const double gap = rng.normal(mean_ms, sd_ms) * scale;
    t += std::max<std::int64_t>(20, static_cast<std::int64_t>(std::llround(gap)));
  }

  void push(EventKind kind, std::size_t pos, std::size_t len, std::string text = {}) {
    RawEvent e;
    e.t = t;
    e.kind = kind;
    e.pos = pos;
    e.len = len;
    e.text = std::move(text);
    log->events.push_back(std::move(e));
  }
};

// Types text one character per event, left to right.
void type_text(EventSink& sink, Rng& rng, const EditorProfile& p,
               std::size_t pos, const std::string& text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i > 0)
      sink.advance(rng, p.typing_interval_mean_ms, p.typing_interval_sd_ms,
                   p.speed_multiplier);
    sink.push(EventKind::insert_text, pos + i, 0, std::string(1, text[i]));
  }
}

}  // namespace

SynthSession generate_session(const EditorProfile& profile,
                              const SynthDocument& doc, std::uint64_t seed,
                              std::string doc_id, std::string editor_id,
                              std::string lang_pair) {
  Rng rng(seed);
  SynthSession out;
  out.profile_id = profile.profile_id;
  out.log.doc_id = std::move(doc_id);
  out.log.editor_id = std::move(editor_id);
  out.log.lang_pair = std::move(lang_pair);
  out.log.source_segments = doc.source_segments;
  out.log.mt_segments = doc.mt_segments();

  std::vector<std::vector<Cell>> state = doc.mt_sentences;
  std::uint32_t next_cell_id = 100000;

  // Which errors this session fixes.
  std::vector<SynthError> plan;
  for (const auto& err : doc.errors)
    if (rng.bernoulli(profile.edit_rate)) plan.push_back(err);

  // Visit order: monotone by position; with probability jump_back_prob the
  // next target is picked anywhere, which leaves gaps behind and forces
  // later returns (the jumper style).
  std::vector<std::size_t> order;
  {
    std::vector<bool> used(plan.size(), false);
    std::size_t cursor = 0;  // plan entries are position-sorted
    for (std::size_t visited = 0; visited < plan.size(); ++visited) {
      std::size_t pick = plan.size();
      if (rng.bernoulli(profile.jump_back_prob)) {
        if (rng.bernoulli(0.7)) {
          // usually hop back to the nearest earlier unvisited target,
          // which often sits in the same sentence
          for (std::size_t i = cursor; i-- > 0;)
            if (!used[i]) { pick = i; break; }
        }
        if (pick == plan.size()) {
          std::vector<std::size_t> unvisited;
          for (std::size_t i = 0; i < plan.size(); ++i)
            if (!used[i]) unvisited.push_back(i);
          pick = unvisited[rng.uniform_u64(unvisited.size())];
        }
      } else {
        for (std::size_t i = cursor; i < plan.size(); ++i)
          if (!used[i]) { pick = i; break; }
        if (pick == plan.size())
          for (std::size_t i = 0; i < plan.size(); ++i)
            if (!used[i]) { pick = i; break; }
      }
      used[pick] = true;
      order.push_back(pick);
      cursor = pick;
    }
  }

  EventSink sink{&out.log};
  const double read_first =
      std::max(0.5, rng.normal(profile.read_first_mean_s, profile.read_first_sd_s));
  sink.t = static_cast<std::int64_t>(std::llround(read_first * 1000.0));

  bool first_edit = true;
  for (std::size_t idx : order) {
    const SynthError& err = plan[idx];
    if (!first_edit)
      sink.advance(rng, 1100.0, 350.0, profile.speed_multiplier);
    first_edit = false;

    Rendered r = render(state);
    auto& cells = state[err.sentence - 1];
    const auto& spans = r.spans[err.sentence - 1];

    // extra mouse clicks before the edit
    const std::size_t clicks = poisson(rng, profile.mouse_rate * 0.5);
    for (std::size_t c = 0; c < clicks; ++c) {
      const std::size_t at = spans.empty() ? 0 : spans[rng.uniform_u64(spans.size())].begin;
      sink.push(EventKind::mouse_click, at, 0);
      sink.advance(rng, 320.0, 90.0, profile.speed_multiplier);
    }

    const bool use_selection =
        rng.bernoulli(std::min(0.95, profile.mouse_rate * 0.45 + 0.05));

    switch (err.kind) {
      case SynthError::Kind::substitution: {
        const std::size_t i = find_cell(cells, err.cell_id);
        if (i >= cells.size()) break;
        const CharSpan span = spans[i];
        const bool next_is_word = i + 1 < cells.size() && !cells[i + 1].attach &&
                                  cells[i + 1].text != "<Name>";
        if (next_is_word && rng.bernoulli(profile.block_op_prob)) {
          // select two words, delete, paste the corrected block
          const CharSpan span2 = spans[i + 1];
          sink.push(EventKind::mouse_select, span.begin, span2.end - span.begin);
          sink.advance(rng, 420.0, 120.0, profile.speed_multiplier);
          sink.push(EventKind::delete_text, span.begin, span2.end - span.begin);
          sink.advance(rng, 260.0, 80.0, profile.speed_multiplier);
          sink.push(EventKind::insert_text, span.begin, 0,
                    err.correction + " " + cells[i + 1].text);
          cells[i].text = err.correction;
        } else if (use_selection) {
          sink.push(EventKind::mouse_select, span.begin, span.end - span.begin);
          sink.advance(rng, 420.0, 120.0, profile.speed_multiplier);
          sink.push(EventKind::delete_text, span.begin, span.end - span.begin);
          sink.advance(rng, 220.0, 60.0, profile.speed_multiplier);
          type_text(sink, rng, profile, span.begin, err.correction);
          cells[i].text = err.correction;
        } else {
          // backspace from the end, then retype
          for (std::size_t k = span.end; k-- > span.begin;) {
            sink.push(EventKind::delete_text, k, 1);
            sink.advance(rng, profile.typing_interval_mean_ms,
                         profile.typing_interval_sd_ms, profile.speed_multiplier);
          }
          type_text(sink, rng, profile, span.begin, err.correction);
          cells[i].text = err.correction;
        }
        break;
      }
      case SynthError::Kind::spurious: {
        const std::size_t i = find_cell(cells, err.cell_id);
        if (i >= cells.size()) break;
        const CharSpan word = spans[i];
        const bool space_after =
            word.end < r.text.size() && r.text[word.end] == ' ';
        const bool space_before = word.begin > 0 && r.text[word.begin - 1] == ' ';
        if (use_selection) {
          // the selection covers the word plus one adjacent space
          CharSpan span = word;
          if (space_after)
            span.end += 1;
          else if (space_before)
            span.begin -= 1;
          sink.push(EventKind::mouse_select, span.begin, span.end - span.begin);
          sink.advance(rng, 420.0, 120.0, profile.speed_multiplier);
          sink.push(EventKind::delete_text, span.begin, span.end - span.begin);
        } else {
          // backspace the word's characters, then the leftover space
          for (std::size_t k = word.end; k-- > word.begin;) {
            sink.push(EventKind::delete_text, k, 1);
            sink.advance(rng, profile.typing_interval_mean_ms,
                         profile.typing_interval_sd_ms, profile.speed_multiplier);
          }
          if (space_after)
            sink.push(EventKind::delete_text, word.begin, 1);
          else if (space_before)
            sink.push(EventKind::delete_text, word.begin - 1, 1);
        }
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      }
      case SynthError::Kind::missing: {
        std::size_t after = cells.size();
        if (err.cell_id == 0) {
          after = 0;
        } else {
          const std::size_t i = find_cell(cells, err.cell_id);
          if (i >= cells.size()) break;
          after = i + 1;
        }
        if (after == 0) {
          const std::size_t pos = spans.empty()
                                      ? r.sentence_begin[err.sentence - 1]
                                      : spans[0].begin;
          if (!spans.empty()) {
            // make room first so typing never merges into the next word
            sink.push(EventKind::insert_text, pos, 0, " ");
            sink.advance(rng, profile.typing_interval_mean_ms,
                         profile.typing_interval_sd_ms, profile.speed_multiplier);
          }
          type_text(sink, rng, profile, pos, err.correction);
        } else {
          const std::size_t pos = spans[after - 1].end;
          sink.push(EventKind::insert_text, pos, 0, " ");
          sink.advance(rng, profile.typing_interval_mean_ms,
                       profile.typing_interval_sd_ms, profile.speed_multiplier);
          type_text(sink, rng, profile, pos + 1, err.correction);
        }
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(after),
                     Cell{next_cell_id++, err.correction, false});
        break;
      }
    }
  }

  // trailing review: sometimes one more selection or click before stopping
  sink.advance(rng, 900.0, 300.0, profile.speed_multiplier);
  if (rng.bernoulli(0.25)) {
    Rendered r = render(state);
    const std::size_t pos = r.text.empty() ? 0 : rng.uniform_u64(r.text.size());
    if (rng.bernoulli(0.5) && pos + 3 <= r.text.size())
      sink.push(EventKind::mouse_select, pos, 3);
    else
      sink.push(EventKind::mouse_click, pos, 0);
    sink.advance(rng, 700.0, 200.0, profile.speed_multiplier);
  }
  out.log.end_t = sink.t;

  out.total_seconds = static_cast<double>(out.log.end_t) / 1000.0;
  out.source_words = doc.source_word_count();
  out.log_time_per_word =
      std::log(std::max(1e-3, out.total_seconds) /
               static_cast<double>(std::max<std::size_t>(1, out.source_words)));
  return out;
}

std::vector<SynthSession> generate_corpus(std::uint64_t seed, const CorpusSpec& spec,
                                          const std::vector<EditorProfile>& profiles) {
  // jittered per-editor profiles
  std::vector<EditorProfile> editor_profiles;
  for (std::size_t e = 0; e < spec.editors; ++e) {
    EditorProfile p = profiles[e % profiles.size()];
    Rng jrng(derive_seed(seed, 0xED170000ULL + e));
    auto jitter = [&](double v, bool prob) {
      double j = v * (1.0 + spec.jitter * jrng.normal());
      if (prob) return std::clamp(j, 0.0, 0.97);
      return std::max(v * 0.25, j);
    };
    p.read_first_mean_s = jitter(p.read_first_mean_s, false);
    p.read_first_sd_s = jitter(p.read_first_sd_s, false);
    p.typing_interval_mean_ms = jitter(p.typing_interval_mean_ms, false);
    p.mouse_rate = std::max(0.0, jitter(p.mouse_rate, false));
    p.jump_back_prob = jitter(p.jump_back_prob, true);
    p.block_op_prob = jitter(p.block_op_prob, true);
    p.speed_multiplier = jitter(p.speed_multiplier, false);
    p.edit_rate = std::clamp(jitter(p.edit_rate, true), 0.05, 0.97);
    editor_profiles.push_back(std::move(p));
  }

  std::vector<SynthSession> out;
  out.reserve(spec.editors * spec.sessions_per_editor);
  std::size_t session_index = 0;
  for (std::size_t s = 0; s < spec.sessions_per_editor; ++s) {
    for (std::size_t e = 0; e < spec.editors; ++e) {
      const std::uint64_t doc_seed = derive_seed(seed, 2 * session_index);
      const std::uint64_t ses_seed = derive_seed(seed, 2 * session_index + 1);
      const SynthDocument doc = generate_document(
          doc_seed, spec.sentences, spec.words_per_sentence, spec.error_fraction);
      char doc_id[32], ed_id[16];
      std::snprintf(doc_id, sizeof(doc_id), "d%06zu", session_index);
      std::snprintf(ed_id, sizeof(ed_id), "e%03zu", e);
      out.push_back(generate_session(editor_profiles[e], doc, ses_seed, doc_id,
                                     ed_id, spec.lang));
      ++session_index;
    }
  }
  return out;
}

}  // namespace postedit::synth
