#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "postedit/session_log.hpp"

namespace postedit::synth {

// Behavioural parameters of one simulated editor archetype. The six
// defaults span a planner/jumper dichotomy (long initial read, few
// backward jumps, light mouse use versus the opposite) crossed with three
// speed levels.
struct EditorProfile {
  std::string profile_id;
  double read_first_mean_s = 10.0;
  double read_first_sd_s = 2.0;
  double typing_interval_mean_ms = 220.0;
  double typing_interval_sd_ms = 60.0;
  double mouse_rate = 0.5;        // expected mouse events per edit
  double jump_back_prob = 0.1;    // next edit targets an earlier position
  double block_op_prob = 0.1;     // an edit becomes a block delete + paste
  double speed_multiplier = 1.0;  // scales every pause and keystroke gap
  double edit_rate = 0.7;         // fraction of marked errors actually fixed
};

std::vector<EditorProfile> default_profiles();

// One token of a synthetic MT sentence. `attach` marks punctuation that is
// rendered without a preceding space ("word,").
struct Cell {
  std::uint32_t id = 0;
  std::string text;
  bool attach = false;
};

struct SynthError {
  enum class Kind { substitution, spurious, missing };
  Kind kind = Kind::substitution;
  std::size_t sentence = 0;     // 1-based
  std::uint32_t cell_id = 0;    // wrong cell; for `missing`: insert after it (0 = front)
  std::string correction;      // substitution/missing: the reference word
};

// A source/MT pair with the MT's planted errors. Documents mimic short
// customer-service emails (roughly 117 tokens at the defaults).
struct SynthDocument {
  std::vector<std::string> source_segments;
  std::vector<std::vector<Cell>> mt_sentences;
  std::vector<SynthError> errors;

  std::vector<std::string> mt_segments() const;  // rendered sentences
  std::size_t source_word_count() const;
};

SynthDocument generate_document(std::uint64_t seed, std::size_t n_sentences,
                                std::size_t words_per_sentence,
                                double error_fraction);

struct SynthSession {
  SessionLog log;
  std::string profile_id;
  double total_seconds = 0.0;
  std::size_t source_words = 0;
  double log_time_per_word = 0.0;  // from simulated timestamps
};

// Simulates one post-editing session over the document: an initial reading
// pause, per-edit mouse activity and keystrokes at profile-scaled
// intervals, edit order monotone except for jump-backs. The events replay
// to a document where every planned error is corrected.
SynthSession generate_session(const EditorProfile& profile,
                              const SynthDocument& doc, std::uint64_t seed,
                              std::string doc_id, std::string editor_id,
                              std::string lang_pair);

struct CorpusSpec {
  std::size_t editors = 6;
  std::size_t sessions_per_editor = 300;
  std::size_t sentences = 12;
  std::size_t words_per_sentence = 10;
  double error_fraction = 0.18;
  double jitter = 0.15;  // per-editor parameter jitter around the profile
  std::string lang = "xx-yy";
};

// Editors are assigned profiles round-robin; each editor gets its own
// jittered parameter draw, each session its own document and RNG stream
// derived from (seed, session index). Sessions are interleaved round-robin
// so every editor's stream appears in temporal order.
std::vector<SynthSession> generate_corpus(std::uint64_t seed, const CorpusSpec& spec,
                                          const std::vector<EditorProfile>& profiles);

}  // namespace postedit::synth
