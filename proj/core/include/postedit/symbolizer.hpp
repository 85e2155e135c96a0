#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "postedit/action.hpp"

namespace postedit {

// Bin schemes for numeric action arguments. Wait and word-jump arguments
// share a 16-bin scheme; sentence jumps and mouse counts share an 8-bin
// scheme. A value maps to the smallest edge >= v, or to the open top bin.
enum class BinKind { wait, word_jump, sentence_jump, mouse };

std::size_t bin_count(BinKind kind);                    // 16 or 8
std::size_t bin_value(BinKind kind, std::int64_t v);    // bin index, total
std::string bin_label(BinKind kind, std::size_t index); // "0".."150","200+" / "0".."7","10+"

// The discrete symbol space fed to the models: 5 edit types x (vocabulary
// words + UNK), W/JF/JB x 16 bins, JSF/JSB/MC/MS x 8 bins, and S.
// With the default 50-word vocabulary the table has 336 symbols.
struct SymbolId {
  std::uint32_t value = 0;
  bool operator==(const SymbolId&) const = default;
  auto operator<=>(const SymbolId&) const = default;
};

struct DecodedSymbol {
  ActionType type = ActionType::stop;
  std::size_t arg = 0;  // word index (UNK = word_slots()-1) or bin index
  bool operator==(const DecodedSymbol&) const = default;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> words);

  const std::vector<std::string>& words() const { return words_; }
  std::size_t word_slots() const { return words_.size() + 1; }  // + UNK
  std::size_t unk_index() const { return words_.size(); }
  std::optional<std::size_t> word_index(const std::string& w) const;

  // Total symbol count: 5 * word_slots + 3 * 16 + 4 * 8 + 1.
  std::size_t size() const;

  SymbolId encode(const Action& a) const;
  DecodedSymbol decode(SymbolId id) const;
  std::string symbol_name(SymbolId id) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Counts the edit-action arguments across the corpus (R/I/D words, BI/BD
// joined block strings) and keeps the `max_words` most frequent, ties
// broken lexicographically. Throws Error(empty_corpus).
Vocabulary build_vocab(const std::vector<ActionRecord>& corpus,
                       std::size_t max_words = 50);

// Length- and type-preserving mapping into the symbol space.
std::vector<SymbolId> symbolize(const std::vector<Action>& seq,
                                const Vocabulary& vocab);

// Replaces editor ids by dense integers (first-appearance order) and edit
// arguments by their vocabulary indices (UNK index when out of vocabulary).
// Arguments that are already numeric ids are left alone, which makes the
// operation idempotent on anonymized corpora.
std::vector<ActionRecord> anonymize(const std::vector<ActionRecord>& corpus,
                                    const Vocabulary& vocab);

void write_vocab(std::ostream& out, const Vocabulary& vocab);
Vocabulary read_vocab(std::istream& in);

// Symbolized dataset: one session per line,
//   editor_id TAB doc_id TAB space-separated integer symbol ids.
struct SymbolRecord {
  std::string editor_id;
  std::string doc_id;
  std::vector<SymbolId> symbols;
};

void write_symbol_file(std::ostream& out, const std::vector<SymbolRecord>& recs);
std::vector<SymbolRecord> read_symbol_file(std::istream& in);

}  // namespace postedit
