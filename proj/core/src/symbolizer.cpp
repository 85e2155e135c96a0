#include "postedit/symbolizer.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "postedit/error.hpp"

namespace postedit {

namespace {

// Finite edges; values above the last edge fall into the open top bin.
constexpr std::array<std::int64_t, 15> kWideEdges = {
    0, 1, 2, 3, 4, 5, 7, 10, 15, 20, 30, 50, 75, 100, 150};
constexpr std::array<std::int64_t, 7> kNarrowEdges = {0, 1, 2, 3, 4, 5, 7};

bool is_wide(BinKind k) { return k == BinKind::wait || k == BinKind::word_jump; }

constexpr std::array<ActionType, 5> kEditOrder = {
    ActionType::replace, ActionType::insert, ActionType::erase,
    ActionType::block_insert, ActionType::block_delete};

// Numeric action types in table order with their bin kinds.
constexpr std::array<std::pair<ActionType, BinKind>, 7> kNumericOrder = {{
    {ActionType::wait, BinKind::wait},
    {ActionType::jump_fwd, BinKind::word_jump},
    {ActionType::jump_back, BinKind::word_jump},
    {ActionType::jump_sent_fwd, BinKind::sentence_jump},
    {ActionType::jump_sent_back, BinKind::sentence_jump},
    {ActionType::mouse_clicks, BinKind::mouse},
    {ActionType::mouse_selects, BinKind::mouse},
}};

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

std::size_t bin_count(BinKind kind) {
  return is_wide(kind) ? kWideEdges.size() + 1 : kNarrowEdges.size() + 1;
}

std::size_t bin_value(BinKind kind, std::int64_t v) {
  if (is_wide(kind)) {
    for (std::size_t i = 0; i < kWideEdges.size(); ++i)
      if (v <= kWideEdges[i]) return i;
    return kWideEdges.size();
  }
  for (std::size_t i = 0; i < kNarrowEdges.size(); ++i)
    if (v <= kNarrowEdges[i]) return i;
  return kNarrowEdges.size();
}

std::string bin_label(BinKind kind, std::size_t index) {
  if (is_wide(kind)) {
    if (index < kWideEdges.size()) return std::to_string(kWideEdges[index]);
    return "200+";
  }
  if (index < kNarrowEdges.size()) return std::to_string(kNarrowEdges[index]);
  return "10+";
}

Vocabulary::Vocabulary(std::vector<std::string> words) : words_(std::move(words)) {
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
}

std::optional<std::size_t> Vocabulary::word_index(const std::string& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::size() const {
  return kEditOrder.size() * word_slots() + 3 * bin_count(BinKind::wait) +
         4 * bin_count(BinKind::mouse) + 1;
}

SymbolId Vocabulary::encode(const Action& a) const {
  std::size_t base = 0;
  for (std::size_t t = 0; t < kEditOrder.size(); ++t) {
    if (a.type == kEditOrder[t]) {
      const std::size_t w = word_index(a.word).value_or(unk_index());
      return SymbolId{static_cast<std::uint32_t>(base + t * word_slots() + w)};
    }
  }
  base = kEditOrder.size() * word_slots();
  for (const auto& [type, kind] : kNumericOrder) {
    if (a.type == type)
      return SymbolId{static_cast<std::uint32_t>(base + bin_value(kind, a.count))};
    base += bin_count(kind);
  }
  return SymbolId{static_cast<std::uint32_t>(base)};  // stop
}

DecodedSymbol Vocabulary::decode(SymbolId id) const {
  std::size_t v = id.value;
  if (v >= size())
    throw Error(Errc::id_out_of_range,
                "symbol id " + std::to_string(v) + " >= " + std::to_string(size()));
  const std::size_t edit_total = kEditOrder.size() * word_slots();
  if (v < edit_total)
    return DecodedSymbol{kEditOrder[v / word_slots()], v % word_slots()};
  v -= edit_total;
  for (const auto& [type, kind] : kNumericOrder) {
    if (v < bin_count(kind)) return DecodedSymbol{type, v};
    v -= bin_count(kind);
  }
  return DecodedSymbol{ActionType::stop, 0};
}

std::string Vocabulary::symbol_name(SymbolId id) const {
  const DecodedSymbol d = decode(id);
  if (d.type == ActionType::stop) return "S";
  std::string out = action_type_symbol(d.type);
  out += ':';
  if (is_edit_action(d.type)) {
    out += d.arg == unk_index() ? std::string("<unk>") : words_[d.arg];
  } else if (d.type == ActionType::wait) {
    out += bin_label(BinKind::wait, d.arg);
  } else if (d.type == ActionType::jump_fwd || d.type == ActionType::jump_back) {
    out += bin_label(BinKind::word_jump, d.arg);
  } else if (is_mouse_action(d.type)) {
    out += bin_label(BinKind::mouse, d.arg);
  } else {
    out += bin_label(BinKind::sentence_jump, d.arg);
  }
  return out;
}

Vocabulary build_vocab(const std::vector<ActionRecord>& corpus,
                       std::size_t max_words) {
  if (corpus.empty()) throw Error(Errc::empty_corpus, "no action sequences");
  std::map<std::string, std::size_t> freq;
  for (const auto& rec : corpus)
    for (const auto& a : rec.actions)
      if (is_edit_action(a.type)) ++freq[a.word];

  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > max_words) ranked.resize(max_words);

  std::vector<std::string> words;
  words.reserve(ranked.size());
  for (auto& [w, n] : ranked) words.push_back(std::move(w));
  return Vocabulary(std::move(words));
}

std::vector<SymbolId> symbolize(const std::vector<Action>& seq,
                                const Vocabulary& vocab) {
  std::vector<SymbolId> out;
  out.reserve(seq.size());
  for (const auto& a : seq) out.push_back(vocab.encode(a));
  return out;
}

std::vector<ActionRecord> anonymize(const std::vector<ActionRecord>& corpus,
                                    const Vocabulary& vocab) {
  std::unordered_map<std::string, std::size_t> editor_ids;
  std::vector<ActionRecord> out;
  out.reserve(corpus.size());
  for (const auto& rec : corpus) {
    auto [it, inserted] = editor_ids.emplace(rec.editor_id, editor_ids.size());
    ActionRecord anon = rec;
    anon.editor_id = std::to_string(it->second);
    for (auto& a : anon.actions) {
      if (!is_edit_action(a.type)) continue;
      if (auto idx = vocab.word_index(a.word)) {
        a.word = std::to_string(*idx);
      } else if (all_digits(a.word) &&
                 std::stoull(a.word) <= vocab.unk_index()) {
        // already an id from a previous pass
      } else {
        a.word = std::to_string(vocab.unk_index());
      }
    }
    out.push_back(std::move(anon));
  }
  return out;
}

void write_vocab(std::ostream& out, const Vocabulary& vocab) {
  out << "postedit-vocab\tv1\t" << vocab.words().size() << '\n';
  for (const auto& w : vocab.words()) {
    // reuse the action arg escaping so block strings stay one line
    out << action_to_file_token(Action::edit(ActionType::replace, w)).substr(2)
        << '\n';
  }
  out << "# symbol table (" << vocab.size() << " symbols)\n";
  for (std::size_t i = 0; i < vocab.size(); ++i)
    out << "# " << i << '\t' << vocab.symbol_name(SymbolId{static_cast<std::uint32_t>(i)})
        << '\n';
}

Vocabulary read_vocab(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw Error(Errc::malformed_record, "empty vocabulary file");
  std::istringstream hdr(line);
  std::string magic, version;
  std::size_t count = 0;
  hdr >> magic >> version >> count;
  if (magic != "postedit-vocab" || version != "v1")
    throw Error(Errc::malformed_record, "bad vocabulary header");
  std::vector<std::string> words;
  words.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line))
      throw Error(Errc::malformed_record, "vocabulary file truncated");
    words.push_back(action_from_token("R:" + line).word);
  }
  return Vocabulary(std::move(words));
}

void write_symbol_file(std::ostream& out, const std::vector<SymbolRecord>& recs) {
  for (const auto& rec : recs) {
    out << rec.editor_id << '\t' << rec.doc_id << '\t';
    for (std::size_t i = 0; i < rec.symbols.size(); ++i) {
      if (i) out << ' ';
      out << rec.symbols[i].value;
    }
    out << '\n';
  }
}

std::vector<SymbolRecord> read_symbol_file(std::istream& in) {
  std::vector<SymbolRecord> recs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw Error(Errc::malformed_record, "symbol record needs 3 columns");
    SymbolRecord rec;
    rec.editor_id = line.substr(0, t1);
    rec.doc_id = line.substr(t1 + 1, t2 - t1 - 1);
    std::istringstream ids(line.substr(t2 + 1));
    std::uint32_t v = 0;
    while (ids >> v) rec.symbols.push_back(SymbolId{v});
    if (rec.symbols.empty())
      throw Error(Errc::malformed_record, "symbol record with no symbols");
    recs.push_back(std::move(rec));
  }
  return recs;
}

}  // namespace postedit
