// postedit: compile post-editing keystroke logs into action sequences,
// train editor-identification models and editor embeddings, and predict
// post-editing time. Subcommands compose through files; every run writes a
// manifest with its configuration, seed, and input digests.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "postedit/action_extractor.hpp"
#include "postedit/config.hpp"
#include "postedit/editor_space.hpp"
#include "postedit/error.hpp"
#include "postedit/manifest.hpp"
#include "postedit/models/ablate.hpp"
#include "postedit/models/baselines.hpp"
#include "postedit/models/identifier.hpp"
#include "postedit/models/text_vocab.hpp"
#include "postedit/models/time_predictor.hpp"
#include "postedit/models/trainer.hpp"
#include "postedit/nn/checkpoint.hpp"
#include "postedit/session_log.hpp"
#include "postedit/symbolizer.hpp"
#include "postedit/synth.hpp"
#include "postedit/tokenize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace postedit;
using namespace postedit::models;

namespace {

// ---------------------------------------------------------------- helpers

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  if (fs::path(path).has_parent_path())
    fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_error, "cannot write " + path);
  return out;
}

std::string escape_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      ++i;
      if (s[i] == 'n') out += '\n';
      else if (s[i] == 't') out += '\t';
      else out += s[i];
    } else {
      out += s[i];
    }
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

// Documents table: one session per line with the texts and timing needed
// by the baselines and the time predictor.
struct TextRecord {
  std::string editor_id, doc_id, lang_pair;
  std::string source, mt, pe;  // newline-separated segments
  double total_seconds = 0.0;
  std::size_t source_words = 0;
};

void write_text_file(std::ostream& out, const std::vector<TextRecord>& recs) {
  out << "editor_id\tdoc_id\tlang_pair\tsource\tmt\tpe\ttotal_seconds\t"
         "source_words\n";
  char num[64];
  for (const auto& r : recs) {
    std::snprintf(num, sizeof(num), "%.3f\t%zu", r.total_seconds, r.source_words);
    out << r.editor_id << '\t' << r.doc_id << '\t' << r.lang_pair << '\t'
        << escape_text(r.source) << '\t' << escape_text(r.mt) << '\t'
        << escape_text(r.pe) << '\t' << num << '\n';
  }
}

std::vector<TextRecord> read_text_file(std::istream& in) {
  std::vector<TextRecord> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("editor_id\t", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    const auto cols = split_tabs(line);
    if (cols.size() != 8)
      throw Error(Errc::malformed_record, "documents table needs 8 columns");
    TextRecord r;
    r.editor_id = cols[0];
    r.doc_id = cols[1];
    r.lang_pair = cols[2];
    r.source = unescape_text(cols[3]);
    r.mt = unescape_text(cols[4]);
    r.pe = unescape_text(cols[5]);
    r.total_seconds = std::stod(cols[6]);
    r.source_words = std::stoull(cols[7]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> label_set(const std::vector<std::string>& editor_ids) {
  std::vector<std::string> labels(editor_ids);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

std::size_t label_index(const std::vector<std::string>& labels,
                        const std::string& editor) {
  const auto it = std::lower_bound(labels.begin(), labels.end(), editor);
  if (it == labels.end() || *it != editor)
    throw Error(Errc::id_out_of_range, "editor '" + editor + "' not in label set");
  return static_cast<std::size_t>(it - labels.begin());
}

std::vector<std::uint32_t> symbol_values(const std::vector<SymbolId>& ids) {
  std::vector<std::uint32_t> out;
  out.reserve(ids.size());
  for (const auto id : ids) out.push_back(id.value);
  return out;
}

// model sidecar describing how to rebuild the network around a checkpoint
void write_meta(const std::string& path, const json& meta) {
  open_out(path) << meta.dump(2) << '\n';
}

json read_meta(const std::string& path) {
  json meta = json::parse(open_in(path), nullptr, false);
  if (meta.is_discarded())
    throw Error(Errc::malformed_record, "bad model meta file " + path);
  return meta;
}

EncoderConfig encoder_from_config(const RunConfig& cfg, const std::string& prefix) {
  EncoderConfig e;
  e.embed_dim = static_cast<std::size_t>(cfg.get_int(prefix + ".embed_dim"));
  e.hidden_dim = static_cast<std::size_t>(cfg.get_int(prefix + ".hidden_dim"));
  e.num_layers = static_cast<std::size_t>(cfg.get_int(prefix + ".layers"));
  e.dropout_rate = cfg.get_double(prefix + ".dropout");
  return e;
}

TrainOptions train_options(const RunConfig& cfg, std::uint64_t seed) {
  TrainOptions opt;
  opt.lr = cfg.get_double("train.lr");
  opt.batch = static_cast<std::size_t>(cfg.get_int("train.batch"));
  opt.max_epochs = static_cast<std::size_t>(cfg.get_int("train.max_epochs"));
  opt.patience = static_cast<std::size_t>(cfg.get_int("train.patience"));
  opt.seed = seed;
  return opt;
}

std::vector<SeqSample> to_seq_samples(const std::vector<SymbolRecord>& recs,
                                      const std::vector<std::string>& labels) {
  std::vector<SeqSample> out;
  out.reserve(recs.size());
  for (const auto& r : recs)
    out.push_back({symbol_values(r.symbols), label_index(labels, r.editor_id)});
  return out;
}

double chance_level(std::size_t k) {
  return 1.0 / static_cast<double>(std::max<std::size_t>(1, k));
}

// parallel map over an index range with deterministic output order
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 1;

  RunConfig load() const {
    RunConfig cfg;
    if (!config_path.empty()) cfg.load_file(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw Error(Errc::usage_error, "--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "key=value configuration file");
  cmd->add_option("--set", args.overrides, "override one config key (key=value)")
      ->take_all();
  cmd->add_option("--seed", args.seed, "random seed");
}

// ------------------------------------------------------------ subcommands

int cmd_synth(const CommonArgs& common, const std::string& out_dir) {
  const RunConfig cfg = common.load();
  synth::CorpusSpec spec;
  spec.editors = static_cast<std::size_t>(cfg.get_int("synth.editors"));
  spec.sessions_per_editor =
      static_cast<std::size_t>(cfg.get_int("synth.sessions_per_editor"));
  spec.sentences = static_cast<std::size_t>(cfg.get_int("synth.sentences"));
  spec.words_per_sentence =
      static_cast<std::size_t>(cfg.get_int("synth.words_per_sentence"));
  spec.error_fraction = cfg.get_double("synth.error_fraction");
  spec.jitter = cfg.get_double("synth.jitter");
  spec.lang = cfg.get_str("synth.lang");

  const auto corpus = synth::generate_corpus(common.seed, spec,
                                             synth::default_profiles());
  fs::create_directories(fs::path(out_dir) / "sessions");
  auto truth = open_out((fs::path(out_dir) / "ground_truth.tsv").string());
  truth << "doc_id\teditor_id\tprofile_id\ttotal_seconds\tsource_words\t"
           "log_time_per_word\n";
  char num[96];
  for (const auto& s : corpus) {
    auto f = open_out((fs::path(out_dir) / "sessions" / (s.log.doc_id + ".jsonl"))
                          .string());
    f << serialize_session_log(s.log);
    std::snprintf(num, sizeof(num), "%.3f\t%zu\t%.6f", s.total_seconds,
                  s.source_words, s.log_time_per_word);
    truth << s.log.doc_id << '\t' << s.log.editor_id << '\t' << s.profile_id
          << '\t' << num << '\n';
  }
  write_manifest((fs::path(out_dir) / "manifest.json").string(), "synth",
                 common.seed, cfg.values(), {},
                 {(fs::path(out_dir) / "ground_truth.tsv").string()});
  std::cout << "synth\tsessions\t" << corpus.size() << "\tout\t" << out_dir << '\n';
  return 0;
}

int cmd_extract(const CommonArgs& common, const std::string& in_path,
                const std::string& out_path, const std::string& texts_path) {
  const RunConfig cfg = common.load();
  std::vector<std::string> files;
  if (fs::is_directory(in_path)) {
    for (const auto& e : fs::recursive_directory_iterator(in_path))
      if (e.is_regular_file() && e.path().extension() == ".jsonl")
        files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(in_path);
  }
  if (files.empty()) throw Error(Errc::empty_corpus, "no session logs in " + in_path);

  const auto threads = static_cast<std::size_t>(cfg.get_int("threads"));
  std::vector<ActionRecord> records(files.size());
  std::vector<TextRecord> texts(files.size());
  std::vector<std::exception_ptr> errors(files.size());
  parallel_for(files.size(), threads, [&](std::size_t i) {
    try {
      std::ifstream in(files[i]);
      if (!in) throw Error(Errc::io_error, "cannot open " + files[i]);
      const SessionLog log = parse_session_log(in);
      ActionRecord rec;
      rec.editor_id = log.editor_id;
      rec.doc_id = log.doc_id;
      rec.lang_pair = log.lang_pair;
      rec.actions = extract_actions(log);
      records[i] = std::move(rec);
      TextRecord t;
      t.editor_id = log.editor_id;
      t.doc_id = log.doc_id;
      t.lang_pair = log.lang_pair;
      t.source = [&] {
        std::string s;
        for (std::size_t k = 0; k < log.source_segments.size(); ++k) {
          if (k) s += '\n';
          s += log.source_segments[k];
        }
        return s;
      }();
      t.mt = joined_mt(log);
      t.pe = final_document(log);
      t.total_seconds = static_cast<double>(log.end_t) / 1000.0;
      t.source_words = tokenize(log.source_segments).word_count();
      texts[i] = std::move(t);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  auto out = open_out(out_path);
  write_action_file(out, records);
  if (!texts_path.empty()) {
    auto tf = open_out(texts_path);
    write_text_file(tf, texts);
  }
  write_manifest(out_path + ".manifest.json", "extract", common.seed, cfg.values(),
                 {}, {out_path});
  std::cout << "extract\tsessions\t" << records.size() << "\tout\t" << out_path
            << '\n';
  return 0;
}

int cmd_vocab(const CommonArgs& common, const std::string& in_path,
              const std::string& out_path) {
  const RunConfig cfg = common.load();
  auto in = open_in(in_path);
  const auto corpus = read_action_file(in);
  const Vocabulary vocab = build_vocab(
      corpus, static_cast<std::size_t>(cfg.get_int("vocab.max_words")));
  auto out = open_out(out_path);
  write_vocab(out, vocab);
  write_manifest(out_path + ".manifest.json", "vocab", common.seed, cfg.values(),
                 {in_path}, {out_path});
  std::cout << "vocab\twords\t" << vocab.words().size() << "\tsymbols\t"
            << vocab.size() << '\n';
  return 0;
}

int cmd_symbolize(const CommonArgs& common, const std::string& in_path,
                  const std::string& vocab_path, const std::string& out_path,
                  const std::string& anonymized_path) {
  const RunConfig cfg = common.load();
  auto in = open_in(in_path);
  const auto corpus = read_action_file(in);
  auto vf = open_in(vocab_path);
  const Vocabulary vocab = read_vocab(vf);

  std::vector<SymbolRecord> out_recs;
  out_recs.reserve(corpus.size());
  for (const auto& rec : corpus)
    out_recs.push_back({rec.editor_id, rec.doc_id, symbolize(rec.actions, vocab)});
  auto out = open_out(out_path);
  write_symbol_file(out, out_recs);

  if (!anonymized_path.empty()) {
    auto af = open_out(anonymized_path);
    write_action_file(af, anonymize(corpus, vocab));
  }
  write_manifest(out_path + ".manifest.json", "symbolize", common.seed,
                 cfg.values(), {in_path, vocab_path}, {out_path});
  std::cout << "symbolize\tsessions\t" << out_recs.size() << "\tout\t" << out_path
            << '\n';
  return 0;
}

int cmd_balance(const CommonArgs& common, const std::string& in_path,
                const std::string& out_prefix) {
  const RunConfig cfg = common.load();
  auto in = open_in(in_path);
  const auto recs = read_symbol_file(in);
  std::vector<std::string> editors;
  editors.reserve(recs.size());
  for (const auto& r : recs) editors.push_back(r.editor_id);

  BalanceSizes sizes;
  sizes.train = static_cast<std::size_t>(cfg.get_int("balance.train"));
  sizes.dev = static_cast<std::size_t>(cfg.get_int("balance.dev"));
  sizes.test = static_cast<std::size_t>(cfg.get_int("balance.test"));
  const auto k = static_cast<std::size_t>(cfg.get_int("balance.editors"));
  const auto splits = balance_dataset(editors, k, sizes, common.seed);

  auto dump = [&](const std::vector<std::size_t>& idx, const std::string& path) {
    std::vector<SymbolRecord> subset;
    subset.reserve(idx.size());
    for (const auto i : idx) subset.push_back(recs[i]);
    auto out = open_out(path);
    write_symbol_file(out, subset);
  };
  dump(splits.train, out_prefix + ".train.tsv");
  dump(splits.dev, out_prefix + ".dev.tsv");
  dump(splits.test, out_prefix + ".test.tsv");
  write_manifest(out_prefix + ".manifest.json", "balance", common.seed,
                 cfg.values(), {in_path},
                 {out_prefix + ".train.tsv", out_prefix + ".dev.tsv",
                  out_prefix + ".test.tsv"});
  std::cout << "balance\ttrain\t" << splits.train.size() << "\tdev\t"
            << splits.dev.size() << "\ttest\t" << splits.test.size() << '\n';
  return 0;
}

int cmd_train_id(const CommonArgs& common, const std::string& train_path,
                 const std::string& dev_path, const std::string& vocab_path,
                 const std::string& out_prefix) {
  const RunConfig cfg = common.load();
  auto tv = open_in(vocab_path);
  const Vocabulary vocab = read_vocab(tv);
  auto tin = open_in(train_path);
  const auto train_recs = read_symbol_file(tin);
  auto din = open_in(dev_path);
  const auto dev_recs = read_symbol_file(din);

  const auto labels = label_set([&] {
    std::vector<std::string> ids;
    for (const auto& r : train_recs) ids.push_back(r.editor_id);
    return ids;
  }());
  const auto train = to_seq_samples(train_recs, labels);
  const auto dev = to_seq_samples(dev_recs, labels);

  IdentifierModel model(encoder_from_config(cfg, "id"),
                        static_cast<std::size_t>(cfg.get_int("id.repr_dim")),
                        vocab.size(), labels, derive_seed(common.seed, 0xA11C));
  const auto report = fit<IdentifierModel, SeqSample>(
      model, train, dev, train_options(cfg, common.seed),
      [](const IdentifierModel& m, const std::vector<SeqSample>& d) {
        return accuracy(m, d);
      });

  nn::save_checkpoint(out_prefix + ".ckpt", model.params());
  json meta;
  meta["kind"] = "identifier";
  meta["labels"] = labels;
  meta["symbol_count"] = vocab.size();
  meta["embed_dim"] = model.config().embed_dim;
  meta["hidden_dim"] = model.config().hidden_dim;
  meta["layers"] = model.config().num_layers;
  meta["dropout"] = model.config().dropout_rate;
  meta["repr_dim"] = model.repr_dim();
  write_meta(out_prefix + ".meta.json", meta);
  auto rep = open_out(out_prefix + ".report.tsv");
  write_train_report(rep, report);
  write_manifest(out_prefix + ".manifest.json", "train-id", common.seed,
                 cfg.values(), {train_path, dev_path, vocab_path},
                 {out_prefix + ".ckpt", out_prefix + ".report.tsv"});
  std::cout << "train-id\tbest_epoch\t" << report.best_epoch << "\tdev_accuracy\t"
            << report.best_dev << '\n';
  return 0;
}

IdentifierModel load_identifier(const std::string& prefix) {
  const json meta = read_meta(prefix + ".meta.json");
  if (meta.at("kind") != "identifier")
    throw Error(Errc::checkpoint_mismatch, "not an identifier checkpoint");
  EncoderConfig enc;
  enc.embed_dim = meta.at("embed_dim");
  enc.hidden_dim = meta.at("hidden_dim");
  enc.num_layers = meta.at("layers");
  enc.dropout_rate = meta.at("dropout");
  IdentifierModel model(enc, meta.at("repr_dim"), meta.at("symbol_count"),
                        meta.at("labels").get<std::vector<std::string>>(), 1);
  nn::load_checkpoint(prefix + ".ckpt", model.params());
  return model;
}

int cmd_eval_id(const CommonArgs& common, const std::string& model_prefix,
                const std::string& data_path, const std::string& out_path) {
  const RunConfig cfg = common.load();
  const IdentifierModel model = load_identifier(model_prefix);
  auto in = open_in(data_path);
  const auto recs = read_symbol_file(in);
  const auto samples = to_seq_samples(recs, model.labels());

  const auto threads = static_cast<std::size_t>(cfg.get_int("threads"));
  std::vector<int> hits(samples.size(), 0);
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    const auto probs = model.predict(samples[i].ids);
    std::size_t arg = 0;
    for (std::size_t k = 1; k < probs.size(); ++k)
      if (probs[k] > probs[arg]) arg = k;
    hits[i] = arg == samples[i].label ? 1 : 0;
  });
  double acc = 0.0;
  for (const int h : hits) acc += h;
  acc /= static_cast<double>(std::max<std::size_t>(1, samples.size()));

  char line[160];
  std::snprintf(line, sizeof(line), "accuracy\t%.6f\nchance\t%.6f\nsessions\t%zu\n",
                acc, chance_level(model.labels().size()), samples.size());
  if (!out_path.empty()) open_out(out_path) << line;
  std::cout << "eval-id\taccuracy\t" << acc << "\tchance\t"
            << chance_level(model.labels().size()) << '\n';
  return 0;
}

int cmd_ablate_id(const CommonArgs& common, const std::string& train_path,
                  const std::string& dev_path, const std::string& vocab_path,
                  const std::string& out_path) {
  const RunConfig cfg = common.load();
  auto vf = open_in(vocab_path);
  const Vocabulary vocab = read_vocab(vf);
  auto tin = open_in(train_path);
  const auto train_recs = read_symbol_file(tin);
  auto din = open_in(dev_path);
  const auto dev_recs = read_symbol_file(din);
  const auto labels = label_set([&] {
    std::vector<std::string> ids;
    for (const auto& r : train_recs) ids.push_back(r.editor_id);
    return ids;
  }());

  struct Variant {
    std::string name;
    std::set<AblationCategory> cats;
    bool keep_only = false;
  };
  std::vector<Variant> variants = {
      {"full", {}, false},
      {"drop_editing", {AblationCategory::editing}, false},
      {"drop_mouse", {AblationCategory::mouse}, false},
      {"drop_wait", {AblationCategory::wait}, false},
      {"drop_first_wait", {AblationCategory::first_wait}, false},
      {"only_editing", {AblationCategory::editing}, true},
      {"only_mouse", {AblationCategory::mouse}, true},
      {"only_wait", {AblationCategory::wait}, true},
      {"only_first_wait", {AblationCategory::first_wait}, true},
  };

  auto out = open_out(out_path);
  out << "variant\tdev_accuracy\tbest_epoch\n";
  for (const auto& v : variants) {
    auto transform = [&](const std::vector<SymbolRecord>& recs) {
      std::vector<SeqSample> samples;
      samples.reserve(recs.size());
      for (const auto& r : recs) {
        const auto ablated = ablate_sequence(r.symbols, vocab, v.cats, v.keep_only);
        samples.push_back(
            {symbol_values(ablated), label_index(labels, r.editor_id)});
      }
      return samples;
    };
    const auto train = transform(train_recs);
    const auto dev = transform(dev_recs);
    IdentifierModel model(encoder_from_config(cfg, "id"),
                          static_cast<std::size_t>(cfg.get_int("id.repr_dim")),
                          vocab.size(), labels, derive_seed(common.seed, 0xAB1A));
    const auto report = fit<IdentifierModel, SeqSample>(
        model, train, dev, train_options(cfg, common.seed),
        [](const IdentifierModel& m, const std::vector<SeqSample>& d) {
          return accuracy(m, d);
        });
    char line[128];
    std::snprintf(line, sizeof(line), "%s\t%.6f\t%zu\n", v.name.c_str(),
                  report.best_dev, report.best_epoch);
    out << line;
    std::cout << "ablate-id\t" << v.name << "\t" << report.best_dev << '\n';
  }
  write_manifest(out_path + ".manifest.json", "ablate-id", common.seed,
                 cfg.values(), {train_path, dev_path, vocab_path}, {out_path});
  return 0;
}

// shared text-baseline dataset assembly
struct TextDataset {
  std::vector<BaselineSample> samples;
  std::vector<std::string> labels;
  TextVocab vocab;
};

TextDataset build_text_dataset(const std::vector<TextRecord>& recs,
                               const TextVocab* vocab, std::size_t vocab_size,
                               std::size_t max_len) {
  TextDataset ds;
  ds.labels = label_set([&] {
    std::vector<std::string> ids;
    for (const auto& r : recs) ids.push_back(r.editor_id);
    return ids;
  }());
  if (vocab) {
    ds.vocab = *vocab;
  } else {
    std::vector<std::vector<std::string>> docs;
    for (const auto& r : recs) {
      docs.push_back(tokenize_text(r.mt).flat());
      docs.push_back(tokenize_text(r.pe).flat());
      docs.push_back(tokenize_text(r.source).flat());
    }
    ds.vocab = TextVocab::build(docs, vocab_size);
  }
  auto clip = [&](std::vector<std::uint32_t> ids) {
    if (max_len > 0 && ids.size() > max_len) ids.resize(max_len);
    if (ids.empty()) ids.push_back(ds.vocab.unk_id());
    return ids;
  };
  for (const auto& r : recs) {
    BaselineSample s;
    const TokenizedDoc source = tokenize_text(r.source);
    const TokenizedDoc mt = tokenize_text(r.mt);
    const TokenizedDoc pe = tokenize_text(r.pe);
    s.mt_ids = clip(ds.vocab.encode(mt.flat()));
    s.pe_ids = clip(ds.vocab.encode(pe.flat()));
    s.delta = delta_bins(featurize_delta(source, mt, pe));
    s.label = label_index(ds.labels, r.editor_id);
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

int cmd_train_baseline(const CommonArgs& common, const std::string& kind_name,
                       const std::string& train_path, const std::string& dev_path,
                       const std::string& out_prefix) {
  const RunConfig cfg = common.load();
  const BaselineKind kind = baseline_kind_from_name(kind_name);
  auto tin = open_in(train_path);
  const auto train_recs = read_text_file(tin);
  auto din = open_in(dev_path);
  const auto dev_recs = read_text_file(din);

  const auto vocab_size = static_cast<std::size_t>(cfg.get_int("text.vocab_size"));
  const auto max_len = static_cast<std::size_t>(cfg.get_int("text.max_len"));
  TextDataset train_ds = build_text_dataset(train_recs, nullptr, vocab_size, max_len);
  TextDataset dev_ds =
      build_text_dataset(dev_recs, &train_ds.vocab, vocab_size, max_len);
  // dev labels must embed into the train label set
  dev_ds.samples.clear();
  for (const auto& r : dev_recs) {
    BaselineSample s;
    const TokenizedDoc source = tokenize_text(r.source);
    const TokenizedDoc mt = tokenize_text(r.mt);
    const TokenizedDoc pe = tokenize_text(r.pe);
    auto clip = [&](std::vector<std::uint32_t> ids) {
      if (max_len > 0 && ids.size() > max_len) ids.resize(max_len);
      if (ids.empty()) ids.push_back(train_ds.vocab.unk_id());
      return ids;
    };
    s.mt_ids = clip(train_ds.vocab.encode(mt.flat()));
    s.pe_ids = clip(train_ds.vocab.encode(pe.flat()));
    s.delta = delta_bins(featurize_delta(source, mt, pe));
    s.label = label_index(train_ds.labels, r.editor_id);
    dev_ds.samples.push_back(std::move(s));
  }

  BaselineConfig bc;
  bc.encoder = encoder_from_config(cfg, "text");
  bc.ff_dim = static_cast<std::size_t>(cfg.get_int("text.ff_dim"));
  bc.delta_embed_dim = static_cast<std::size_t>(cfg.get_int("delta.embed_dim"));
  bc.delta_dropout = cfg.get_double("delta.dropout");
  BaselineModel model(kind, bc, train_ds.vocab.size(), train_ds.labels,
                      derive_seed(common.seed, 0xBA5E));
  const auto report = fit<BaselineModel, BaselineSample>(
      model, train_ds.samples, dev_ds.samples, train_options(cfg, common.seed),
      [](const BaselineModel& m, const std::vector<BaselineSample>& d) {
        return accuracy(m, d);
      });

  nn::save_checkpoint(out_prefix + ".ckpt", model.params());
  json meta;
  meta["kind"] = "baseline";
  meta["baseline"] = kind_name;
  meta["labels"] = train_ds.labels;
  write_meta(out_prefix + ".meta.json", meta);
  {
    auto vf = open_out(out_prefix + ".textvocab");
    train_ds.vocab.write(vf);
  }
  auto rep = open_out(out_prefix + ".report.tsv");
  write_train_report(rep, report);
  write_manifest(out_prefix + ".manifest.json", "train-baseline", common.seed,
                 cfg.values(), {train_path, dev_path},
                 {out_prefix + ".ckpt", out_prefix + ".report.tsv"});
  std::cout << "train-baseline\t" << kind_name << "\tdev_accuracy\t"
            << report.best_dev << '\n';
  return 0;
}

int cmd_embed(const CommonArgs& common, const std::string& model_prefix,
              const std::string& data_path, const std::string& out_path,
              const std::string& editor_out, std::size_t min_sessions_flag) {
  const RunConfig cfg = common.load();
  const IdentifierModel model = load_identifier(model_prefix);
  auto in = open_in(data_path);
  const auto recs = read_symbol_file(in);

  const auto threads = static_cast<std::size_t>(cfg.get_int("threads"));
  std::vector<std::vector<double>> vectors(recs.size());
  parallel_for(recs.size(), threads, [&](std::size_t i) {
    vectors[i] = model.session_embedding(symbol_values(recs[i].symbols));
  });

  auto out = open_out(out_path);
  char num[32];
  for (std::size_t i = 0; i < recs.size(); ++i) {
    out << recs[i].editor_id << '\t' << recs[i].doc_id;
    for (const double v : vectors[i]) {
      std::snprintf(num, sizeof(num), "\t%.6f", v);
      out << num;
    }
    out << '\n';
  }

  if (!editor_out.empty()) {
    const std::size_t min_sessions =
        min_sessions_flag > 0
            ? min_sessions_flag
            : static_cast<std::size_t>(cfg.get_int("editor.min_sessions"));
    std::map<std::string, std::vector<std::vector<double>>> by_editor;
    for (std::size_t i = 0; i < recs.size(); ++i)
      by_editor[recs[i].editor_id].push_back(vectors[i]);
    auto eout = open_out(editor_out);
    for (const auto& [editor, vs] : by_editor) {
      if (vs.size() < min_sessions) continue;  // discard sparse editors
      const auto em = editor_embedding(editor, vs);
      eout << editor << '\t' << em.n_sessions;
      for (const double v : em.vec) {
        std::snprintf(num, sizeof(num), "\t%.6f", v);
        eout << num;
      }
      eout << '\n';
    }
  }
  write_manifest(out_path + ".manifest.json", "embed", common.seed, cfg.values(),
                 {data_path}, {out_path});
  std::cout << "embed\tsessions\t" << recs.size() << "\tout\t" << out_path << '\n';
  return 0;
}

int cmd_stats(const CommonArgs& common, const std::string& actions_path,
              const std::string& texts_path, const std::string& out_prefix) {
  const RunConfig cfg = common.load();
  auto ain = open_in(actions_path);
  const auto actions = read_action_file(ain);
  auto tin = open_in(texts_path);
  const auto texts = read_text_file(tin);

  std::map<std::string, std::size_t> mt_tokens;
  for (const auto& t : texts)
    mt_tokens[t.doc_id] = tokenize_text(t.mt).word_count();

  std::map<std::string, std::vector<SessionBehavior>> by_editor;
  for (const auto& rec : actions) {
    SessionBehavior s;
    s.actions = rec.actions;
    const auto it = mt_tokens.find(rec.doc_id);
    if (it == mt_tokens.end())
      throw Error(Errc::malformed_record,
                  "doc " + rec.doc_id + " missing from the documents table");
    s.mt_tokens = it->second;
    by_editor[rec.editor_id].push_back(std::move(s));
  }

  const auto min_sessions =
      static_cast<std::size_t>(cfg.get_int("editor.min_sessions"));
  std::vector<std::string> editors;
  std::vector<double> fw, jb, me;
  auto table = open_out(out_prefix + ".features.tsv");
  table << "editor_id\tn_sessions\tavg_first_wait\tjump_backs_per_mt_token\t"
           "mouse_events_per_mt_token\n";
  char line[256];
  for (const auto& [editor, sessions] : by_editor) {
    if (sessions.size() < min_sessions) continue;
    const BehaviorFeatures f = behavior_features(sessions);
    editors.push_back(editor);
    fw.push_back(f.avg_first_wait);
    jb.push_back(f.jump_backs_per_mt_token);
    me.push_back(f.mouse_events_per_mt_token);
    std::snprintf(line, sizeof(line), "%s\t%zu\t%.6f\t%.6f\t%.6f\n", editor.c_str(),
                  sessions.size(), f.avg_first_wait, f.jump_backs_per_mt_token,
                  f.mouse_events_per_mt_token);
    table << line;
  }

  auto corr = open_out(out_prefix + ".correlations.tsv");
  corr << "pair\tpearson\n";
  if (editors.size() >= 2) {
    const double c1 = pearson(me, jb);
    const double c2 = pearson(fw, jb);
    if (std::isnan(c1) || std::isnan(c2))
      std::cerr << R"({"warning":"DegenerateVariance","message":"correlation undefined"})"
                << '\n';
    std::snprintf(line, sizeof(line),
                  "mouse_events_vs_jump_backs\t%.6f\nfirst_wait_vs_jump_backs\t%.6f\n",
                  c1, c2);
    corr << line;
    std::cout << "stats\teditors\t" << editors.size() << "\tmouse_jb\t" << c1
              << "\tfw_jb\t" << c2 << '\n';
  } else {
    std::cout << "stats\teditors\t" << editors.size() << '\n';
  }
  write_manifest(out_prefix + ".manifest.json", "stats", common.seed, cfg.values(),
                 {actions_path, texts_path},
                 {out_prefix + ".features.tsv", out_prefix + ".correlations.tsv"});
  return 0;
}

int cmd_project(const CommonArgs& common, const std::string& vectors_path,
                const std::string& out_path, const std::string& svg_path) {
  const RunConfig cfg = common.load();
  auto in = open_in(vectors_path);
  std::vector<std::string> names;
  std::vector<std::vector<double>> vectors;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split_tabs(line);
    if (cols.size() < 3)
      throw Error(Errc::malformed_record, "vector rows need id, count, values");
    names.push_back(cols[0]);
    std::vector<double> v;
    for (std::size_t i = 2; i < cols.size(); ++i) v.push_back(std::stod(cols[i]));
    vectors.push_back(std::move(v));
  }
  const Projection proj = project_2d(vectors);

  auto out = open_out(out_path);
  out << "id\tx\ty\n";
  char buf[160];
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s\t%.6f\t%.6f\n", names[i].c_str(),
                  proj.coords[i][0], proj.coords[i][1]);
    out << buf;
  }
  if (!svg_path.empty()) {
    std::vector<ScatterPoint> points(names.size());
    for (std::size_t i = 0; i < names.size(); ++i)
      points[i] = {proj.coords[i][0], proj.coords[i][1], i, 0.0, names[i]};
    auto svg = open_out(svg_path);
    write_scatter_svg(svg, points, false);
  }
  write_manifest(out_path + ".manifest.json", "project", common.seed, cfg.values(),
                 {vectors_path}, {out_path});
  std::cout << "project\tpoints\t" << names.size() << "\tvariance\t"
            << proj.component_variance[0] << "\t" << proj.component_variance[1]
            << '\n';
  return 0;
}

// session vectors file: editor_id TAB doc_id TAB v0 v1 ... (tab separated)
std::map<std::string, std::vector<double>> read_session_vectors(
    const std::string& path) {
  auto in = open_in(path);
  std::map<std::string, std::vector<double>> by_doc;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split_tabs(line);
    if (cols.size() < 3)
      throw Error(Errc::malformed_record, "session vector rows need 3+ columns");
    std::vector<double> v;
    for (std::size_t i = 2; i < cols.size(); ++i) v.push_back(std::stod(cols[i]));
    by_doc[cols[1]] = std::move(v);
  }
  return by_doc;
}

struct TimeDataset {
  std::vector<TimeSample> train, dev, test;
  TextVocab vocab;
  std::size_t editor_dim = 0;
};

TimeDataset build_time_dataset(const std::vector<TextRecord>& recs,
                               const std::map<std::string, std::vector<double>>* vecs,
                               std::size_t store_capacity, std::size_t vocab_size,
                               std::size_t max_len, double dev_frac,
                               double test_frac, std::uint64_t seed) {
  TimeDataset ds;
  std::vector<std::vector<std::string>> docs;
  for (const auto& r : recs) {
    docs.push_back(tokenize_text(r.source).flat());
    docs.push_back(tokenize_text(r.mt).flat());
  }
  ds.vocab = TextVocab::build(docs, vocab_size);

  // dynamic editor vectors: for each session in corpus order, query the
  // store before inserting the session's own embedding
  std::size_t dim = 0;
  if (vecs && !vecs->empty()) dim = vecs->begin()->second.size();
  ds.editor_dim = dim == 0 ? 1 : dim;
  DynamicStore store(store_capacity);

  std::vector<TimeSample> all;
  all.reserve(recs.size());
  for (const auto& r : recs) {
    TimeSample s;
    auto clip = [&](std::vector<std::uint32_t> ids) {
      if (max_len > 0 && ids.size() > max_len) ids.resize(max_len);
      if (ids.empty()) ids.push_back(ds.vocab.unk_id());
      return ids;
    };
    s.source_ids = clip(ds.vocab.encode(tokenize_text(r.source).flat()));
    s.mt_ids = clip(ds.vocab.encode(tokenize_text(r.mt).flat()));
    if (vecs) {
      s.editor_vec = store.query(r.editor_id, ds.editor_dim);
      const auto it = vecs->find(r.doc_id);
      if (it == vecs->end())
        throw Error(Errc::malformed_record,
                    "doc " + r.doc_id + " missing from session vectors");
      store.update(r.editor_id, it->second);
    } else {
      s.editor_vec.assign(ds.editor_dim, 0.0);  // no-editor baseline
    }
    s.target = std::log(std::max(1e-3, r.total_seconds) /
                        static_cast<double>(std::max<std::size_t>(1, r.source_words)));
    all.push_back(std::move(s));
  }

  // seeded split by session
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, 0x5B117));
  rng.shuffle(order);
  const std::size_t n_test = static_cast<std::size_t>(test_frac * all.size());
  const std::size_t n_dev = static_cast<std::size_t>(dev_frac * all.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i < n_test)
      ds.test.push_back(all[order[i]]);
    else if (i < n_test + n_dev)
      ds.dev.push_back(all[order[i]]);
    else
      ds.train.push_back(all[order[i]]);
  }
  return ds;
}

double pearson_of(const TimePredictor& model, const std::vector<TimeSample>& data) {
  std::vector<double> pred, truth;
  pred.reserve(data.size());
  for (const auto& s : data) {
    pred.push_back(model.predict(s));
    truth.push_back(s.target);
  }
  if (pred.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return pearson(pred, truth);
}

double neg_mse_of(const TimePredictor& model, const std::vector<TimeSample>& data) {
  double mse = 0.0;
  for (const auto& s : data) {
    const double d = model.predict(s) - s.target;
    mse += d * d;
  }
  return data.empty() ? 0.0 : -mse / static_cast<double>(data.size());
}

int cmd_train_time(const CommonArgs& common, const std::string& texts_path,
                   const std::string& vectors_path, const std::string& out_prefix,
                   double dev_frac, double test_frac) {
  const RunConfig cfg = common.load();
  auto tin = open_in(texts_path);
  const auto recs = read_text_file(tin);

  std::map<std::string, std::vector<double>> vecs;
  const bool dynamic = !vectors_path.empty();
  if (dynamic) vecs = read_session_vectors(vectors_path);

  TimeDataset ds = build_time_dataset(
      recs, dynamic ? &vecs : nullptr,
      static_cast<std::size_t>(cfg.get_int("store.capacity")),
      static_cast<std::size_t>(cfg.get_int("text.vocab_size")),
      static_cast<std::size_t>(cfg.get_int("text.max_len")), dev_frac, test_frac,
      common.seed);

  TimePredictor model(encoder_from_config(cfg, "text"),
                      static_cast<std::size_t>(cfg.get_int("time.ff_dim")),
                      ds.vocab.size(), ds.editor_dim,
                      derive_seed(common.seed, 0x717E));
  const auto report = fit<TimePredictor, TimeSample>(
      model, ds.train, ds.dev, train_options(cfg, common.seed),
      [](const TimePredictor& m, const std::vector<TimeSample>& d) {
        return pearson_of(m, d);
      },
      [](const TimePredictor& m, const std::vector<TimeSample>& d) {
        return neg_mse_of(m, d);
      });

  const double dev_pearson = pearson_of(model, ds.dev);
  const double test_pearson = pearson_of(model, ds.test);
  if (std::isnan(dev_pearson))
    std::cerr << R"({"warning":"DegenerateVariance","message":"dev Pearson undefined"})"
              << '\n';

  nn::save_checkpoint(out_prefix + ".ckpt", model.params());
  json meta;
  meta["kind"] = "time";
  meta["editor_dim"] = ds.editor_dim;
  meta["dynamic"] = dynamic;
  write_meta(out_prefix + ".meta.json", meta);
  auto rep = open_out(out_prefix + ".report.tsv");
  write_train_report(rep, report);
  char line[160];
  std::snprintf(line, sizeof(line), "dev_pearson\t%.6f\ntest_pearson\t%.6f\n",
                dev_pearson, test_pearson);
  rep << line;
  write_manifest(out_prefix + ".manifest.json", "train-time", common.seed,
                 cfg.values(), {texts_path}, {out_prefix + ".ckpt"});
  std::cout << "train-time\tdev_pearson\t" << dev_pearson << "\ttest_pearson\t"
            << test_pearson << '\n';
  return 0;
}

int cmd_eval_time(const CommonArgs& common, const std::string& model_prefix,
                  const std::string& texts_path, const std::string& vectors_path,
                  const std::string& out_path, double dev_frac, double test_frac) {
  const RunConfig cfg = common.load();
  const json meta = read_meta(model_prefix + ".meta.json");
  if (meta.at("kind") != "time")
    throw Error(Errc::checkpoint_mismatch, "not a time-predictor checkpoint");

  auto tin = open_in(texts_path);
  const auto recs = read_text_file(tin);
  std::map<std::string, std::vector<double>> vecs;
  const bool dynamic = meta.at("dynamic").get<bool>();
  if (dynamic) {
    if (vectors_path.empty())
      throw Error(Errc::usage_error, "model needs --session-vectors");
    vecs = read_session_vectors(vectors_path);
  }
  TimeDataset ds = build_time_dataset(
      recs, dynamic ? &vecs : nullptr,
      static_cast<std::size_t>(cfg.get_int("store.capacity")),
      static_cast<std::size_t>(cfg.get_int("text.vocab_size")),
      static_cast<std::size_t>(cfg.get_int("text.max_len")), dev_frac, test_frac,
      common.seed);

  TimePredictor model(encoder_from_config(cfg, "text"),
                      static_cast<std::size_t>(cfg.get_int("time.ff_dim")),
                      ds.vocab.size(), meta.at("editor_dim"),
                      derive_seed(common.seed, 0x717E));
  nn::load_checkpoint(model_prefix + ".ckpt", model.params());

  const double dev_p = pearson_of(model, ds.dev);
  const double test_p = pearson_of(model, ds.test);
  char line[160];
  std::snprintf(line, sizeof(line), "dev_pearson\t%.6f\ntest_pearson\t%.6f\n", dev_p,
                test_p);
  if (!out_path.empty()) open_out(out_path) << line;
  std::cout << "eval-time\tdev_pearson\t" << dev_p << "\ttest_pearson\t" << test_p
            << '\n';
  return 0;
}

// Best-effort adapter for externally released per-session action records.
// Accepts TSV (editor, doc, actions) or JSONL with configurable field names.
int cmd_import_dataset(const CommonArgs& common, const std::string& in_path,
                       const std::string& out_path, const std::string& format,
                       const std::string& editor_field,
                       const std::string& doc_field,
                       const std::string& actions_field,
                       const std::string& lang) {
  const RunConfig cfg = common.load();
  auto in = open_in(in_path);
  std::vector<ActionRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ActionRecord rec;
    rec.lang_pair = lang;
    std::string actions_text;
    if (format == "jsonl") {
      json obj = json::parse(line, nullptr, false);
      if (obj.is_discarded() || !obj.is_object())
        throw Error(Errc::malformed_record,
                    "line " + std::to_string(lineno) + ": not a JSON object");
      auto fetch = [&](const std::string& key) -> std::string {
        const auto it = obj.find(key);
        if (it == obj.end())
          throw Error(Errc::malformed_record,
                      "line " + std::to_string(lineno) + ": missing '" + key + "'");
        if (it->is_string()) return it->get<std::string>();
        return it->dump();
      };
      rec.editor_id = fetch(editor_field);
      rec.doc_id = obj.contains(doc_field) ? fetch(doc_field)
                                           : "doc" + std::to_string(lineno);
      actions_text = fetch(actions_field);
    } else {
      const auto cols = split_tabs(line);
      if (cols.size() < 2)
        throw Error(Errc::malformed_record,
                    "line " + std::to_string(lineno) + ": need 2+ columns");
      rec.editor_id = cols[0];
      rec.doc_id = cols.size() >= 3 ? cols[1] : "doc" + std::to_string(lineno);
      actions_text = cols.back();
    }
    std::istringstream toks(actions_text);
    std::string tok;
    while (toks >> tok) rec.actions.push_back(action_from_token(tok));
    if (rec.actions.empty())
      throw Error(Errc::malformed_record,
                  "line " + std::to_string(lineno) + ": no actions");
    if (rec.actions.back().type != ActionType::stop)
      rec.actions.push_back(Action::stop_marker());
    records.push_back(std::move(rec));
  }
  auto out = open_out(out_path);
  write_action_file(out, records);
  write_manifest(out_path + ".manifest.json", "import-dataset", common.seed,
                 cfg.values(), {in_path}, {out_path});
  std::cout << "import-dataset\tsessions\t" << records.size() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"post-editing action sequences: extraction, editor models, "
               "editor embeddings, and time prediction"};
  app.require_subcommand(1);

  CommonArgs common;

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic corpus");
  std::string synth_out = "synth_out";
  synth_cmd->add_option("--out", synth_out, "output directory")->required();
  add_common(synth_cmd, common);

  // extract
  auto* extract_cmd =
      app.add_subcommand("extract", "compile session logs into action sequences");
  std::string ex_in, ex_out, ex_texts;
  extract_cmd->add_option("--in", ex_in, "session log file or directory")->required();
  extract_cmd->add_option("--out", ex_out, "action-sequence file")->required();
  extract_cmd->add_option("--texts", ex_texts, "also write the documents table");
  add_common(extract_cmd, common);

  // vocab
  auto* vocab_cmd = app.add_subcommand("vocab", "build the action-word vocabulary");
  std::string vo_in, vo_out;
  vocab_cmd->add_option("--in", vo_in, "action-sequence file")->required();
  vocab_cmd->add_option("--out", vo_out, "vocabulary file")->required();
  add_common(vocab_cmd, common);

  // symbolize
  auto* sym_cmd = app.add_subcommand("symbolize", "map actions to symbol ids");
  std::string sy_in, sy_vocab, sy_out, sy_anon;
  sym_cmd->add_option("--in", sy_in, "action-sequence file")->required();
  sym_cmd->add_option("--vocab", sy_vocab, "vocabulary file")->required();
  sym_cmd->add_option("--out", sy_out, "symbolized dataset")->required();
  sym_cmd->add_option("--anonymized", sy_anon,
                      "also write the anonymized action file");
  add_common(sym_cmd, common);

  // balance
  auto* bal_cmd = app.add_subcommand("balance", "balanced train/dev/test splits");
  std::string ba_in, ba_out;
  bal_cmd->add_option("--in", ba_in, "symbolized dataset")->required();
  bal_cmd->add_option("--out", ba_out, "output prefix")->required();
  add_common(bal_cmd, common);

  // train-id / eval-id / ablate-id
  auto* tid_cmd = app.add_subcommand("train-id", "train the editor identifier");
  std::string ti_train, ti_dev, ti_vocab, ti_out;
  tid_cmd->add_option("--train", ti_train)->required();
  tid_cmd->add_option("--dev", ti_dev)->required();
  tid_cmd->add_option("--vocab", ti_vocab)->required();
  tid_cmd->add_option("--out", ti_out, "output prefix")->required();
  add_common(tid_cmd, common);

  auto* eid_cmd = app.add_subcommand("eval-id", "evaluate the editor identifier");
  std::string ei_model, ei_data, ei_out;
  eid_cmd->add_option("--model", ei_model, "model prefix")->required();
  eid_cmd->add_option("--data", ei_data)->required();
  eid_cmd->add_option("--out", ei_out, "accuracy report");
  add_common(eid_cmd, common);

  auto* aid_cmd =
      app.add_subcommand("ablate-id", "action-category ablation grid");
  std::string ai_train, ai_dev, ai_vocab, ai_out;
  aid_cmd->add_option("--train", ai_train)->required();
  aid_cmd->add_option("--dev", ai_dev)->required();
  aid_cmd->add_option("--vocab", ai_vocab)->required();
  aid_cmd->add_option("--out", ai_out, "ablation report")->required();
  add_common(aid_cmd, common);

  // train-baseline
  auto* tb_cmd = app.add_subcommand("train-baseline",
                                    "train a text/delta identification baseline");
  std::string tb_kind, tb_train, tb_dev, tb_out;
  tb_cmd->add_option("--kind", tb_kind, "delta|mt|pe|mt_pe|mt_pe_att")->required();
  tb_cmd->add_option("--train", tb_train, "documents table")->required();
  tb_cmd->add_option("--dev", tb_dev, "documents table")->required();
  tb_cmd->add_option("--out", tb_out, "output prefix")->required();
  add_common(tb_cmd, common);

  // embed
  auto* em_cmd = app.add_subcommand("embed", "session and editor vectors");
  std::string em_model, em_data, em_out, em_editor_out;
  std::size_t em_min_sessions = 0;
  em_cmd->add_option("--model", em_model, "identifier prefix")->required();
  em_cmd->add_option("--data", em_data, "symbolized dataset")->required();
  em_cmd->add_option("--out", em_out, "session vectors")->required();
  em_cmd->add_option("--editor-out", em_editor_out, "editor vectors");
  em_cmd->add_option("--min-sessions", em_min_sessions,
                     "editor vector threshold (default from config)");
  add_common(em_cmd, common);

  // stats
  auto* st_cmd = app.add_subcommand("stats", "behaviour features and correlations");
  std::string st_actions, st_texts, st_out;
  st_cmd->add_option("--actions", st_actions)->required();
  st_cmd->add_option("--texts", st_texts)->required();
  st_cmd->add_option("--out", st_out, "output prefix")->required();
  add_common(st_cmd, common);

  // project
  auto* pr_cmd = app.add_subcommand("project", "2D projection of vectors");
  std::string pr_in, pr_out, pr_svg;
  pr_cmd->add_option("--in", pr_in, "vectors file")->required();
  pr_cmd->add_option("--out", pr_out, "2D coordinates")->required();
  pr_cmd->add_option("--svg", pr_svg, "scatter plot");
  add_common(pr_cmd, common);

  // train-time / eval-time
  auto* tt_cmd = app.add_subcommand("train-time", "train the time predictor");
  std::string tt_texts, tt_vectors, tt_out;
  double tt_dev = 0.15, tt_test = 0.15;
  tt_cmd->add_option("--texts", tt_texts, "documents table")->required();
  tt_cmd->add_option("--session-vectors", tt_vectors,
                     "dynamic editor embeddings source (omit for the "
                     "no-editor baseline)");
  tt_cmd->add_option("--out", tt_out, "output prefix")->required();
  tt_cmd->add_option("--dev-frac", tt_dev);
  tt_cmd->add_option("--test-frac", tt_test);
  add_common(tt_cmd, common);

  auto* et_cmd = app.add_subcommand("eval-time", "evaluate the time predictor");
  std::string et_model, et_texts, et_vectors, et_out;
  double et_dev = 0.15, et_test = 0.15;
  et_cmd->add_option("--model", et_model, "model prefix")->required();
  et_cmd->add_option("--texts", et_texts)->required();
  et_cmd->add_option("--session-vectors", et_vectors);
  et_cmd->add_option("--out", et_out, "Pearson report");
  et_cmd->add_option("--dev-frac", et_dev);
  et_cmd->add_option("--test-frac", et_test);
  add_common(et_cmd, common);

  // import-dataset
  auto* im_cmd = app.add_subcommand(
      "import-dataset", "adapt externally released action records");
  std::string im_in, im_out, im_format = "tsv";
  std::string im_editor = "editor_id", im_doc = "doc_id", im_actions = "actions";
  std::string im_lang = "unknown";
  im_cmd->add_option("--in", im_in)->required();
  im_cmd->add_option("--out", im_out)->required();
  im_cmd->add_option("--format", im_format, "tsv|jsonl");
  im_cmd->add_option("--editor-field", im_editor);
  im_cmd->add_option("--doc-field", im_doc);
  im_cmd->add_option("--actions-field", im_actions);
  im_cmd->add_option("--lang", im_lang);
  add_common(im_cmd, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth_cmd->parsed()) return cmd_synth(common, synth_out);
    if (extract_cmd->parsed()) return cmd_extract(common, ex_in, ex_out, ex_texts);
    if (vocab_cmd->parsed()) return cmd_vocab(common, vo_in, vo_out);
    if (sym_cmd->parsed())
      return cmd_symbolize(common, sy_in, sy_vocab, sy_out, sy_anon);
    if (bal_cmd->parsed()) return cmd_balance(common, ba_in, ba_out);
    if (tid_cmd->parsed())
      return cmd_train_id(common, ti_train, ti_dev, ti_vocab, ti_out);
    if (eid_cmd->parsed()) return cmd_eval_id(common, ei_model, ei_data, ei_out);
    if (aid_cmd->parsed())
      return cmd_ablate_id(common, ai_train, ai_dev, ai_vocab, ai_out);
    if (tb_cmd->parsed())
      return cmd_train_baseline(common, tb_kind, tb_train, tb_dev, tb_out);
    if (em_cmd->parsed())
      return cmd_embed(common, em_model, em_data, em_out, em_editor_out,
                       em_min_sessions);
    if (st_cmd->parsed()) return cmd_stats(common, st_actions, st_texts, st_out);
    if (pr_cmd->parsed()) return cmd_project(common, pr_in, pr_out, pr_svg);
    if (tt_cmd->parsed())
      return cmd_train_time(common, tt_texts, tt_vectors, tt_out, tt_dev, tt_test);
    if (et_cmd->parsed())
      return cmd_eval_time(common, et_model, et_texts, et_vectors, et_out, et_dev,
                           et_test);
    if (im_cmd->parsed())
      return cmd_import_dataset(common, im_in, im_out, im_format, im_editor,
                                im_doc, im_actions, im_lang);
  } catch (const Error& e) {
    json err;
    err["error"] = errc_name(e.code());
    err["message"] = e.message();
    std::cerr << err.dump() << '\n';
    if (e.code() == Errc::usage_error) return 2;
    if (e.code() == Errc::divergence || e.code() == Errc::non_finite_loss) return 4;
    return 3;
  } catch (const std::exception& e) {
    json err;
    err["error"] = "InternalError";
    err["message"] = e.what();
    std::cerr << err.dump() << '\n';
    return 3;
  }
  return 2;
}
