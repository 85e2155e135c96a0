// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Every tolerance is pinned here; the heavy benchmarks run
// single-threaded so reports reproduce byte-identically.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "postedit/action_extractor.hpp"
#include "postedit/editor_space.hpp"
#include "postedit/error.hpp"
#include "postedit/models/ablate.hpp"
#include "postedit/models/baselines.hpp"
#include "postedit/models/identifier.hpp"
#include "postedit/models/text_vocab.hpp"
#include "postedit/models/time_predictor.hpp"
#include "postedit/models/trainer.hpp"
#include "postedit/nn/grad_check.hpp"
#include "postedit/session_log.hpp"
#include "postedit/symbolizer.hpp"
#include "postedit/synth.hpp"
#include "postedit/tokenize.hpp"

using namespace postedit;
using namespace postedit::models;

namespace {

// ---------------------------------------------------------------- fixture

SessionLog email_fixture() {
  SessionLog log;
  log.doc_id = "doc-0001";
  log.editor_id = "editor-a";
  log.lang_pair = "en-fr";
  log.source_segments = {
      "Hey there,",
      "Some agents do speak Spanish, otherwise our system will translate :)",
      "Best,",
      "<Name>",
  };
  log.mt_segments = {
      "Bonjour,",
      "Certains agents parlent espagnol, sinon notre système se traduira par :)",
      "Cordialement,",
      "<Name>",
  };
  auto ev = [&](std::int64_t t, EventKind kind, std::size_t pos, std::size_t len,
                std::string text = {}) {
    log.events.push_back(RawEvent{t, kind, pos, len, std::move(text)});
  };
  ev(23000, EventKind::delete_text, 63, 3);
  ev(24200, EventKind::mouse_click, 70, 0);
  ev(24600, EventKind::mouse_select, 72, 4);
  ev(25000, EventKind::delete_text, 72, 4);
  ev(30500, EventKind::mouse_click, 65, 0);
  ev(31000, EventKind::mouse_select, 63, 8);
  ev(32000, EventKind::delete_text, 63, 8);
  ev(32600, EventKind::insert_text, 63, 0, "traduit");
  ev(33500, EventKind::mouse_select, 49, 5);
  log.end_t = 34000;
  return log;
}

constexpr const char* kGolden =
    "W:23 JSF:1 JF:8 D:se W:2 MC:1 MS:1 JF:1 D:par "
    "W:7 MC:1 MS:1 JB:1 R:traduit W:2 MS:1 S";

// ------------------------------------------------------------- harness

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string report;  // deterministic report text (criteria 5 and 8)

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int g_failures = 0;

void run_criterion(int id, const std::string& name, double budget_s,
                   const std::function<Outcome()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = fn();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (secs > budget_s) {
    out.pass = false;
    out.detail += (out.detail.empty() ? "" : "; ") + std::string("over budget (") +
                  std::to_string(budget_s) + "s)";
  }
  char line[512];
  std::snprintf(line, sizeof(line), "criterion %2d %-38s %s  (%.1fs)%s%s", id,
                name.c_str(), out.pass ? "PASS" : "FAIL", secs,
                out.detail.empty() ? "" : "  -- ", out.detail.c_str());
  std::cout << line << std::endl;
  if (!out.pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// ------------------------------------------------- pinned benchmark config

EncoderConfig id_encoder() {
  EncoderConfig e;
  e.embed_dim = 24;
  e.hidden_dim = 32;
  e.num_layers = 2;
  e.dropout_rate = 0.3;
  return e;
}
constexpr std::size_t kIdReprDim = 64;

TrainOptions id_train_options(std::uint64_t seed) {
  TrainOptions opt;
  opt.lr = 2e-3;
  opt.batch = 32;
  opt.max_epochs = 14;
  opt.patience = 4;
  opt.seed = seed;
  return opt;
}

EncoderConfig text_encoder() {
  EncoderConfig e;
  e.embed_dim = 24;
  e.hidden_dim = 24;
  e.num_layers = 1;
  e.dropout_rate = 0.3;
  return e;
}

BaselineConfig baseline_config() {
  BaselineConfig c;
  c.encoder = text_encoder();
  c.ff_dim = 48;
  c.delta_embed_dim = 16;
  c.delta_dropout = 0.3;
  return c;
}

TrainOptions text_train_options(std::uint64_t seed, bool delta) {
  TrainOptions opt;
  opt.lr = 1e-3;
  opt.batch = 32;
  opt.max_epochs = delta ? 30 : 10;
  opt.patience = delta ? 6 : 3;
  opt.seed = seed;
  return opt;
}

// -------------------------------------------------- benchmark machinery

struct PreparedCorpus {
  std::vector<synth::SynthSession> sessions;
  std::vector<ActionRecord> actions;
  std::vector<std::string> editors;
  std::vector<std::string> labels;
};

PreparedCorpus prepare_corpus(std::uint64_t seed, std::size_t editors,
                              std::size_t sessions_per_editor) {
  synth::CorpusSpec spec;
  spec.editors = editors;
  spec.sessions_per_editor = sessions_per_editor;
  PreparedCorpus out;
  out.sessions = synth::generate_corpus(seed, spec, synth::default_profiles());
  out.actions.reserve(out.sessions.size());
  for (const auto& s : out.sessions) {
    ActionRecord rec;
    rec.editor_id = s.log.editor_id;
    rec.doc_id = s.log.doc_id;
    rec.lang_pair = s.log.lang_pair;
    rec.actions = extract_actions(s.log);
    out.actions.push_back(std::move(rec));
    out.editors.push_back(s.log.editor_id);
  }
  std::set<std::string> uniq(out.editors.begin(), out.editors.end());
  out.labels.assign(uniq.begin(), uniq.end());
  return out;
}

std::vector<std::uint32_t> symbol_values(const std::vector<SymbolId>& ids) {
  std::vector<std::uint32_t> out;
  out.reserve(ids.size());
  for (const auto id : ids) out.push_back(id.value);
  return out;
}

std::size_t label_of(const std::vector<std::string>& labels, const std::string& e) {
  return static_cast<std::size_t>(
      std::lower_bound(labels.begin(), labels.end(), e) - labels.begin());
}

double classifier_accuracy(const IdentifierModel& m,
                           const std::vector<SeqSample>& data) {
  return accuracy(m, data);
}

struct SeedNumbers {
  double actionseq_test = 0.0;
  double actionseq_dev = 0.0;
  double delta = 0.0, mt = 0.0, pe = 0.0, mt_pe = 0.0, mt_pe_att = 0.0;
};

// The identification benchmark for one seed: 6 profiles x 200/40/40, the
// Action Seq model against the five text/statistics baselines.
SeedNumbers run_benchmark_seed(std::uint64_t seed) {
  PreparedCorpus corpus = prepare_corpus(seed, 6, 280);
  const BalanceSizes sizes{200, 40, 40};
  const BalancedSplits splits = balance_dataset(corpus.editors, 6, sizes, seed);

  // symbol pipeline from the training split only
  std::vector<ActionRecord> train_actions;
  for (const auto i : splits.train) train_actions.push_back(corpus.actions[i]);
  const Vocabulary vocab = build_vocab(train_actions);

  auto seq_samples = [&](const std::vector<std::size_t>& idx) {
    std::vector<SeqSample> out;
    out.reserve(idx.size());
    for (const auto i : idx)
      out.push_back({symbol_values(symbolize(corpus.actions[i].actions, vocab)),
                     label_of(corpus.labels, corpus.editors[i])});
    return out;
  };
  const auto seq_train = seq_samples(splits.train);
  const auto seq_dev = seq_samples(splits.dev);
  const auto seq_test = seq_samples(splits.test);

  SeedNumbers numbers;
  {
    IdentifierModel model(id_encoder(), kIdReprDim, vocab.size(), corpus.labels,
                          derive_seed(seed, 0xA11C));
    const auto report = fit<IdentifierModel, SeqSample>(
        model, seq_train, seq_dev, id_train_options(seed), classifier_accuracy);
    numbers.actionseq_dev = report.best_dev;
    numbers.actionseq_test = accuracy(model, seq_test);
  }

  // text pipeline
  std::vector<TokenizedDoc> src(corpus.sessions.size()), mt(corpus.sessions.size()),
      pe(corpus.sessions.size());
  for (const auto i : splits.train) {
    src[i] = tokenize(corpus.sessions[i].log.source_segments);
    mt[i] = tokenize(corpus.sessions[i].log.mt_segments);
    pe[i] = tokenize_text(final_document(corpus.sessions[i].log));
  }
  for (const auto& idx : {splits.dev, splits.test})
    for (const auto i : idx) {
      src[i] = tokenize(corpus.sessions[i].log.source_segments);
      mt[i] = tokenize(corpus.sessions[i].log.mt_segments);
      pe[i] = tokenize_text(final_document(corpus.sessions[i].log));
    }
  std::vector<std::vector<std::string>> train_docs;
  for (const auto i : splits.train) {
    train_docs.push_back(mt[i].flat());
    train_docs.push_back(pe[i].flat());
  }
  const TextVocab text_vocab = TextVocab::build(train_docs, 1000);

  auto text_samples = [&](const std::vector<std::size_t>& idx) {
    std::vector<BaselineSample> out;
    out.reserve(idx.size());
    for (const auto i : idx) {
      BaselineSample s;
      s.mt_ids = text_vocab.encode(mt[i].flat());
      s.pe_ids = text_vocab.encode(pe[i].flat());
      s.delta = delta_bins(featurize_delta(src[i], mt[i], pe[i]));
      s.label = label_of(corpus.labels, corpus.editors[i]);
      out.push_back(std::move(s));
    }
    return out;
  };
  const auto text_train = text_samples(splits.train);
  const auto text_dev = text_samples(splits.dev);
  const auto text_test = text_samples(splits.test);

  auto run_baseline = [&](BaselineKind kind) {
    BaselineModel model(kind, baseline_config(), text_vocab.size(), corpus.labels,
                        derive_seed(seed, 0xBA5E));
    fit<BaselineModel, BaselineSample>(
        model, text_train, text_dev,
        text_train_options(seed, kind == BaselineKind::delta),
        [](const BaselineModel& m, const std::vector<BaselineSample>& d) {
          return accuracy(m, d);
        });
    return accuracy(model, text_test);
  };
  numbers.delta = run_baseline(BaselineKind::delta);
  numbers.mt = run_baseline(BaselineKind::mt);
  numbers.pe = run_baseline(BaselineKind::pe);
  numbers.mt_pe = run_baseline(BaselineKind::mt_pe);
  numbers.mt_pe_att = run_baseline(BaselineKind::mt_pe_att);
  return numbers;
}

std::vector<SeedNumbers> g_benchmark;  // criterion 5 results, reused by 6 and 10

std::string benchmark_report(const std::vector<SeedNumbers>& rows) {
  std::string out =
      "seed\tactionseq_test\tactionseq_dev\tdelta\tmt\tpe\tmt_pe\tmt_pe_att\n";
  double as = 0, ad = 0, de = 0, m = 0, p = 0, mp = 0, mpa = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += std::to_string(i + 1) + '\t' + fmt(r.actionseq_test) + '\t' +
           fmt(r.actionseq_dev) + '\t' + fmt(r.delta) + '\t' + fmt(r.mt) + '\t' +
           fmt(r.pe) + '\t' + fmt(r.mt_pe) + '\t' + fmt(r.mt_pe_att) + '\n';
    as += r.actionseq_test;
    ad += r.actionseq_dev;
    de += r.delta;
    m += r.mt;
    p += r.pe;
    mp += r.mt_pe;
    mpa += r.mt_pe_att;
  }
  const double n = static_cast<double>(rows.size());
  out += "avg\t" + fmt(as / n) + '\t' + fmt(ad / n) + '\t' + fmt(de / n) + '\t' +
         fmt(m / n) + '\t' + fmt(p / n) + '\t' + fmt(mp / n) + '\t' + fmt(mpa / n) +
         '\n';
  return out;
}

// ------------------------------------------------------- time benchmark

struct TimeSeedNumbers {
  double zero_dev = 0.0, zero_test = 0.0;
  double dyn_dev = 0.0, dyn_test = 0.0;
};

double pearson_on(const TimePredictor& model, const std::vector<TimeSample>& data) {
  std::vector<double> a, b;
  for (const auto& s : data) {
    a.push_back(model.predict(s));
    b.push_back(s.target);
  }
  return pearson(a, b);
}

TimeSeedNumbers run_time_seed(std::uint64_t seed) {
  PreparedCorpus corpus = prepare_corpus(derive_seed(seed, 0x7153), 18, 70);

  // identifier trained on a balanced split of the same corpus
  const BalancedSplits splits =
      balance_dataset(corpus.editors, 18, BalanceSizes{50, 10, 10}, seed);
  std::vector<ActionRecord> train_actions;
  for (const auto i : splits.train) train_actions.push_back(corpus.actions[i]);
  const Vocabulary vocab = build_vocab(train_actions);

  auto seq_samples = [&](const std::vector<std::size_t>& idx) {
    std::vector<SeqSample> out;
    for (const auto i : idx)
      out.push_back({symbol_values(symbolize(corpus.actions[i].actions, vocab)),
                     label_of(corpus.labels, corpus.editors[i])});
    return out;
  };
  IdentifierModel identifier(id_encoder(), kIdReprDim, vocab.size(), corpus.labels,
                             derive_seed(seed, 0xA11C));
  {
    TrainOptions opt = id_train_options(seed);
    opt.max_epochs = 10;
    opt.patience = 3;
    fit<IdentifierModel, SeqSample>(identifier, seq_samples(splits.train),
                                    seq_samples(splits.dev), opt,
                                    classifier_accuracy);
  }

  // session embeddings in corpus order feed the per-editor rolling store
  DynamicStore store(10);
  std::vector<std::vector<double>> editor_vec(corpus.sessions.size());
  for (std::size_t i = 0; i < corpus.sessions.size(); ++i) {
    const auto h = identifier.session_embedding(
        symbol_values(symbolize(corpus.actions[i].actions, vocab)));
    editor_vec[i] = store.query(corpus.editors[i], kIdReprDim);
    store.update(corpus.editors[i], h);
  }

  // text side
  std::vector<std::vector<std::string>> docs;
  for (const auto& s : corpus.sessions) {
    docs.push_back(tokenize(s.log.source_segments).flat());
    docs.push_back(tokenize(s.log.mt_segments).flat());
  }
  const TextVocab text_vocab = TextVocab::build(docs, 1000);

  auto make_samples = [&](bool dynamic) {
    std::vector<TimeSample> out(corpus.sessions.size());
    for (std::size_t i = 0; i < corpus.sessions.size(); ++i) {
      TimeSample s;
      s.source_ids =
          text_vocab.encode(tokenize(corpus.sessions[i].log.source_segments).flat());
      s.mt_ids = text_vocab.encode(tokenize(corpus.sessions[i].log.mt_segments).flat());
      s.editor_vec =
          dynamic ? editor_vec[i] : std::vector<double>(kIdReprDim, 0.0);
      s.target = corpus.sessions[i].log_time_per_word;
      out[i] = std::move(s);
    }
    return out;
  };

  // seeded session-level split: 70/15/15
  std::vector<std::size_t> order(corpus.sessions.size());
  std::iota(order.begin(), order.end(), 0);
  Rng split_rng(derive_seed(seed, 0x5B117));
  split_rng.shuffle(order);
  const std::size_t n_test = order.size() * 15 / 100;
  const std::size_t n_dev = order.size() * 15 / 100;

  TimeSeedNumbers numbers;
  for (const bool dynamic : {false, true}) {
    const auto all = make_samples(dynamic);
    std::vector<TimeSample> train, dev, test;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i < n_test)
        test.push_back(all[order[i]]);
      else if (i < n_test + n_dev)
        dev.push_back(all[order[i]]);
      else
        train.push_back(all[order[i]]);
    }
    TimePredictor model(text_encoder(), 48, text_vocab.size(), kIdReprDim,
                        derive_seed(seed, 0x717E));
    TrainOptions opt = text_train_options(seed, false);
    fit<TimePredictor, TimeSample>(
        model, train, dev, opt,
        [](const TimePredictor& m, const std::vector<TimeSample>& d) {
          return pearson_on(m, d);
        },
        [](const TimePredictor& m, const std::vector<TimeSample>& d) {
          double mse = 0.0;
          for (const auto& s : d) {
            const double diff = m.predict(s) - s.target;
            mse += diff * diff;
          }
          return -mse / static_cast<double>(d.size());
        });
    const double dev_p = pearson_on(model, dev);
    const double test_p = pearson_on(model, test);
    if (dynamic) {
      numbers.dyn_dev = dev_p;
      numbers.dyn_test = test_p;
    } else {
      numbers.zero_dev = dev_p;
      numbers.zero_test = test_p;
    }
  }
  return numbers;
}

std::string time_report(const std::vector<TimeSeedNumbers>& rows) {
  std::string out = "seed\tzero_dev\tzero_test\tdyn_dev\tdyn_test\n";
  double zd = 0, zt = 0, dd = 0, dt = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += std::to_string(i + 1) + '\t' + fmt(r.zero_dev) + '\t' + fmt(r.zero_test) +
           '\t' + fmt(r.dyn_dev) + '\t' + fmt(r.dyn_test) + '\n';
    zd += r.zero_dev;
    zt += r.zero_test;
    dd += r.dyn_dev;
    dt += r.dyn_test;
  }
  const double n = static_cast<double>(rows.size());
  out += "avg\t" + fmt(zd / n) + '\t' + fmt(zt / n) + '\t' + fmt(dd / n) + '\t' +
         fmt(dt / n) + '\n';
  return out;
}

std::string g_time_report;

// ----------------------------------------------------------- criteria

Outcome criterion1() {
  Outcome out;
  const auto actions = extract_actions(email_fixture());
  const std::string got = sequence_to_string(actions);
  out.require(got == kGolden, "got '" + got + "'");
  return out;
}

Outcome criterion2() {
  Outcome out;
  synth::CorpusSpec spec;
  spec.editors = 6;
  spec.sessions_per_editor = 170;  // 1020 sessions
  const auto corpus = synth::generate_corpus(20260809, spec, synth::default_profiles());
  std::size_t ok = 0;
  for (const auto& s : corpus) {
    validate_session_log(s.log);
    const auto actions = extract_actions(s.log);
    const TokenizedDoc replayed = replay(tokenize(s.log.mt_segments), actions);
    if (replayed == tokenize_text(final_document(s.log))) ++ok;
  }
  out.require(ok == corpus.size(),
              fmt(100.0 * ok / corpus.size()) + "% of " +
                  std::to_string(corpus.size()) + " round trips");
  out.detail = std::to_string(corpus.size()) + " sessions";
  return out;
}

Outcome criterion3() {
  Outcome out;
  for (const BinKind kind : {BinKind::wait, BinKind::word_jump,
                             BinKind::sentence_jump, BinKind::mouse}) {
    std::size_t prev = 0;
    for (std::int64_t v = 0; v <= 1000; ++v) {
      const std::size_t b = bin_value(kind, v);
      out.require(b < bin_count(kind), "bin out of range");
      out.require(b >= prev, "bin not monotone at " + std::to_string(v));
      prev = b;
    }
  }
  // 336-symbol decode/encode identity
  std::vector<Action> acts;
  for (int i = 0; i < 50; ++i)
    acts.push_back(Action::edit(ActionType::erase, "w" + std::to_string(i)));
  acts.push_back(Action::stop_marker());
  ActionRecord rec{"e", "d", "xx", acts};
  const Vocabulary vocab = build_vocab({rec});
  out.require(vocab.size() == 336, "symbol table has " + std::to_string(vocab.size()));
  std::set<std::string> names;
  for (std::uint32_t id = 0; id < vocab.size(); ++id) {
    const DecodedSymbol d = vocab.decode(SymbolId{id});
    names.insert(vocab.symbol_name(SymbolId{id}));
    Action a;
    a.type = d.type;
    if (is_edit_action(d.type)) {
      a.word = d.arg == vocab.unk_index() ? "zz-unseen" : vocab.words()[d.arg];
    } else if (d.type != ActionType::stop) {
      const bool wide = d.type == ActionType::wait || d.type == ActionType::jump_fwd ||
                        d.type == ActionType::jump_back;
      std::string lbl = bin_label(wide ? BinKind::wait : BinKind::mouse, d.arg);
      if (lbl.back() == '+') lbl.pop_back();
      a.count = std::stoll(lbl);
    }
    out.require(vocab.encode(a) == SymbolId{id},
                "decode/encode mismatch at id " + std::to_string(id));
  }
  out.require(names.size() == 336, "symbol names not unique");
  return out;
}

Outcome criterion4() {
  Outcome out;
  double worst = 0.0;
  std::string worst_arch;
  auto note = [&](const std::string& arch, double err) {
    if (err > worst) {
      worst = err;
      worst_arch = arch;
    }
    out.require(err < 1e-4, arch + " rel err " + fmt(err));
  };

  EncoderConfig toy;
  toy.embed_dim = 5;
  toy.hidden_dim = 4;
  toy.num_layers = 2;
  toy.dropout_rate = 0.0;

  {
    IdentifierModel model(toy, 6, 20, {"a", "b", "c"}, 123);
    SeqSample sample{{1, 7, 3, 19, 0}, 2};
    Rng rng(1);
    nn::TensorMap grads = model.params().like();
    model.loss_and_grads(sample, false, rng, &grads);
    const auto res = nn::grad_check(
        model.params(),
        [&] {
          Rng r(1);
          return model.loss_and_grads(sample, false, r, nullptr);
        },
        grads, 1e-5, 300, 9);
    note("identifier", res.max_rel_error);
  }
  {
    BaselineConfig cfg;
    cfg.encoder = toy;
    cfg.ff_dim = 6;
    cfg.delta_embed_dim = 4;
    cfg.delta_dropout = 0.0;
    BaselineSample sample;
    sample.mt_ids = {1, 5, 2, 0};
    sample.pe_ids = {3, 5, 4};
    sample.delta = {2, 5, 9, 11, 3};
    sample.label = 1;
    for (const BaselineKind kind :
         {BaselineKind::delta, BaselineKind::mt, BaselineKind::pe,
          BaselineKind::mt_pe, BaselineKind::mt_pe_att}) {
      BaselineModel model(kind, cfg, 8, {"a", "b", "c"}, 77);
      Rng rng(2);
      nn::TensorMap grads = model.params().like();
      model.loss_and_grads(sample, false, rng, &grads);
      const auto res = nn::grad_check(
          model.params(),
          [&] {
            Rng r(2);
            return model.loss_and_grads(sample, false, r, nullptr);
          },
          grads, 1e-5, 250, 11);
      note(baseline_kind_name(kind), res.max_rel_error);
    }
  }
  {
    TimePredictor model(toy, 6, 8, 5, 31);
    TimeSample sample;
    sample.source_ids = {1, 2, 3, 4};
    sample.mt_ids = {5, 6, 7};
    sample.editor_vec = {0.2, -0.4, 0.0, 1.0, 0.5};
    sample.target = 1.25;
    Rng rng(3);
    nn::TensorMap grads = model.params().like();
    model.loss_and_grads(sample, false, rng, &grads);
    const auto res = nn::grad_check(
        model.params(),
        [&] {
          Rng r(3);
          return model.loss_and_grads(sample, false, r, nullptr);
        },
        grads, 1e-5, 250, 13);
    note("time_predictor", res.max_rel_error);
  }
  out.detail = "max rel err " + fmt(worst) + " (" + worst_arch + ")";
  return out;
}

Outcome criterion5() {
  Outcome out;
  g_benchmark.clear();
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    g_benchmark.push_back(run_benchmark_seed(seed));
  out.report = benchmark_report(g_benchmark);

  double as = 0, mt = 0, de = 0, att = 0;
  for (const auto& r : g_benchmark) {
    as += r.actionseq_test;
    mt += r.mt;
    de += r.delta;
    att += r.mt_pe_att;
  }
  const double n = static_cast<double>(g_benchmark.size());
  as /= n;
  mt /= n;
  de /= n;
  att /= n;
  const double chance = 1.0 / 6.0;

  out.require(as >= 0.80, "actionseq " + fmt(as) + " < 0.80");
  out.require(std::fabs(mt - chance) <= 0.10,
              "mt " + fmt(mt) + " not within 0.10 of chance");
  out.require(as - att >= 0.20, "actionseq - mt_pe_att = " + fmt(as - att));
  out.require(de >= chance + 0.05, "delta " + fmt(de) + " not above chance");
  out.require(de < as, "delta not below actionseq");
  out.detail = "actionseq " + fmt(as) + ", mt " + fmt(mt) + ", att " + fmt(att) +
               ", delta " + fmt(de);
  return out;
}

Outcome criterion6() {
  Outcome out;
  if (g_benchmark.empty()) {
    out.require(false, "criterion 5 must run first");
    return out;
  }
  struct Variant {
    std::string name;
    std::set<AblationCategory> cats;
    bool keep_only;
  };
  const std::vector<Variant> variants = {
      {"drop_editing", {AblationCategory::editing}, false},
      {"drop_mouse", {AblationCategory::mouse}, false},
      {"drop_wait", {AblationCategory::wait}, false},
      {"drop_first_wait", {AblationCategory::first_wait}, false},
      {"only_editing", {AblationCategory::editing}, true},
      {"only_mouse", {AblationCategory::mouse}, true},
      {"only_wait", {AblationCategory::wait}, true},
      {"only_first_wait", {AblationCategory::first_wait}, true},
  };
  constexpr std::size_t kSeeds = 3;  // dev accuracies averaged over 3 seeds

  std::map<std::string, double> avg;
  double full_avg = 0.0;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    full_avg += g_benchmark[seed - 1].actionseq_dev;
    PreparedCorpus corpus = prepare_corpus(seed, 6, 280);
    const BalancedSplits splits =
        balance_dataset(corpus.editors, 6, BalanceSizes{200, 40, 40}, seed);
    std::vector<ActionRecord> train_actions;
    for (const auto i : splits.train) train_actions.push_back(corpus.actions[i]);
    const Vocabulary vocab = build_vocab(train_actions);

    for (const auto& v : variants) {
      auto samples = [&](const std::vector<std::size_t>& idx) {
        std::vector<SeqSample> s;
        for (const auto i : idx) {
          const auto full_ids = symbolize(corpus.actions[i].actions, vocab);
          const auto ablated = ablate_sequence(full_ids, vocab, v.cats, v.keep_only);
          s.push_back({symbol_values(ablated),
                       label_of(corpus.labels, corpus.editors[i])});
        }
        return s;
      };
      IdentifierModel model(id_encoder(), kIdReprDim, vocab.size(), corpus.labels,
                            derive_seed(seed, 0xAB1A));
      const auto report = fit<IdentifierModel, SeqSample>(
          model, samples(splits.train), samples(splits.dev), id_train_options(seed),
          classifier_accuracy);
      avg[v.name] += report.best_dev;
    }
  }
  full_avg /= static_cast<double>(kSeeds);
  for (auto& [name, acc] : avg) acc /= static_cast<double>(kSeeds);

  out.require(avg["only_first_wait"] < full_avg,
              "only_first_wait " + fmt(avg["only_first_wait"]) + " !< full " +
                  fmt(full_avg));
  for (const char* cat : {"editing", "mouse", "wait", "first_wait"}) {
    const double only = avg["only_" + std::string(cat)];
    const double drop = avg["drop_" + std::string(cat)];
    out.require(only < full_avg,
                std::string("only_") + cat + " " + fmt(only) + " !< full");
    out.require(full_avg - drop < full_avg - only,
                std::string("drop_") + cat + " degrades more than only_" + cat);
  }
  out.detail = "full " + fmt(full_avg) + "; only fw " + fmt(avg["only_first_wait"]) +
               ", mouse " + fmt(avg["only_mouse"]) + ", wait " +
               fmt(avg["only_wait"]) + ", edit " + fmt(avg["only_editing"]);
  return out;
}

Outcome criterion7() {
  Outcome out;
  synth::CorpusSpec spec;
  spec.editors = 36;
  spec.sessions_per_editor = 12;
  const auto corpus = synth::generate_corpus(4242, spec, synth::default_profiles());

  std::map<std::string, std::vector<SessionBehavior>> by_editor;
  for (const auto& s : corpus) {
    SessionBehavior b;
    b.actions = extract_actions(s.log);
    b.mt_tokens = tokenize(s.log.mt_segments).word_count();
    by_editor[s.log.editor_id].push_back(std::move(b));
  }
  std::vector<double> fw, jb, me;
  for (const auto& [editor, sessions] : by_editor) {
    if (sessions.size() < 10) continue;
    const BehaviorFeatures f = behavior_features(sessions);
    fw.push_back(f.avg_first_wait);
    jb.push_back(f.jump_backs_per_mt_token);
    me.push_back(f.mouse_events_per_mt_token);
  }
  out.require(fw.size() >= 30, "only " + std::to_string(fw.size()) + " editors");
  const double mouse_jb = pearson(me, jb);
  const double fw_jb = pearson(fw, jb);
  out.require(mouse_jb > 0.3, "pearson(mouse, jb) = " + fmt(mouse_jb));
  out.require(fw_jb < -0.1, "pearson(first_wait, jb) = " + fmt(fw_jb));
  out.detail = "mouse/jb " + fmt(mouse_jb) + ", first_wait/jb " + fmt(fw_jb) +
               " over " + std::to_string(fw.size()) + " editors";
  return out;
}

Outcome criterion8() {
  Outcome out;
  std::vector<TimeSeedNumbers> rows;
  for (std::uint64_t seed = 1; seed <= 3; ++seed)
    rows.push_back(run_time_seed(seed));
  g_time_report = time_report(rows);
  out.report = g_time_report;

  double dev_gap = 0.0, test_gap = 0.0;
  for (const auto& r : rows) {
    dev_gap += r.dyn_dev - r.zero_dev;
    test_gap += r.dyn_test - r.zero_test;
  }
  dev_gap /= static_cast<double>(rows.size());
  test_gap /= static_cast<double>(rows.size());
  out.require(dev_gap >= 0.10, "dev gap " + fmt(dev_gap));
  out.require(test_gap >= 0.10, "test gap " + fmt(test_gap));
  out.detail = "dev gap " + fmt(dev_gap) + ", test gap " + fmt(test_gap);
  return out;
}

Outcome criterion9() {
  Outcome out;
  DynamicStore store(10);
  std::map<std::string, std::vector<std::vector<double>>> shadow;
  Rng rng(777);
  const std::size_t dim = 4;
  for (std::size_t step = 0; step < 1500; ++step) {
    const std::string editor = "e" + std::to_string(rng.uniform_u64(20));
    std::vector<double> v(dim);
    for (double& x : v) x = rng.normal();
    store.update(editor, v);
    shadow[editor].push_back(std::move(v));

    if (step % 50 == 0 || step + 1 == 1500) {
      for (const auto& [ed, all] : shadow) {
        out.require(store.size(ed) <= 10, ed + " holds > 10 vectors");
        const std::size_t n = std::min<std::size_t>(10, all.size());
        std::vector<double> mean(dim, 0.0);
        for (std::size_t i = all.size() - n; i < all.size(); ++i)
          for (std::size_t j = 0; j < dim; ++j) mean[j] += all[i][j];
        for (double& x : mean) x /= static_cast<double>(n);
        const auto got = store.query(ed, dim);
        for (std::size_t j = 0; j < dim; ++j)
          out.require(std::fabs(got[j] - mean[j]) < 1e-12,
                      "query mismatch for " + ed);
        if (!out.pass) return out;
      }
    }
  }
  out.require(store.query("never-seen", dim) == std::vector<double>(dim, 0.0),
              "cold start is not the zero vector");
  out.detail = "1500 updates across 20 editors";
  return out;
}

Outcome criterion10(const std::string& c5_report) {
  Outcome out;
  std::vector<SeedNumbers> again;
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    again.push_back(run_benchmark_seed(seed));
  out.require(benchmark_report(again) == c5_report,
              "identification benchmark report differs between runs");

  std::vector<TimeSeedNumbers> time_again;
  for (std::uint64_t seed = 1; seed <= 3; ++seed)
    time_again.push_back(run_time_seed(seed));
  out.require(time_report(time_again) == g_time_report,
              "time benchmark report differs between runs");
  out.detail = "both reports byte-identical";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto enabled = [&](int id) { return only.empty() || only.count(id) > 0; };

  std::string c5_report;

  if (enabled(1)) run_criterion(1, "golden extraction", 1.0, criterion1);
  if (enabled(2)) run_criterion(2, "round-trip property (>=1000 sessions)", 30.0,
                                criterion2);
  if (enabled(3)) run_criterion(3, "binning + 336-symbol bijection", 1.0, criterion3);
  if (enabled(4)) run_criterion(4, "gradient verification (7 architectures)", 120.0,
                                criterion4);
  if (enabled(5) || enabled(6) || enabled(10)) {
    run_criterion(5, "synthetic identification benchmark", 900.0, [&] {
      Outcome out = criterion5();
      c5_report = out.report;
      std::cout << out.report;
      return out;
    });
  }
  if (enabled(6)) run_criterion(6, "ablation ordering", 1800.0, criterion6);
  if (enabled(7)) run_criterion(7, "correlation signs", 120.0, criterion7);
  if (enabled(8) || enabled(10)) {
    run_criterion(8, "time prediction gain", 900.0, [&] {
      Outcome out = criterion8();
      std::cout << out.report;
      return out;
    });
  }
  if (enabled(9)) run_criterion(9, "dynamic store contract", 5.0, criterion9);
  if (enabled(10))
    run_criterion(10, "determinism of criteria 5 and 8", 2400.0,
                  [&] { return criterion10(c5_report); });

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: ")
            << (g_failures == 0 ? "" : std::to_string(g_failures)) << std::endl;
  return g_failures;
}
