#include <benchmark/benchmark.h>

#include "postedit/action_extractor.hpp"
#include "postedit/editor_space.hpp"
#include "postedit/models/identifier.hpp"
#include "postedit/rng.hpp"
#include "postedit/symbolizer.hpp"
#include "postedit/synth.hpp"
#include "postedit/tokenize.hpp"

using namespace postedit;

namespace {

synth::SynthSession make_session(std::uint64_t seed) {
  const auto doc = synth::generate_document(seed, 12, 10, 0.18);
  return synth::generate_session(synth::default_profiles()[1], doc, seed + 1, "d",
                                 "e", "xx-yy");
}

}  // namespace

static void BM_GenerateSession(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(make_session(seed++));
}
BENCHMARK(BM_GenerateSession);

static void BM_ExtractActions(benchmark::State& state) {
  const auto session = make_session(42);
  for (auto _ : state) benchmark::DoNotOptimize(extract_actions(session.log));
}
BENCHMARK(BM_ExtractActions);

static void BM_ReplaySequence(benchmark::State& state) {
  const auto session = make_session(42);
  const auto actions = extract_actions(session.log);
  const auto mt = tokenize(session.log.mt_segments);
  for (auto _ : state) benchmark::DoNotOptimize(replay(mt, actions));
}
BENCHMARK(BM_ReplaySequence);

static void BM_BinValue(benchmark::State& state) {
  std::int64_t v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bin_value(BinKind::wait, v));
    v = (v + 13) % 400;
  }
}
BENCHMARK(BM_BinValue);

static void BM_Symbolize(benchmark::State& state) {
  const auto session = make_session(42);
  const auto actions = extract_actions(session.log);
  ActionRecord rec{"e", "d", "xx", actions};
  const Vocabulary vocab = build_vocab({rec});
  for (auto _ : state) benchmark::DoNotOptimize(symbolize(actions, vocab));
}
BENCHMARK(BM_Symbolize);

static void BM_IdentifierForward(benchmark::State& state) {
  using namespace postedit::models;
  EncoderConfig cfg;
  cfg.embed_dim = 24;
  cfg.hidden_dim = 32;
  cfg.num_layers = 2;
  cfg.dropout_rate = 0.0;
  IdentifierModel model(cfg, 64, 336, {"a", "b", "c", "d", "e", "f"}, 5);
  Rng rng(7);
  std::vector<std::uint32_t> ids(static_cast<std::size_t>(state.range(0)));
  for (auto& id : ids) id = static_cast<std::uint32_t>(rng.uniform_u64(336));
  for (auto _ : state) benchmark::DoNotOptimize(model.predict(ids));
}
BENCHMARK(BM_IdentifierForward)->Arg(48)->Arg(128);

static void BM_IdentifierTrainStep(benchmark::State& state) {
  using namespace postedit::models;
  EncoderConfig cfg;
  cfg.embed_dim = 24;
  cfg.hidden_dim = 32;
  cfg.num_layers = 2;
  cfg.dropout_rate = 0.3;
  IdentifierModel model(cfg, 64, 336, {"a", "b", "c", "d", "e", "f"}, 5);
  Rng rng(7);
  SeqSample sample;
  sample.ids.resize(48);
  for (auto& id : sample.ids) id = static_cast<std::uint32_t>(rng.uniform_u64(336));
  sample.label = 3;
  nn::TensorMap grads = model.params().like();
  for (auto _ : state) {
    grads.zero();
    benchmark::DoNotOptimize(model.loss_and_grads(sample, true, rng, &grads));
  }
}
BENCHMARK(BM_IdentifierTrainStep);

static void BM_Project2D(benchmark::State& state) {
  Rng rng(3);
  std::vector<std::vector<double>> vectors(120, std::vector<double>(64));
  for (auto& v : vectors)
    for (double& x : v) x = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(project_2d(vectors));
}
BENCHMARK(BM_Project2D);

BENCHMARK_MAIN();
