#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <numeric>
#include <vector>

#include "postedit/error.hpp"
#include "postedit/nn/adam.hpp"
#include "postedit/nn/tensor.hpp"
#include "postedit/rng.hpp"

namespace postedit::models {

struct TrainOptions {
  double lr = 1e-3;
  std::size_t batch = 32;
  std::size_t max_epochs = 100;
  std::size_t patience = 5;
  std::uint64_t seed = 1;
};

struct EpochStat {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double dev_metric = 0.0;
};

struct TrainReport {
  std::vector<EpochStat> epochs;
  double best_dev = 0.0;
  std::size_t best_epoch = 0;
};

// Line-delimited: epoch TAB train_loss TAB dev_metric.
void write_train_report(std::ostream& out, const TrainReport& report);
std::string format_train_report(const TrainReport& report);

// Generic mini-batch loop: shuffles with its own deterministic RNG,
// averages per-example gradients over the batch, Adam updates, early stop
// on the dev selection metric (higher is better, patience in epochs), and
// restores the best parameters. Throws Error(divergence) on non-finite
// loss.
template <typename Model, typename Sample>
TrainReport fit(Model& model, std::vector<Sample> train,
                const std::vector<Sample>& dev, const TrainOptions& opt,
                const std::function<double(const Model&, const std::vector<Sample>&)>&
                    dev_metric,
                std::function<double(const Model&, const std::vector<Sample>&)>
                    selection = {}) {
  if (train.empty()) throw Error(Errc::empty_corpus, "no training samples");
  if (!selection) selection = dev_metric;

  Rng rng(opt.seed);
  nn::Adam adam(opt.lr);
  nn::TensorMap grads = model.params().like();
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);

  TrainReport report;
  nn::TensorMap best_params;
  double best_sel = -std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= opt.max_epochs; ++epoch) {
    rng.shuffle(order);
    double total_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += opt.batch) {
      const std::size_t n = std::min(opt.batch, order.size() - start);
      grads.zero();
      double batch_loss = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        batch_loss += model.loss_and_grads(train[order[start + i]], true, rng, &grads);
      if (!std::isfinite(batch_loss))
        throw Error(Errc::divergence, "non-finite training loss");
      grads.scale(1.0 / static_cast<double>(n));
      adam.step(model.params(), grads);
      total_loss += batch_loss;
    }

    EpochStat stat;
    stat.epoch = epoch;
    stat.train_loss = total_loss / static_cast<double>(train.size());
    stat.dev_metric = dev.empty() ? 0.0 : dev_metric(model, dev);
    report.epochs.push_back(stat);

    const double sel = dev.empty() ? -stat.train_loss : selection(model, dev);
    if (std::isfinite(sel) && sel > best_sel) {
      best_sel = sel;
      best_params = model.params();
      report.best_epoch = epoch;
      report.best_dev = stat.dev_metric;
      since_best = 0;
    } else if (++since_best > opt.patience) {
      break;
    }
  }

  if (report.best_epoch > 0) model.params() = best_params;
  return report;
}

// argmax-based classification accuracy; relies on an overloaded
// predict_probs(model, sample).
template <typename Model, typename Sample>
double accuracy(const Model& model, const std::vector<Sample>& data) {
  if (data.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& s : data) {
    const auto probs = predict_probs(model, s);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < probs.size(); ++i)
      if (probs[i] > probs[arg]) arg = i;
    if (arg == s.label) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

}  // namespace postedit::models
