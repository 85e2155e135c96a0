#include "postedit/models/time_predictor.hpp"

#include "postedit/error.hpp"
#include "postedit/nn/loss.hpp"

namespace postedit::models {

using nn::TensorMap;

TimePredictor::TimePredictor(EncoderConfig cfg, std::size_t ff_dim,
                             std::size_t text_vocab_size, std::size_t editor_dim,
                             std::uint64_t init_seed)
    : ff_dim_(ff_dim),
      editor_dim_(editor_dim),
      dual_{"dual", text_vocab_size, cfg, ff_dim},
      mix_{"mix", 2 * ff_dim + editor_dim, ff_dim},
      head_{"head", ff_dim, 1},
      dropout_{cfg.dropout_rate} {
  Rng rng(init_seed);
  dual_.init(params_, rng);
  mix_.init(params_, rng);
  head_.init(params_, rng);
}

struct TimePredictor::Forward {
  DualAttEncoder::Cache dual;
  std::vector<double> mix_in;     // [v ; editor_vec]
  std::vector<double> drop_mask;
  std::vector<double> u;          // mix output, post ReLU
  double pred = 0.0;
};

double TimePredictor::run_forward(const TimeSample& sample, bool train, Rng* rng,
                                  Forward& f) const {
  if (sample.editor_vec.size() != editor_dim_)
    throw Error(Errc::dim_mismatch,
                "editor vector has dimension " +
                    std::to_string(sample.editor_vec.size()) + ", expected " +
                    std::to_string(editor_dim_));
  dual_.forward(params_, sample.source_ids, sample.mt_ids, f.dual);

  f.mix_in.resize(2 * ff_dim_ + editor_dim_);
  std::copy(f.dual.v.begin(), f.dual.v.end(), f.mix_in.begin());
  std::copy(sample.editor_vec.begin(), sample.editor_vec.end(),
            f.mix_in.begin() + 2 * ff_dim_);
  if (train && rng)
    dropout_.forward(f.mix_in.data(), f.mix_in.size(), true, *rng, f.drop_mask);

  f.u.resize(ff_dim_);
  mix_.forward(params_, f.mix_in.data(), f.u.data());
  nn::relu(f.u.data(), ff_dim_);
  head_.forward(params_, f.u.data(), &f.pred);
  return f.pred;
}

double TimePredictor::loss_and_grads(const TimeSample& sample, bool train, Rng& rng,
                                     TensorMap* grads) const {
  Forward f;
  run_forward(sample, train, &rng, f);
  double dpred = 0.0;
  const double loss = nn::squared_error(f.pred, sample.target, grads ? &dpred : nullptr);
  if (!grads) return loss;

  std::vector<double> du(ff_dim_, 0.0);
  head_.backward(params_, *grads, f.u.data(), &dpred, du.data());
  nn::relu_backward(f.u.data(), du.data(), ff_dim_);

  std::vector<double> dmix_in(f.mix_in.size(), 0.0);
  mix_.backward(params_, *grads, f.mix_in.data(), du.data(), dmix_in.data());
  dropout_.backward(dmix_in.data(), dmix_in.size(), f.drop_mask);
  // the editor vector is an input, not a parameter; only the text trunk
  // receives its share of the gradient
  dual_.backward(params_, *grads, f.dual, dmix_in.data());
  return loss;
}

double TimePredictor::predict(const TimeSample& sample) const {
  Forward f;
  return run_forward(sample, false, nullptr, f);
}

}  // namespace postedit::models
