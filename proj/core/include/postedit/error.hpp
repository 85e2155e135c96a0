#pragma once

#include <stdexcept>
#include <string>

namespace postedit {

// Error codes shared by the whole pipeline. The CLI maps these to exit
// codes: usage -> 2, divergence/non_finite_loss -> 4, everything else -> 3.
enum class Errc {
  malformed_record,
  non_monotonic_time,
  out_of_bounds_edit,
  invalid_jump,
  malformed_sequence,
  no_change,
  empty_corpus,
  empty_input,
  empty_after_ablation,
  id_out_of_range,
  dim_mismatch,
  checkpoint_mismatch,
  non_finite_loss,
  divergence,
  degenerate_variance,
  degenerate_input,
  not_enough_editors,
  not_enough_sessions,
  io_error,
  usage_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  Errc code() const { return code_; }
  const std::string& message() const { return message_; }

 private:
  Errc code_;
  std::string message_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::malformed_record: return "MalformedRecord";
    case Errc::non_monotonic_time: return "NonMonotonicTime";
    case Errc::out_of_bounds_edit: return "OutOfBoundsEdit";
    case Errc::invalid_jump: return "InvalidJump";
    case Errc::malformed_sequence: return "MalformedSequence";
    case Errc::no_change: return "NoChange";
    case Errc::empty_corpus: return "EmptyCorpus";
    case Errc::empty_input: return "EmptyInput";
    case Errc::empty_after_ablation: return "EmptyAfterAblation";
    case Errc::id_out_of_range: return "IdOutOfRange";
    case Errc::dim_mismatch: return "DimMismatch";
    case Errc::checkpoint_mismatch: return "CheckpointMismatch";
    case Errc::non_finite_loss: return "NonFiniteLoss";
    case Errc::divergence: return "Divergence";
    case Errc::degenerate_variance: return "DegenerateVariance";
    case Errc::degenerate_input: return "DegenerateInput";
    case Errc::not_enough_editors: return "NotEnoughEditors";
    case Errc::not_enough_sessions: return "NotEnoughSessions";
    case Errc::io_error: return "IoError";
    case Errc::usage_error: return "UsageError";
  }
  return "UnknownError";
}

}  // namespace postedit
