#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "postedit/action.hpp"

namespace postedit {

// Mean of a set of session embeddings for one editor.
struct EditorEmbedding {
  std::string editor_id;
  std::vector<double> vec;
  std::size_t n_sessions = 0;
};

EditorEmbedding editor_embedding(std::string editor_id,
                                 const std::vector<std::vector<double>>& sessions);

// Rolling per-editor store of the most recent session embeddings
// (capacity 10 by default). Queries return the mean of the stored vectors;
// unknown editors get the zero vector (cold start). Updates are serialized;
// queries take a shared lock.
class DynamicStore {
 public:
  explicit DynamicStore(std::size_t capacity = 10) : capacity_(capacity) {}

  void update(const std::string& editor_id, std::vector<double> h);
  std::vector<double> query(const std::string& editor_id, std::size_t dim) const;
  std::size_t size(const std::string& editor_id) const;
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::deque<std::vector<double>>> store_;
};

// Behavioural profile of a set of sessions: the average first waiting
// time, jump-backs per MT token, and mouse events (clicks + selections,
// summed over their counts) per MT token. Ratios pool counts over all
// sessions.
struct BehaviorFeatures {
  double avg_first_wait = 0.0;
  double jump_backs_per_mt_token = 0.0;
  double mouse_events_per_mt_token = 0.0;
};

struct SessionBehavior {
  std::vector<Action> actions;
  std::size_t mt_tokens = 0;
};

BehaviorFeatures behavior_features(const std::vector<SessionBehavior>& sessions);

// Product-moment correlation. Degenerate variance yields NaN (callers
// warn); length mismatch or n < 2 throw.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Balanced train/dev/test selection: the k editors with the most sessions,
// each downsampled (seeded) to exactly train+dev+test sessions, split
// disjointly. Returns indices into the input list.
struct BalanceSizes {
  std::size_t train = 998;
  std::size_t dev = 58;
  std::size_t test = 58;
};

struct BalancedSplits {
  std::vector<std::size_t> train, dev, test;
};

BalancedSplits balance_dataset(const std::vector<std::string>& session_editors,
                               std::size_t k, const BalanceSizes& sizes,
                               std::uint64_t seed);

// Centered projection onto the top-2 principal components (power iteration
// with deflation; deterministic sign: the largest-magnitude coordinate of
// each component is positive).
struct Projection {
  std::vector<std::array<double, 2>> coords;
  std::array<double, 2> component_variance{0.0, 0.0};  // eigenvalues
  std::array<std::vector<double>, 2> components;
};

Projection project_2d(const std::vector<std::vector<double>>& vectors);

// Editor table export: editor_id, n_sessions, behaviour features, 2D
// coordinates, percentile columns per feature. Tab-separated.
struct EditorTableRow {
  std::string editor_id;
  std::size_t n_sessions = 0;
  BehaviorFeatures features;
  double x = 0.0, y = 0.0;
};

void write_editor_table(std::ostream& out, const std::vector<EditorTableRow>& rows);

// Scatter export: one SVG circle per point, colored by label index or by
// percentile of a scalar value.
struct ScatterPoint {
  double x = 0.0, y = 0.0;
  std::size_t label = 0;
  double value = 0.0;
  std::string name;
};

void write_scatter_svg(std::ostream& out, const std::vector<ScatterPoint>& points,
                       bool color_by_value);

}  // namespace postedit
