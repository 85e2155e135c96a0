#include "postedit/editor_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>

#include "postedit/error.hpp"
#include "postedit/rng.hpp"

namespace postedit {

EditorEmbedding editor_embedding(std::string editor_id,
                                 const std::vector<std::vector<double>>& sessions) {
  if (sessions.empty())
    throw Error(Errc::empty_input, "editor embedding over zero sessions");
  const std::size_t dim = sessions.front().size();
  EditorEmbedding out;
  out.editor_id = std::move(editor_id);
  out.n_sessions = sessions.size();
  out.vec.assign(dim, 0.0);
  for (const auto& s : sessions) {
    if (s.size() != dim)
      throw Error(Errc::dim_mismatch, "session embeddings differ in dimension");
    for (std::size_t j = 0; j < dim; ++j) out.vec[j] += s[j];
  }
  for (double& v : out.vec) v /= static_cast<double>(sessions.size());
  return out;
}

void DynamicStore::update(const std::string& editor_id, std::vector<double> h) {
  std::unique_lock lock(mutex_);
  auto& fifo = store_[editor_id];
  fifo.push_back(std::move(h));
  while (fifo.size() > capacity_) fifo.pop_front();
}

std::vector<double> DynamicStore::query(const std::string& editor_id,
                                        std::size_t dim) const {
  std::shared_lock lock(mutex_);
  auto it = store_.find(editor_id);
  if (it == store_.end() || it->second.empty())
    return std::vector<double>(dim, 0.0);  // cold start
  std::vector<double> mean(dim, 0.0);
  for (const auto& v : it->second)
    for (std::size_t j = 0; j < dim; ++j) mean[j] += v[j];
  for (double& v : mean) v /= static_cast<double>(it->second.size());
  return mean;
}

std::size_t DynamicStore::size(const std::string& editor_id) const {
  std::shared_lock lock(mutex_);
  auto it = store_.find(editor_id);
  return it == store_.end() ? 0 : it->second.size();
}

BehaviorFeatures behavior_features(const std::vector<SessionBehavior>& sessions) {
  if (sessions.empty())
    throw Error(Errc::empty_input, "behaviour features over zero sessions");
  double first_wait_sum = 0.0;
  std::size_t first_wait_n = 0;
  std::size_t jump_backs = 0;
  std::int64_t mouse_events = 0;
  std::size_t mt_tokens = 0;
  for (const auto& s : sessions) {
    mt_tokens += s.mt_tokens;
    for (const auto& a : s.actions) {
      if (a.type == ActionType::wait) {
        first_wait_sum += static_cast<double>(a.count);
        ++first_wait_n;
        break;  // only the first W
      }
      if (is_edit_action(a.type) || is_jump_action(a.type)) break;
    }
    for (const auto& a : s.actions) {
      if (a.type == ActionType::jump_back) ++jump_backs;
      if (is_mouse_action(a.type)) mouse_events += a.count;
    }
  }
  BehaviorFeatures f;
  f.avg_first_wait =
      first_wait_n ? first_wait_sum / static_cast<double>(first_wait_n) : 0.0;
  const double tokens = static_cast<double>(std::max<std::size_t>(1, mt_tokens));
  f.jump_backs_per_mt_token = static_cast<double>(jump_backs) / tokens;
  f.mouse_events_per_mt_token = static_cast<double>(mouse_events) / tokens;
  return f;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw Error(Errc::dim_mismatch, "pearson over lists of different length");
  if (xs.size() < 2)
    throw Error(Errc::empty_input, "pearson needs at least 2 points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0)
    return std::numeric_limits<double>::quiet_NaN();  // DegenerateVariance
  return sxy / std::sqrt(sxx * syy);
}

BalancedSplits balance_dataset(const std::vector<std::string>& session_editors,
                               std::size_t k, const BalanceSizes& sizes,
                               std::uint64_t seed) {
  std::map<std::string, std::vector<std::size_t>> by_editor;
  for (std::size_t i = 0; i < session_editors.size(); ++i)
    by_editor[session_editors[i]].push_back(i);

  if (by_editor.size() < k)
    throw Error(Errc::not_enough_editors,
                std::to_string(by_editor.size()) + " editors, need " +
                    std::to_string(k));

  const std::size_t need = sizes.train + sizes.dev + sizes.test;
  std::vector<std::pair<std::string, std::size_t>> counts;
  for (const auto& [ed, idx] : by_editor) counts.push_back({ed, idx.size()});
  std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  counts.resize(k);
  for (const auto& [ed, n] : counts)
    if (n < need)
      throw Error(Errc::not_enough_sessions,
                  "editor " + ed + " has " + std::to_string(n) + " sessions, need " +
                      std::to_string(need));

  BalancedSplits out;
  for (std::size_t rank = 0; rank < counts.size(); ++rank) {
    auto idx = by_editor[counts[rank].first];
    Rng rng(derive_seed(seed, rank));
    rng.shuffle(idx);
    out.train.insert(out.train.end(), idx.begin(), idx.begin() + sizes.train);
    out.dev.insert(out.dev.end(), idx.begin() + sizes.train,
                   idx.begin() + sizes.train + sizes.dev);
    out.test.insert(out.test.end(), idx.begin() + sizes.train + sizes.dev,
                    idx.begin() + need);
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.dev.begin(), out.dev.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

namespace {

// Power iteration on a dense symmetric matrix.
struct PowerResult {
  std::vector<double> vec;
  double value = 0.0;
};

PowerResult power_iterate(const std::vector<double>& m, std::size_t d,
                          const std::vector<const std::vector<double>*>& priors,
                          double zero_scale) {
  PowerResult r;
  r.vec.assign(d, 1.0 / std::sqrt(static_cast<double>(d)));
  // deterministic perturbation to escape symmetric starting points
  for (std::size_t j = 0; j < d; ++j)
    r.vec[j] += 1e-3 * static_cast<double>(j % 7) / static_cast<double>(d);
  std::vector<double> next(d);
  double prev_value = 0.0;
  for (int iter = 0; iter < 1000; ++iter) {
    for (std::size_t i = 0; i < d; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += m[i * d + j] * r.vec[j];
      next[i] = acc;
    }
    // re-orthogonalize against already-extracted components so rounding
    // noise in the deflated matrix cannot drift back to them
    for (const auto* c : priors) {
      double proj = 0.0;
      for (std::size_t j = 0; j < d; ++j) proj += next[j] * (*c)[j];
      for (std::size_t j = 0; j < d; ++j) next[j] -= proj * (*c)[j];
    }
    double norm = 0.0;
    for (double v : next) norm += v * v;
    norm = std::sqrt(norm);
    if (norm < 1e-12 * zero_scale) {  // effectively the zero matrix
      r.value = 0.0;
      return r;
    }
    for (std::size_t j = 0; j < d; ++j) next[j] /= norm;
    double dot_prev = 0.0;
    for (std::size_t j = 0; j < d; ++j) dot_prev += next[j] * r.vec[j];
    r.vec = next;
    r.value = norm;
    if (std::fabs(norm - prev_value) < 1e-9 * zero_scale &&
        std::fabs(dot_prev) > 1.0 - 1e-9)
      break;
    prev_value = norm;
  }
  return r;
}

void fix_sign(std::vector<double>& v) {
  std::size_t arg = 0;
  for (std::size_t j = 1; j < v.size(); ++j)
    if (std::fabs(v[j]) > std::fabs(v[arg])) arg = j;
  if (v[arg] < 0.0)
    for (double& x : v) x = -x;
}

}  // namespace

Projection project_2d(const std::vector<std::vector<double>>& vectors) {
  if (vectors.size() < 2)
    throw Error(Errc::empty_input, "projection needs at least 2 vectors");
  const std::size_t n = vectors.size();
  const std::size_t d = vectors.front().size();

  std::vector<double> mean(d, 0.0);
  for (const auto& v : vectors) {
    if (v.size() != d) throw Error(Errc::dim_mismatch, "vector dimensions differ");
    for (std::size_t j = 0; j < d; ++j) mean[j] += v[j];
  }
  for (double& v : mean) v /= static_cast<double>(n);

  std::vector<std::vector<double>> centered(n, std::vector<double>(d));
  double spread = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      centered[i][j] = vectors[i][j] - mean[j];
      spread += centered[i][j] * centered[i][j];
    }
  if (spread < 1e-24)
    throw Error(Errc::degenerate_input, "all points are identical");

  // sample covariance, 1/(n-1)
  std::vector<double> cov(d * d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < d; ++a) {
      const double va = centered[i][a];
      if (va == 0.0) continue;
      for (std::size_t b = 0; b < d; ++b) cov[a * d + b] += va * centered[i][b];
    }
  for (double& v : cov) v /= static_cast<double>(n - 1);

  double cov_scale = 0.0;
  for (double v : cov) cov_scale += v * v;
  cov_scale = std::max(1.0, std::sqrt(cov_scale));

  Projection out;
  std::vector<double> work = cov;
  for (int comp = 0; comp < 2; ++comp) {
    std::vector<const std::vector<double>*> priors;
    if (comp == 1) priors.push_back(&out.components[0]);
    PowerResult r = power_iterate(work, d, priors, cov_scale);
    if (r.value == 0.0 && comp == 1) {
      // rank-1 data: pick any direction orthogonal to the first component
      r.vec.assign(d, 0.0);
      const auto& c0 = out.components[0];
      std::size_t arg = 0;
      for (std::size_t j = 1; j < d; ++j)
        if (std::fabs(c0[j]) < std::fabs(c0[arg])) arg = j;
      r.vec[arg] = 1.0;
      double proj = 0.0;
      for (std::size_t j = 0; j < d; ++j) proj += r.vec[j] * c0[j];
      for (std::size_t j = 0; j < d; ++j) r.vec[j] -= proj * c0[j];
      double norm = 0.0;
      for (double v : r.vec) norm += v * v;
      norm = std::sqrt(norm);
      if (norm > 0)
        for (double& v : r.vec) v /= norm;
    }
    fix_sign(r.vec);
    out.components[comp] = r.vec;
    out.component_variance[comp] = r.value;
    // deflate
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        work[a * d + b] -= r.value * r.vec[a] * r.vec[b];
  }

  out.coords.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (int comp = 0; comp < 2; ++comp) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        acc += centered[i][j] * out.components[comp][j];
      out.coords[i][comp] = acc;
    }
  return out;
}

namespace {

std::vector<double> percentiles(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t less = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (values[j] < values[i]) ++less;
    out[i] = 100.0 * static_cast<double>(less) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace

void write_editor_table(std::ostream& out, const std::vector<EditorTableRow>& rows) {
  out << "editor_id\tn_sessions\tavg_first_wait\tjump_backs_per_mt_token\t"
         "mouse_events_per_mt_token\tx\ty\tpct_first_wait\tpct_jump_backs\t"
         "pct_mouse_events\n";
  std::vector<double> fw, jb, me;
  for (const auto& r : rows) {
    fw.push_back(r.features.avg_first_wait);
    jb.push_back(r.features.jump_backs_per_mt_token);
    me.push_back(r.features.mouse_events_per_mt_token);
  }
  const auto pfw = percentiles(fw), pjb = percentiles(jb), pme = percentiles(me);
  char line[320];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::snprintf(line, sizeof(line),
                  "%s\t%zu\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.1f\t%.1f\t%.1f\n",
                  r.editor_id.c_str(), r.n_sessions, r.features.avg_first_wait,
                  r.features.jump_backs_per_mt_token,
                  r.features.mouse_events_per_mt_token, r.x, r.y, pfw[i], pjb[i],
                  pme[i]);
    out << line;
  }
}

void write_scatter_svg(std::ostream& out, const std::vector<ScatterPoint>& points,
                       bool color_by_value) {
  const double width = 640.0, height = 480.0, margin = 40.0;
  double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;
  if (!points.empty()) {
    min_x = max_x = points[0].x;
    min_y = max_y = points[0].y;
    for (const auto& p : points) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  const double sx = (width - 2 * margin) / std::max(1e-12, max_x - min_x);
  const double sy = (height - 2 * margin) / std::max(1e-12, max_y - min_y);

  std::vector<double> values;
  for (const auto& p : points) values.push_back(p.value);
  const auto pct = percentiles(values);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char buf[256];
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const double cx = margin + (p.x - min_x) * sx;
    const double cy = height - margin - (p.y - min_y) * sy;
    std::string fill;
    if (color_by_value) {
      // dark blue (low) to red (high) by percentile
      const int r = static_cast<int>(2.55 * pct[i]);
      const int b = 255 - r;
      std::snprintf(buf, sizeof(buf), "rgb(%d,40,%d)", r, b);
      fill = buf;
    } else {
      static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                      "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                      "#bcbd22", "#17becf"};
      fill = palette[p.label % 10];
    }
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3.5\" fill=\"%s\" "
                  "fill-opacity=\"0.75\"><title>%s</title></circle>\n",
                  cx, cy, fill.c_str(), p.name.c_str());
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace postedit
