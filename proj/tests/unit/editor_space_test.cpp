#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "postedit/action_extractor.hpp"
#include "postedit/editor_space.hpp"
#include "postedit/error.hpp"
#include "postedit/rng.hpp"
#include "postedit/tokenize.hpp"

using namespace postedit;

TEST_CASE("editor embedding is the coordinate-wise mean") {
  CHECK(editor_embedding("e", {{1.0, 2.0}}).vec == std::vector<double>{1.0, 2.0});
  CHECK(editor_embedding("e", {{1.0, -2.0}, {-1.0, 2.0}}).vec ==
        std::vector<double>{0.0, 0.0});
  const auto em = editor_embedding("e", {{1.0, 0.0}, {2.0, 3.0}, {3.0, 3.0}});
  CHECK(em.vec[0] == doctest::Approx(2.0));
  CHECK(em.vec[1] == doctest::Approx(2.0));
  CHECK(em.n_sessions == 3);
  CHECK_THROWS_AS(editor_embedding("e", {}), Error);
}

TEST_CASE("editor embedding is permutation invariant") {
  std::vector<std::vector<double>> vs = {{1, 2}, {3, -4}, {0.5, 0.25}, {-7, 2}};
  const auto a = editor_embedding("e", vs);
  std::swap(vs[0], vs[3]);
  std::swap(vs[1], vs[2]);
  const auto b = editor_embedding("e", vs);
  for (std::size_t j = 0; j < 2; ++j)
    CHECK(a.vec[j] == doctest::Approx(b.vec[j]).epsilon(1e-12));
}

TEST_CASE("dynamic store keeps the 10 most recent and answers with means") {
  DynamicStore store(10);
  for (int i = 0; i < 12; ++i)
    store.update("ed", {static_cast<double>(i)});
  CHECK(store.size("ed") == 10);
  // holds 2..11, mean 6.5
  CHECK(store.query("ed", 1)[0] == doctest::Approx(6.5));

  store.update("other", {3.0});
  CHECK(store.query("other", 1)[0] == doctest::Approx(3.0));
  CHECK(store.query("unknown", 3) == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("dynamic store matches a brute-force list under random interleaving") {
  DynamicStore store(10);
  std::unordered_map<std::string, std::vector<double>> shadow;  // all values
  Rng rng(2024);
  for (int step = 0; step < 1500; ++step) {
    const std::string ed = "e" + std::to_string(rng.uniform_u64(20));
    const double v = rng.normal();
    store.update(ed, {v});
    shadow[ed].push_back(v);
  }
  for (const auto& [ed, values] : shadow) {
    CHECK(store.size(ed) <= 10);
    const std::size_t n = std::min<std::size_t>(10, values.size());
    double mean = 0.0;
    for (std::size_t i = values.size() - n; i < values.size(); ++i) mean += values[i];
    mean /= static_cast<double>(n);
    CHECK(store.query(ed, 1)[0] == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("behaviour features on the email fixture") {
  const SessionLog log = testing::email_fixture();
  SessionBehavior s;
  s.actions = extract_actions(log);
  s.mt_tokens = tokenize(log.mt_segments).word_count();
  REQUIRE(s.mt_tokens == 17);
  const BehaviorFeatures f = behavior_features({s});
  CHECK(f.avg_first_wait == doctest::Approx(23.0));
  CHECK(f.jump_backs_per_mt_token == doctest::Approx(1.0 / 17.0));
  CHECK(f.mouse_events_per_mt_token == doctest::Approx(5.0 / 17.0));
}

TEST_CASE("behaviour features pool counts across sessions") {
  SessionBehavior a;
  a.actions = {Action::counted(ActionType::wait, 10),
               Action::counted(ActionType::jump_back, 3),
               Action::edit(ActionType::erase, "x"), Action::stop_marker()};
  a.mt_tokens = 10;
  SessionBehavior b;
  b.actions = {Action::counted(ActionType::wait, 20),
               Action::counted(ActionType::mouse_clicks, 2),
               Action::counted(ActionType::mouse_selects, 3),
               Action::stop_marker()};
  b.mt_tokens = 30;
  const BehaviorFeatures f = behavior_features({a, b});
  CHECK(f.avg_first_wait == doctest::Approx(15.0));
  // brute-force recount: 1 JB over 40 tokens, 5 mouse events over 40
  CHECK(f.jump_backs_per_mt_token == doctest::Approx(1.0 / 40.0));
  CHECK(f.mouse_events_per_mt_token == doctest::Approx(5.0 / 40.0));
}

TEST_CASE("sessions with no jump-backs or mouse events give zero ratios") {
  SessionBehavior s;
  s.actions = {Action::counted(ActionType::wait, 5), Action::stop_marker()};
  s.mt_tokens = 12;
  const BehaviorFeatures f = behavior_features({s});
  CHECK(f.jump_backs_per_mt_token == 0.0);
  CHECK(f.mouse_events_per_mt_token == 0.0);
}

TEST_CASE("pearson correlation") {
  CHECK(pearson({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
  CHECK(pearson({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(pearson({1, 2, 3}, {1, 3, 2}) == doctest::Approx(0.5));
  CHECK(std::isnan(pearson({1, 1, 1}, {1, 2, 3})));  // degenerate variance
  CHECK_THROWS_AS(pearson({1}, {1}), Error);
  CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), Error);
}

TEST_CASE("pearson invariances") {
  Rng rng(5);
  std::vector<double> xs, ys;
  for (int i = 0; i < 40; ++i) {
    xs.push_back(rng.normal());
    ys.push_back(rng.normal() + 0.5 * xs.back());
  }
  const double base = pearson(xs, ys);
  std::vector<double> xs2;
  for (double v : xs) xs2.push_back(3.0 * v + 7.0);  // positive affine
  CHECK(pearson(xs2, ys) == doctest::Approx(base).epsilon(1e-12));
  std::vector<double> ys2;
  for (double v : ys) ys2.push_back(-v);
  CHECK(pearson(xs, ys2) == doctest::Approx(-base).epsilon(1e-12));
}

TEST_CASE("balance_dataset selects, downsamples and splits deterministically") {
  std::vector<std::string> editors;
  for (int i = 0; i < 1200; ++i) editors.push_back("big");
  for (int i = 0; i < 1150; ++i) editors.push_back("mid");
  for (int i = 0; i < 40; ++i) editors.push_back("tiny");

  const BalanceSizes sizes{998, 58, 58};
  const auto splits = balance_dataset(editors, 2, sizes, 42);
  CHECK(splits.train.size() == 2 * 998);
  CHECK(splits.dev.size() == 2 * 58);
  CHECK(splits.test.size() == 2 * 58);

  // disjoint
  std::set<std::size_t> seen(splits.train.begin(), splits.train.end());
  for (auto i : splits.dev) CHECK(seen.insert(i).second);
  for (auto i : splits.test) CHECK(seen.insert(i).second);
  CHECK(seen.size() == 2 * 1114);

  // per-editor counts are equal
  std::map<std::string, int> train_counts;
  for (auto i : splits.train) ++train_counts[editors[i]];
  CHECK(train_counts["big"] == 998);
  CHECK(train_counts["mid"] == 998);
  CHECK(train_counts.count("tiny") == 0);

  // determinism
  const auto again = balance_dataset(editors, 2, sizes, 42);
  CHECK(again.train == splits.train);
  CHECK(again.dev == splits.dev);
  CHECK(again.test == splits.test);

  try {
    balance_dataset(editors, 4, sizes, 1);
    FAIL("expected NotEnoughEditors");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_enough_editors);
  }
  try {
    balance_dataset(editors, 3, sizes, 1);
    FAIL("expected NotEnoughSessions");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_enough_sessions);
  }
}

namespace {

// Jacobi eigensolver oracle for small symmetric matrices.
std::vector<double> jacobi_eigenvalues(std::vector<double> m, std::size_t d) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) off += m[i * d + j] * m[i * d + j];
    if (off < 1e-20) break;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) {
        if (std::fabs(m[p * d + q]) < 1e-18) continue;
        const double theta = (m[q * d + q] - m[p * d + p]) / (2.0 * m[p * d + q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < d; ++k) {
          const double akp = m[k * d + p], akq = m[k * d + q];
          m[k * d + p] = c * akp - s * akq;
          m[k * d + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double apk = m[p * d + k], aqk = m[q * d + k];
          m[p * d + k] = c * apk - s * aqk;
          m[q * d + k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(d);
  for (std::size_t i = 0; i < d; ++i) eig[i] = m[i * d + i];
  std::sort(eig.rbegin(), eig.rend());
  return eig;
}

}  // namespace

TEST_CASE("project_2d") {
  SUBCASE("rank-2 data keeps pairwise distances") {
    // points on a 2D plane embedded in 5 dimensions
    Rng rng(8);
    std::vector<double> u = {1, 0, 2, 0, -1}, v = {0, 1, -1, 1, 0};
    std::vector<std::vector<double>> pts;
    std::vector<std::array<double, 2>> plane;
    for (int i = 0; i < 12; ++i) {
      const double a = rng.normal(), b = rng.normal();
      plane.push_back({a, b});
      std::vector<double> p(5);
      for (int j = 0; j < 5; ++j) p[j] = a * u[j] + b * v[j];
      pts.push_back(std::move(p));
    }
    const Projection proj = project_2d(pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        double d_high = 0.0;
        for (int k = 0; k < 5; ++k) {
          const double diff = pts[i][k] - pts[j][k];
          d_high += diff * diff;
        }
        const double dx = proj.coords[i][0] - proj.coords[j][0];
        const double dy = proj.coords[i][1] - proj.coords[j][1];
        CHECK(std::sqrt(dx * dx + dy * dy) ==
              doctest::Approx(std::sqrt(d_high)).epsilon(1e-6));
      }
  }
  SUBCASE("collinear points have zero second-component variance") {
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 6; ++i)
      pts.push_back({1.0 * i, 2.0 * i, -1.0 * i});
    const Projection proj = project_2d(pts);
    double var2 = 0.0;
    for (const auto& c : proj.coords) var2 += c[1] * c[1];
    CHECK(var2 < 1e-12);
  }
  SUBCASE("projection variance equals the top-2 eigenvalues (Jacobi oracle)") {
    Rng rng(99);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 40; ++i) {
      std::vector<double> p(5);
      for (int j = 0; j < 5; ++j) p[j] = rng.normal() * (j + 1);
      pts.push_back(std::move(p));
    }
    const Projection proj = project_2d(pts);

    // covariance of the centered data, 1/(n-1)
    const std::size_t n = pts.size(), d = 5;
    std::vector<double> mean(d, 0.0);
    for (const auto& p : pts)
      for (std::size_t j = 0; j < d; ++j) mean[j] += p[j] / static_cast<double>(n);
    std::vector<double> cov(d * d, 0.0);
    for (const auto& p : pts)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          cov[a * d + b] += (p[a] - mean[a]) * (p[b] - mean[b]) /
                            static_cast<double>(n - 1);
    const auto eig = jacobi_eigenvalues(cov, d);
    CHECK(proj.component_variance[0] == doctest::Approx(eig[0]).epsilon(1e-6));
    CHECK(proj.component_variance[1] == doctest::Approx(eig[1]).epsilon(1e-6));
  }
  SUBCASE("identical points raise DegenerateInput") {
    try {
      project_2d({{1, 2}, {1, 2}, {1, 2}});
      FAIL("expected DegenerateInput");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::degenerate_input);
    }
  }
}

TEST_CASE("editor table and scatter exports render") {
  std::vector<EditorTableRow> rows(3);
  rows[0] = {"e0", 12, {10.0, 0.1, 0.5}, 1.0, 2.0};
  rows[1] = {"e1", 15, {20.0, 0.2, 0.8}, -1.0, 0.5};
  rows[2] = {"e2", 11, {5.0, 0.05, 0.2}, 0.0, -1.0};
  std::ostringstream table;
  write_editor_table(table, rows);
  CHECK(table.str().find("editor_id") == 0);
  CHECK(table.str().find("e1") != std::string::npos);

  std::ostringstream svg;
  write_scatter_svg(svg,
                    {{0.0, 0.0, 0, 1.0, "a"}, {1.0, 1.0, 1, 2.0, "b"}},
                    false);
  CHECK(svg.str().find("<svg") == 0);
  CHECK(svg.str().find("circle") != std::string::npos);
}
