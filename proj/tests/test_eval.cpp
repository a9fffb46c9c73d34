#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "reid/errors.hpp"
#include "reid/eval.hpp"

using namespace reid;

namespace {

WindowScore score(std::vector<double> logprob, int label, std::string user,
                  std::string session) {
  WindowScore s;
  s.logprob = Eigen::Map<Eigen::VectorXd>(logprob.data(),
                                          static_cast<long>(logprob.size()));
  s.label = label;
  s.user_id = std::move(user);
  s.session_id = std::move(session);
  return s;
}

std::vector<WindowScore> random_scores(std::mt19937_64& rng, int num_users,
                                       int num_sessions_per_user, int windows_per_session) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<WindowScore> out;
  for (int u = 0; u < num_users; ++u)
    for (int s = 0; s < num_sessions_per_user; ++s)
      for (int w = 0; w < windows_per_session; ++w) {
        Eigen::VectorXd logits(num_users);
        for (int k = 0; k < num_users; ++k) logits[k] = n(rng);
        const double mx = logits.maxCoeff();
        const double lse = mx + std::log((logits.array() - mx).exp().sum());
        WindowScore ws;
        ws.logprob = logits.array() - lse;
        ws.label = u;
        ws.user_id = "u" + std::to_string(u);
        ws.session_id = "s" + std::to_string(s);
        out.push_back(std::move(ws));
      }
  return out;
}

// Independent recount of all three metrics using plain maps and loops.
struct RefMetrics {
  double per_sample, per_session, per_user;
};

RefMetrics recount(const std::vector<WindowScore>& scores) {
  long sample_ok = 0;
  // keyed accumulation: session = (user_id, session_id), user = user_id
  std::vector<std::pair<std::pair<std::string, std::string>,
                        std::pair<Eigen::VectorXd, int>>> sessions;
  std::vector<std::pair<std::string, std::pair<Eigen::VectorXd, int>>> users;
  for (const WindowScore& s : scores) {
    int arg = 0;
    for (int k = 1; k < s.logprob.size(); ++k)
      if (s.logprob[k] > s.logprob[arg]) arg = k;
    if (arg == s.label) ++sample_ok;

    const auto skey = std::make_pair(s.user_id, s.session_id);
    auto sit = std::find_if(sessions.begin(), sessions.end(),
                            [&](const auto& e) { return e.first == skey; });
    if (sit == sessions.end())
      sessions.push_back({skey, {s.logprob, s.label}});
    else
      sit->second.first += s.logprob;

    auto uit = std::find_if(users.begin(), users.end(),
                            [&](const auto& e) { return e.first == s.user_id; });
    if (uit == users.end())
      users.push_back({s.user_id, {s.logprob, s.label}});
    else
      uit->second.first += s.logprob;
  }
  auto count_ok = [](const auto& groups) {
    long ok = 0;
    for (const auto& [key, acc] : groups) {
      int arg = 0;
      for (int k = 1; k < acc.first.size(); ++k)
        if (acc.first[k] > acc.first[arg]) arg = k;
      if (arg == acc.second) ++ok;
    }
    return ok;
  };
  return {static_cast<double>(sample_ok) / scores.size(),
          static_cast<double>(count_ok(sessions)) / sessions.size(),
          static_cast<double>(count_ok(users)) / users.size()};
}

}  // namespace

TEST_CASE("argmax_lowest breaks ties toward the lowest index") {
  Eigen::VectorXd v(4);
  v << 0.1, 0.5, 0.5, 0.2;
  CHECK(argmax_lowest(v) == 1);
  v << 0.5, 0.5, 0.5, 0.5;
  CHECK(argmax_lowest(v) == 0);
  v << -3, -1, -2, -1;
  CHECK(argmax_lowest(v) == 1);
}

TEST_CASE("classify_session sums log-probabilities") {
  // window 1 favors user 0 (0.6 vs 0.4), window 2 favors user 1 (0.3 vs 0.7);
  // products: 0.6*0.3 = 0.18 < 0.4*0.7 = 0.28 -> user 1
  const std::vector<WindowScore> windows = {
      score({std::log(0.6), std::log(0.4)}, 1, "u1", "s0"),
      score({std::log(0.3), std::log(0.7)}, 1, "u1", "s0"),
  };
  const SessionPrediction p = classify_session(windows);
  CHECK(p.predicted == 1);
  CHECK(p.true_user == 1);
  CHECK(p.window_count == 2);
  CHECK(p.sum_logprob[0] == doctest::Approx(std::log(0.18)).epsilon(1e-12));
  CHECK(p.sum_logprob[1] == doctest::Approx(std::log(0.28)).epsilon(1e-12));
}

TEST_CASE("classify_session is invariant to window order") {
  std::mt19937_64 rng(17);
  std::vector<WindowScore> windows;
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 9; ++i) {
    Eigen::VectorXd lp(5);
    for (int k = 0; k < 5; ++k) lp[k] = n(rng);
    WindowScore s;
    s.logprob = lp;
    s.label = 2;
    s.user_id = "u2";
    s.session_id = "s0";
    windows.push_back(std::move(s));
  }
  const SessionPrediction base = classify_session(windows);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(windows.begin(), windows.end(), rng);
    const SessionPrediction p = classify_session(windows);
    CHECK(p.predicted == base.predicted);
    CHECK((p.sum_logprob - base.sum_logprob).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("session argmax is invariant to per-window constant shifts") {
  std::mt19937_64 rng(19);
  std::vector<WindowScore> windows = random_scores(rng, 4, 1, 6);
  const int base = classify_session(windows).predicted;
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  for (WindowScore& w : windows) w.logprob.array() += shift(rng);
  CHECK(classify_session(windows).predicted == base);
}

TEST_CASE("metrics match an independent recount on random score sets") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<WindowScore> scores = random_scores(rng, 2 + trial % 5,
                                                          1 + trial % 3, 1 + trial % 4);
    const RefMetrics ref = recount(scores);
    CHECK(per_sample_accuracy(scores) == ref.per_sample);
    CHECK(per_session_accuracy(scores) == ref.per_session);
    CHECK(per_user_accuracy(scores) == ref.per_user);
  }
}

TEST_CASE("classify_sessions groups by user and session in first-appearance order") {
  const std::vector<WindowScore> scores = {
      score({std::log(0.9), std::log(0.1)}, 0, "u0", "s0"),
      score({std::log(0.2), std::log(0.8)}, 1, "u1", "s0"),  // same session id, other user
      score({std::log(0.8), std::log(0.2)}, 0, "u0", "s1"),
      score({std::log(0.7), std::log(0.3)}, 0, "u0", "s0"),
  };
  const std::vector<SessionPrediction> preds = classify_sessions(scores);
  REQUIRE(preds.size() == 3);
  CHECK(preds[0].window_count == 2);  // u0/s0 merged across the list
  CHECK(preds[0].predicted == 0);
  CHECK(preds[1].true_user == 1);
  CHECK(preds[1].predicted == 1);
  CHECK(preds[2].window_count == 1);
}

TEST_CASE("uniform scores tie-break every level to user 0") {
  std::vector<WindowScore> scores;
  for (int u = 0; u < 3; ++u) {
    WindowScore s = score({std::log(1.0 / 3), std::log(1.0 / 3), std::log(1.0 / 3)},
                          u, "u" + std::to_string(u), "s0");
    scores.push_back(std::move(s));
  }
  CHECK(per_sample_accuracy(scores) == doctest::Approx(1.0 / 3));
  CHECK(per_session_accuracy(scores) == doctest::Approx(1.0 / 3));
  CHECK(per_user_accuracy(scores) == doctest::Approx(1.0 / 3));
}

TEST_CASE("empty inputs are rejected") {
  const std::vector<WindowScore> empty;
  CHECK_THROWS_AS(classify_session(empty), DataError);
  CHECK_THROWS_AS(per_sample_accuracy(empty), DataError);
  CHECK_THROWS_AS(per_session_accuracy(empty), DataError);
  CHECK_THROWS_AS(per_user_accuracy(empty), DataError);
}

TEST_CASE("score_windows carries metadata and matches forward") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> n(0.0, 1.0);
  FunnelShape shape{4, 6, 3, {5}};
  const FunnelModel<double> m = init_model<double>(shape, 31);
  std::vector<FeatureWindow> windows;
  for (int i = 0; i < 7; ++i) {
    FeatureWindow w;
    w.values.resize(6, 4);
    for (int t = 0; t < 6; ++t)
      for (int c = 0; c < 4; ++c) w.values(t, c) = n(rng);
    w.label = i % 3;
    w.user_id = "u" + std::to_string(i % 3);
    w.session_id = "s9";
    windows.push_back(std::move(w));
  }
  const std::vector<WindowScore> scores = score_windows(m, windows, 3);
  REQUIRE(scores.size() == 7);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    CHECK(scores[i].label == windows[i].label);
    CHECK(scores[i].user_id == windows[i].user_id);
    CHECK((scores[i].logprob - forward(m, windows[i])).cwiseAbs().maxCoeff() < 1e-12);
  }
}
