#include "reid/eval.hpp"

#include <map>

#include "reid/errors.hpp"

namespace reid {

int argmax_lowest(const Eigen::VectorXd& v) {
  int arg = 0;
  for (int i = 1; i < v.size(); ++i)
    if (v[i] > v[arg]) arg = i;
  return arg;
}

SessionPrediction classify_session(const std::vector<WindowScore>& windows) {
  if (windows.empty()) throw DataError("classify_session: empty session");
  SessionPrediction p;
  p.session_id = windows[0].session_id;
  p.true_user = windows[0].label;
  p.sum_logprob = Eigen::VectorXd::Zero(windows[0].logprob.size());
  for (const WindowScore& w : windows) {
    p.sum_logprob += w.logprob;
    ++p.window_count;
  }
  p.predicted = argmax_lowest(p.sum_logprob);
  return p;
}

std::vector<SessionPrediction> classify_sessions(const std::vector<WindowScore>& scores) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<WindowScore>> by_session;
  for (const WindowScore& s : scores) {
    // session ids are unique per user in a dataset; key on (user, session)
    const std::string key = s.user_id + "\t" + s.session_id;
    if (!by_session.count(key)) order.push_back(key);
    by_session[key].push_back(s);
  }
  std::vector<SessionPrediction> out;
  for (const std::string& key : order) out.push_back(classify_session(by_session[key]));
  return out;
}

double per_sample_accuracy(const std::vector<WindowScore>& scores) {
  if (scores.empty()) throw DataError("per_sample_accuracy: empty input");
  long correct = 0;
  for (const WindowScore& s : scores)
    if (argmax_lowest(s.logprob) == s.label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(scores.size());
}

double per_session_accuracy(const std::vector<WindowScore>& scores) {
  const std::vector<SessionPrediction> preds = classify_sessions(scores);
  if (preds.empty()) throw DataError("per_session_accuracy: empty input");
  long correct = 0;
  for (const SessionPrediction& p : preds)
    if (p.predicted == p.true_user) ++correct;
  return static_cast<double>(correct) / static_cast<double>(preds.size());
}

double per_user_accuracy(const std::vector<WindowScore>& scores) {
  if (scores.empty()) throw DataError("per_user_accuracy: empty input");
  std::map<int, Eigen::VectorXd> sums;
  for (const WindowScore& s : scores) {
    auto [it, inserted] = sums.try_emplace(s.label, Eigen::VectorXd::Zero(s.logprob.size()));
    it->second += s.logprob;
  }
  long correct = 0;
  for (const auto& [user, sum] : sums)
    if (argmax_lowest(sum) == user) ++correct;
  return static_cast<double>(correct) / static_cast<double>(sums.size());
}

}  // namespace reid
