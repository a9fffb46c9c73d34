#pragma once

/// Metrics: per-sample, per-session, and per-user accuracy; session-level
/// classification by summed log-probabilities. Accuracies are exact rational
/// counts; argmax ties break to the lowest user index everywhere.

#include <Eigen/Core>

#include <string>
#include <vector>

#include "reid/features.hpp"
#include "reid/model.hpp"

namespace reid {

/// One scored window: model log-probabilities plus identity metadata.
struct WindowScore {
  Eigen::VectorXd logprob;
  int label = -1;
  std::string user_id;
  std::string session_id;
};

struct SessionPrediction {
  std::string session_id;
  Eigen::VectorXd sum_logprob;
  int predicted = -1;
  int true_user = -1;
  int window_count = 0;
};

int argmax_lowest(const Eigen::VectorXd& v);

/// Sum log-probability vectors of one session's windows, argmax.
SessionPrediction classify_session(const std::vector<WindowScore>& windows);

/// Group scores by session (order of first appearance) and classify each.
std::vector<SessionPrediction> classify_sessions(const std::vector<WindowScore>& scores);

double per_sample_accuracy(const std::vector<WindowScore>& scores);
double per_session_accuracy(const std::vector<WindowScore>& scores);
/// Fraction of users whose log-probabilities summed over all of their test
/// windows (across sessions) argmax to the correct user.
double per_user_accuracy(const std::vector<WindowScore>& scores);

/// Score every window with a model (batched forward).
template <typename Scalar>
std::vector<WindowScore> score_windows(const FunnelModel<Scalar>& m,
                                       const std::vector<FeatureWindow>& windows,
                                       int batch_size = 64) {
  std::vector<WindowScore> out;
  out.reserve(windows.size());
  for (std::size_t start = 0; start < windows.size();) {
    std::vector<const FeatureWindow*> batch;
    for (; start < windows.size() && batch.size() < static_cast<std::size_t>(batch_size);
         ++start)
      batch.push_back(&windows[start]);
    const MatrixX<Scalar> lp = forward_batch(m, make_inputs(m, batch));
    for (std::size_t b = 0; b < batch.size(); ++b) {
      WindowScore s;
      s.logprob = lp.col(static_cast<int>(b)).template cast<double>();
      s.label = batch[b]->label;
      s.user_id = batch[b]->user_id;
      s.session_id = batch[b]->session_id;
      out.push_back(std::move(s));
    }
  }
  return out;
}

/// Session-level prediction straight from a model.
template <typename Scalar>
SessionPrediction classify_session(const FunnelModel<Scalar>& m,
                                   const std::vector<FeatureWindow>& windows) {
  return classify_session(score_windows(m, windows));
}

}  // namespace reid
