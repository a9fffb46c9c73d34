#pragma once

/// Degradation sweep harness: for each condition, degrade train/val/test
/// identically, retrain from the same initial seed, evaluate on the test
/// split. Conditions are independent; a baseline (neutral) condition is
/// always present in the output.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "reid/degrade.hpp"
#include "reid/eval.hpp"
#include "reid/features.hpp"
#include "reid/ingest.hpp"
#include "reid/model.hpp"

namespace reid {

struct SweepResult {
  std::string condition;
  std::string parameter;
  double per_sample_acc = 0.0;
  double per_session_acc = 0.0;
  double per_user_acc = 0.0;
  int num_users = 0;
  int num_sessions = 0;
  int num_windows = 0;
  std::uint64_t seed = 0;
};

/// CSV: header + one row per result, accuracies at 6 decimal digits.
void write_sweep_csv(const std::vector<SweepResult>& results, std::ostream& out);

/// Prepend a neutral baseline condition unless one is already present.
std::vector<DegradationSpec> ensure_baseline(std::vector<DegradationSpec> conditions);

/// Feature windows for one split of a dataset under one condition.
/// Pipeline: resample to 30 fps, degrade the telemetry, featurize at the
/// condition's framerate, mask channels for dimension conditions.
std::vector<FeatureWindow> condition_windows(const Dataset& ds,
                                             const std::vector<int>& recording_indices,
                                             const DegradationSpec& spec,
                                             std::uint64_t global_seed,
                                             double window_seconds = 30.0);

/// Split windows of a whole dataset under one condition.
struct ConditionData {
  std::vector<FeatureWindow> train, val, test;
};
ConditionData build_condition_data(const Dataset& ds, const DegradationSpec& spec,
                                   std::uint64_t global_seed,
                                   double window_seconds = 30.0);

template <typename Scalar>
using SweepModelSink = std::function<void(
    const DegradationSpec&, const FunnelModel<Scalar>&, const std::vector<EpochLog>&)>;

template <typename Scalar>
SweepResult run_condition(const Dataset& ds, const DegradationSpec& spec,
                          const TrainConfig& cfg,
                          const SweepModelSink<Scalar>& sink = nullptr) {
  const ConditionData data = build_condition_data(ds, spec, cfg.seed, cfg.window_seconds);
  const int num_users = static_cast<int>(ds.user_ids.size());

  std::vector<EpochLog> log;
  FunnelModel<Scalar> model = train<Scalar>(data.train, data.val, num_users, cfg, &log);
  if (sink) sink(spec, model, log);

  const std::vector<WindowScore> scores = score_windows(model, data.test);

  SweepResult r;
  r.condition = spec.kind_name();
  r.parameter = spec.parameter_label();
  r.per_sample_acc = per_sample_accuracy(scores);
  r.per_session_acc = per_session_accuracy(scores);
  r.per_user_acc = per_user_accuracy(scores);
  r.num_users = num_users;
  r.num_sessions = static_cast<int>(classify_sessions(scores).size());
  r.num_windows = static_cast<int>(scores.size());
  r.seed = cfg.seed;
  return r;
}

template <typename Scalar>
std::vector<SweepResult> run_sweep(const Dataset& ds,
                                   std::vector<DegradationSpec> conditions,
                                   const TrainConfig& cfg, int jobs = 1,
                                   const SweepModelSink<Scalar>& sink = nullptr);

}  // namespace reid
