#include "reid/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

#include "reid/errors.hpp"

namespace reid {

void write_sweep_csv(const std::vector<SweepResult>& results, std::ostream& out) {
  out << "condition,parameter,per_sample_acc,per_session_acc,per_user_acc,"
         "num_users,num_sessions,num_windows,seed\n";
  char buf[64];
  for (const SweepResult& r : results) {
    out << r.condition << ',' << r.parameter << ',';
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f", r.per_sample_acc,
                  r.per_session_acc, r.per_user_acc);
    out << buf << ',' << r.num_users << ',' << r.num_sessions << ',' << r.num_windows
        << ',' << r.seed << '\n';
  }
}

std::vector<DegradationSpec> ensure_baseline(std::vector<DegradationSpec> conditions) {
  for (const DegradationSpec& c : conditions)
    if (c.is_neutral()) return conditions;
  DegradationSpec baseline;
  baseline.kind = DegradationKind::kNone;
  conditions.insert(conditions.begin(), baseline);
  return conditions;
}

std::vector<FeatureWindow> condition_windows(const Dataset& ds,
                                             const std::vector<int>& recording_indices,
                                             const DegradationSpec& spec,
                                             std::uint64_t global_seed,
                                             double window_seconds) {
  std::vector<FeatureWindow> out;
  for (int idx : recording_indices) {
    const Recording& rec = ds.recordings[idx];
    int label = -1;
    for (std::size_t u = 0; u < ds.user_ids.size(); ++u)
      if (ds.user_ids[u] == rec.user_id) label = static_cast<int>(u);
    if (label < 0) throw DataError("recording user not in dataset: " + rec.user_id);

    Recording r30 = resample(rec, 30.0);
    double fps = 30.0;
    switch (spec.kind) {
      case DegradationKind::kNone:
        break;
      case DegradationKind::kGaussianNoise:
        r30 = add_noise(r30, spec.parameter,
                        derive_seed(global_seed, rec.user_id, rec.session_id));
        break;
      case DegradationKind::kReducedFps:
        r30 = subsample_fps(r30, static_cast<int>(spec.parameter));
        fps = spec.parameter;
        break;
      case DegradationKind::kReducedPrecision:
        r30 = quantize(r30, spec.parameter);
        break;
      case DegradationKind::kReducedDims:
        break;  // masking happens on the windows below
    }

    std::vector<FeatureWindow> windows = featurize(r30, fps, label, window_seconds);
    if (spec.kind == DegradationKind::kReducedDims) {
      const ChannelMask mask = preset_mask(spec.preset);
      for (FeatureWindow& w : windows) w = apply_mask(w, mask);
    }
    for (FeatureWindow& w : windows) out.push_back(std::move(w));
  }
  return out;
}

ConditionData build_condition_data(const Dataset& ds, const DegradationSpec& spec,
                                   std::uint64_t global_seed, double window_seconds) {
  std::vector<int> train_idx, val_idx, test_idx;
  for (const std::string& user : ds.user_ids) {
    const UserSplit& s = ds.splits.at(user);
    train_idx.insert(train_idx.end(), s.train.begin(), s.train.end());
    val_idx.insert(val_idx.end(), s.val.begin(), s.val.end());
    test_idx.insert(test_idx.end(), s.test.begin(), s.test.end());
  }
  ConditionData data;
  data.train = condition_windows(ds, train_idx, spec, global_seed, window_seconds);
  data.val = condition_windows(ds, val_idx, spec, global_seed, window_seconds);
  data.test = condition_windows(ds, test_idx, spec, global_seed, window_seconds);
  if (data.train.empty() || data.val.empty() || data.test.empty())
    throw DataError("condition '" + spec.kind_name() +
                    "' produced an empty split (recordings too short?)");
  return data;
}

template <typename Scalar>
std::vector<SweepResult> run_sweep(const Dataset& ds,
                                   std::vector<DegradationSpec> conditions,
                                   const TrainConfig& cfg, int jobs,
                                   const SweepModelSink<Scalar>& sink) {
  conditions = ensure_baseline(std::move(conditions));
  std::vector<SweepResult> results(conditions.size());

  std::mutex sink_mutex;
  SweepModelSink<Scalar> locked_sink = nullptr;
  if (sink)
    locked_sink = [&](const DegradationSpec& s, const FunnelModel<Scalar>& m,
                      const std::vector<EpochLog>& log) {
      std::lock_guard<std::mutex> lock(sink_mutex);
      sink(s, m, log);
    };

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= conditions.size()) return;
      try {
        results[i] = run_condition<Scalar>(ds, conditions[i], cfg, locked_sink);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(conditions.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < n_threads; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

template std::vector<SweepResult> run_sweep<double>(const Dataset&,
                                                    std::vector<DegradationSpec>,
                                                    const TrainConfig&, int,
                                                    const SweepModelSink<double>&);
template std::vector<SweepResult> run_sweep<float>(const Dataset&,
                                                   std::vector<DegradationSpec>,
                                                   const TrainConfig&, int,
                                                   const SweepModelSink<float>&);

}  // namespace reid
