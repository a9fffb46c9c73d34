#include "reid/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "reid/errors.hpp"
#include "reid/eval.hpp"
#include "reid/sweep.hpp"
#include "reid/synthgen.hpp"

namespace fs = std::filesystem;

namespace reid {

std::vector<int> parse_hidden_sizes(const std::string& s) {
  std::vector<int> out;
  std::istringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("bad hidden size list: " + s);
    }
  }
  if (out.empty()) throw UsageError("empty hidden size list");
  return out;
}

RunConfig parse_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config: " + path);

  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    auto as_double = [&] {
      try {
        return std::stod(val);
      } catch (const std::exception&) {
        throw UsageError(path + ":" + std::to_string(line_no) + ": bad number " + val);
      }
    };
    auto as_int = [&] { return static_cast<int>(as_double()); };

    if (key == "data_dir") cfg.data_dir = val;
    else if (key == "train") cfg.split.n_train = as_int();
    else if (key == "val") cfg.split.n_val = as_int();
    else if (key == "test") cfg.split.n_test = as_int();
    else if (key == "epochs") cfg.train.epochs = as_int();
    else if (key == "batch") cfg.train.batch_size = as_int();
    else if (key == "lr") cfg.train.learning_rate = as_double();
    else if (key == "patience") cfg.train.patience = as_int();
    else if (key == "seed") cfg.train.seed = static_cast<std::uint64_t>(as_double());
    else if (key == "hidden") cfg.train.hidden = parse_hidden_sizes(val);
    else if (key == "window_seconds") cfg.train.window_seconds = as_double();
    else if (key == "precision") {
      if (val == "wide") cfg.train.wide = true;
      else if (val == "narrow") cfg.train.wide = false;
      else throw UsageError("precision must be wide or narrow");
    } else if (key == "noise") {
      cfg.conditions.push_back({DegradationKind::kGaussianNoise, as_double(), ""});
    } else if (key == "fps") {
      cfg.conditions.push_back({DegradationKind::kReducedFps, as_double(), ""});
    } else if (key == "quantize") {
      cfg.conditions.push_back({DegradationKind::kReducedPrecision, as_double(), ""});
    } else if (key == "dims") {
      preset_mask(val);  // validates the name
      cfg.conditions.push_back({DegradationKind::kReducedDims, 0.0, val});
    } else {
      throw UsageError(path + ":" + std::to_string(line_no) + ": unknown key " + key);
    }
  }
  if (cfg.data_dir.empty()) throw UsageError(path + ": data_dir is required");
  if (!fs::is_directory(cfg.data_dir))
    throw UsageError(path + ": data_dir does not exist: " + cfg.data_dir);
  return cfg;
}

std::uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file for hashing: " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string condition_tag(const DegradationSpec& spec) {
  std::string tag = spec.kind_name();
  if (spec.kind != DegradationKind::kNone) tag += "_" + spec.parameter_label();
  return tag;
}

std::vector<std::string> list_recording_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw UsageError("not a directory: " + dir);
  std::vector<std::string> paths;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".rec")
      paths.push_back(e.path().string());
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw DataError("no .rec files in " + dir);
  return paths;
}

Dataset load_dir_dataset(const std::string& dir, const SplitConfig& split,
                         std::vector<std::string>* paths_out = nullptr) {
  std::vector<std::string> paths = list_recording_files(dir);
  std::vector<Recording> recs;
  recs.reserve(paths.size());
  for (const std::string& p : paths) recs.push_back(load_recording(p));
  Dataset ds = build_dataset(std::move(recs), split);
  if (paths_out) *paths_out = std::move(paths);
  return ds;
}

void write_train_log(const std::vector<EpochLog>& log, const std::string& path) {
  std::ofstream out(path);
  out << "epoch\ttrain_loss\tval_accuracy\n";
  char buf[64];
  for (const EpochLog& e : log) {
    std::snprintf(buf, sizeof(buf), "%d\t%.6f\t%.6f\n", e.epoch, e.train_loss,
                  e.val_accuracy);
    out << buf;
  }
}

template <typename Scalar>
int evaluate_with(const std::string& checkpoint, const std::string& manifest,
                  const std::string& out_dir, const std::string& dims_preset) {
  const FunnelModel<Scalar> model = load_model<Scalar>(checkpoint);
  const Dataset ds = load_manifest_dataset(manifest);
  if (static_cast<int>(ds.user_ids.size()) != model.shape.num_users)
    throw DataError("manifest user count does not match checkpoint");

  const double fps = model.shape.input_frames / 30.0;
  DegradationSpec spec;
  if (dims_preset != "all") {
    spec = {DegradationKind::kReducedDims, 0.0, dims_preset};
  } else if (fps != 30.0) {
    spec = {DegradationKind::kReducedFps, fps, ""};
  }

  std::vector<int> test_idx;
  for (const std::string& user : ds.user_ids) {
    const UserSplit& s = ds.splits.at(user);
    test_idx.insert(test_idx.end(), s.test.begin(), s.test.end());
  }
  const std::vector<FeatureWindow> windows = condition_windows(ds, test_idx, spec, 0);
  const std::vector<WindowScore> scores = score_windows(model, windows);

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "per_sample_acc=%.6f\nper_session_acc=%.6f\nper_user_acc=%.6f\n"
                "num_windows=%zu\n",
                per_sample_accuracy(scores), per_session_accuracy(scores),
                per_user_accuracy(scores), scores.size());
  std::cout << buf;
  fs::create_directories(out_dir);
  std::ofstream out(fs::path(out_dir) / "metrics.txt");
  out << buf;
  return 0;
}

}  // namespace

int cmd_synthgen(int users, int sessions, double duration_s, double fps,
                 std::uint64_t seed, const std::string& out_dir) {
  if (users < 1 || sessions < 1) throw UsageError("synthgen: users and sessions must be >= 1");
  fs::create_directories(out_dir);
  char name[64];
  for (int u = 0; u < users; ++u) {
    const UserProfile profile = generate_profile(seed + static_cast<std::uint64_t>(u));
    for (int s = 0; s < sessions; ++s) {
      std::snprintf(name, sizeof(name), "user%03d", u);
      const std::string user_id = name;
      std::snprintf(name, sizeof(name), "session%03d", s);
      const std::string session_id = name;
      Recording rec = generate_recording(profile, duration_s, fps,
                                         derive_seed(seed, user_id, session_id));
      rec.user_id = user_id;
      rec.session_id = session_id;
      rec.start_time = s;  // chronological order = session index
      save_recording(rec, (fs::path(out_dir) / (user_id + "_" + session_id + ".rec")).string());
    }
  }
  std::cout << "wrote " << users * sessions << " recordings to " << out_dir << "\n";
  return 0;
}

int cmd_ingest(const std::string& dir, const SplitConfig& split,
               const std::string& out_manifest) {
  std::vector<std::string> paths;
  const Dataset ds = load_dir_dataset(dir, split, &paths);
  std::ofstream out(out_manifest);
  if (!out) throw DataError("cannot write manifest: " + out_manifest);
  write_manifest(ds, paths, out);
  std::cout << "users: " << ds.user_ids.size() << " (dropped " << ds.dropped_users
            << "), recordings: " << ds.recordings.size() << "\n";
  return 0;
}

int cmd_featurize(const std::string& manifest, const std::string& out_dir, double fps,
                  const std::string& dims_preset) {
  const Dataset ds = load_manifest_dataset(manifest);
  const ChannelMask mask = preset_mask(dims_preset);
  fs::create_directories(out_dir);
  int total = 0;
  for (const Recording& rec : ds.recordings) {
    int label = -1;
    for (std::size_t u = 0; u < ds.user_ids.size(); ++u)
      if (ds.user_ids[u] == rec.user_id) label = static_cast<int>(u);
    std::vector<FeatureWindow> windows = featurize(resample(rec, fps), fps, label);
    if (dims_preset != "all")
      for (FeatureWindow& w : windows) w = apply_mask(w, mask);
    save_feature_cache(windows,
                       (fs::path(out_dir) / (rec.user_id + "_" + rec.session_id + ".rwf"))
                           .string());
    total += static_cast<int>(windows.size());
  }
  std::cout << "wrote " << ds.recordings.size() << " caches (" << total << " windows) to "
            << out_dir << "\n";
  return 0;
}

int cmd_train(const std::string& manifest, const std::string& out_dir,
              const TrainConfig& cfg) {
  const Dataset ds = load_manifest_dataset(manifest);
  DegradationSpec none;
  const ConditionData data = build_condition_data(ds, none, cfg.seed, cfg.window_seconds);
  fs::create_directories(out_dir);

  std::vector<EpochLog> log;
  double val_acc = 0.0;
  const std::string ckpt = (fs::path(out_dir) / "model.ckpt").string();
  const int num_users = static_cast<int>(ds.user_ids.size());
  if (cfg.wide) {
    FunnelModel<double> model = train<double>(data.train, data.val, num_users, cfg, &log);
    save_model(model, ckpt);
    val_acc = model_accuracy(model, data.val);
  } else {
    FunnelModel<float> model = train<float>(data.train, data.val, num_users, cfg, &log);
    save_model(model, ckpt);
    val_acc = model_accuracy(model, data.val);
  }
  write_train_log(log, (fs::path(out_dir) / "train_log.txt").string());
  std::printf("trained %d users, %zu windows, val accuracy %.4f\n", num_users,
              data.train.size(), val_acc);
  return 0;
}

int cmd_evaluate(const std::string& checkpoint, const std::string& manifest,
                 const std::string& out_dir, const std::string& dims_preset) {
  return checkpoint_precision(checkpoint) == 8
             ? evaluate_with<double>(checkpoint, manifest, out_dir, dims_preset)
             : evaluate_with<float>(checkpoint, manifest, out_dir, dims_preset);
}

namespace {

template <typename Scalar>
int sweep_with(const RunConfig& cfg, const std::string& config_path,
               const std::string& out_dir, int jobs) {
  const Dataset ds = load_dir_dataset(cfg.data_dir, cfg.split);
  fs::create_directories(out_dir);

  SweepModelSink<Scalar> sink = [&](const DegradationSpec& spec,
                                    const FunnelModel<Scalar>& model,
                                    const std::vector<EpochLog>& log) {
    const std::string tag = condition_tag(spec);
    save_model(model, (fs::path(out_dir) / ("model_" + tag + ".ckpt")).string());
    write_train_log(log, (fs::path(out_dir) / ("train_log_" + tag + ".txt")).string());
  };

  const std::vector<SweepResult> results =
      run_sweep<Scalar>(ds, cfg.conditions, cfg.train, jobs, sink);

  {
    std::ofstream out(fs::path(out_dir) / "sweep.csv");
    if (!out) throw DataError("cannot write sweep.csv under " + out_dir);
    write_sweep_csv(results, out);
  }
  {
    std::ofstream out(fs::path(out_dir) / "run_manifest.txt");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(hash_file(config_path)));
    out << "tool=reid_lab 1.0\nconfig=" << config_path << "\nconfig_hash=" << buf
        << "\nseed=" << cfg.train.seed
        << "\nprecision=" << (cfg.train.wide ? "wide" : "narrow") << "\nconditions="
        << results.size() << "\n";
  }
  for (const SweepResult& r : results)
    std::printf("%s %s: sample %.4f session %.4f user %.4f\n", r.condition.c_str(),
                r.parameter.c_str(), r.per_sample_acc, r.per_session_acc, r.per_user_acc);
  return 0;
}

}  // namespace

int cmd_sweep(const std::string& config_path, const std::string& out_dir, int jobs) {
  const RunConfig cfg = parse_run_config(config_path);
  return cfg.train.wide ? sweep_with<double>(cfg, config_path, out_dir, jobs)
                        : sweep_with<float>(cfg, config_path, out_dir, jobs);
}

}  // namespace reid
