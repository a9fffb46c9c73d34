// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Criteria are verified against independent oracles
// (rotation matrices, finite differences, brute-force recounts) rather than
// against the implementation under test.

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "reid/cli.hpp"
#include "reid/degrade.hpp"
#include "reid/eval.hpp"
#include "reid/features.hpp"
#include "reid/geometry.hpp"
#include "reid/model.hpp"
#include "reid/sweep.hpp"
#include "reid/synthgen.hpp"

using namespace reid;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.141592653589793;

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s — %s\n", criterion, ok ? "PASS" : "FAIL",
              detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), format, a, b);
  return buf;
}

UnitQuat random_quat(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return quat_normalize(n(rng), n(rng), n(rng), n(rng));
}

Recording random_rec(std::mt19937_64& rng, int n_frames) {
  std::normal_distribution<double> n(0.0, 0.5);
  Recording r;
  r.user_id = "u";
  r.session_id = "s";
  r.nominal_fps = 30;
  for (int i = 0; i < n_frames; ++i) {
    PoseFrame f;
    f.t = i / 30.0;
    for (int obj = 0; obj < 3; ++obj) {
      f.object(obj).p = Vec3(n(rng), 1.5 + n(rng), n(rng));
      f.object(obj).q = random_quat(rng);
    }
    r.frames.push_back(f);
  }
  return r;
}

bool frames_identical(const Recording& a, const Recording& b) {
  if (a.frames.size() != b.frames.size()) return false;
  for (std::size_t i = 0; i < a.frames.size(); ++i)
    for (int obj = 0; obj < 3; ++obj) {
      if (a.frames[i].object(obj).p != b.frames[i].object(obj).p) return false;
      if (!(a.frames[i].object(obj).q == b.frames[i].object(obj).q)) return false;
    }
  return true;
}

Eigen::Matrix3d to_matrix(const UnitQuat& q) {
  return Eigen::Quaterniond(q.w, q.x, q.y, q.z).toRotationMatrix();
}

FeatureWindow random_window(std::mt19937_64& rng, int frames, int width, int label) {
  std::normal_distribution<double> n(0.0, 1.0);
  FeatureWindow w;
  w.values.resize(frames, width);
  for (int t = 0; t < frames; ++t)
    for (int c = 0; c < width; ++c) w.values(t, c) = n(rng);
  w.label = label;
  w.user_id = "u" + std::to_string(label);
  w.session_id = "s";
  return w;
}

// 1. Analytic BPTT gradients match central finite differences.
void criterion_gradients() {
  std::mt19937_64 rng(47);
  FunnelShape shape{6, 5, 4, {8, 4}};
  FunnelModel<double> m = init_model<double>(shape, 13);
  m.norm_mean.setConstant(0.1);
  m.norm_std.setConstant(1.3);

  std::vector<FeatureWindow> windows;
  for (int i = 0; i < 4; ++i) windows.push_back(random_window(rng, 5, 6, i));
  std::vector<const FeatureWindow*> batch;
  for (const auto& w : windows) batch.push_back(&w);

  const auto [loss, grads] = loss_and_gradients(m, batch);
  const double eps = 1e-5;
  double max_rel = 0.0;
  for (long k = 0; k < m.params.size(); ++k) {
    FunnelModel<double> mp = m, mm = m;
    mp.params[k] += eps;
    mm.params[k] -= eps;
    const double fd =
        (loss_and_gradients(mp, batch).first - loss_and_gradients(mm, batch).first) /
        (2 * eps);
    max_rel = std::max(max_rel,
                       std::abs(fd - grads[k]) / std::max(1.0, std::abs(grads[k])));
  }
  report(1, std::isfinite(loss) && max_rel < 1e-5,
         fmt("recurrent-stack gradients vs central finite differences, "
             "max relative error %.3g (bound 1e-5)",
             max_rel));
}

// 2. Body-relative features are invariant to global yaw + translation.
void criterion_invariance() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::normal_distribution<double> n(0.0, 2.0);

  const Recording rec = random_rec(rng, 1000);
  const double half = ang(rng) / 2.0;
  const UnitQuat rot{std::cos(half), 0.0, std::sin(half), 0.0};
  const Vec3 shift(n(rng), n(rng), n(rng));
  Recording moved = rec;
  for (PoseFrame& f : moved.frames)
    for (int obj = 0; obj < 3; ++obj) {
      f.object(obj).p = rotate_vec(rot, f.object(obj).p) + shift;
      f.object(obj).q = quat_mul(rot, f.object(obj).q);
    }
  const std::vector<BodyFrame> a = body_relative_sequence(rec);
  const std::vector<BodyFrame> b = body_relative_sequence(moved);
  double max_err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    max_err = std::max(max_err, (a[i] - b[i]).cwiseAbs().maxCoeff());
  report(2, a.size() == 1000 && max_err < 1e-9,
         fmt("body-relative transform under a global yaw + translation over "
             "1000 frames, max deviation %.3g (bound 1e-9)",
             max_err));
}

// 3. slerp matches a rotation-matrix axis-angle oracle.
void criterion_slerp() {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uu(0.0, 1.0);
  double max_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const UnitQuat qa = random_quat(rng), qb = random_quat(rng);
    const double u = uu(rng);
    const Eigen::Matrix3d Ra = to_matrix(qa), Rb = to_matrix(qb);
    const Eigen::AngleAxisd rel(Ra.transpose() * Rb);
    const Eigen::Matrix3d oracle =
        Ra * Eigen::AngleAxisd(u * rel.angle(), rel.axis()).toRotationMatrix();
    const Eigen::Matrix3d ours = to_matrix(slerp(qa, qb, u));
    max_err = std::max(max_err, (ours - oracle).cwiseAbs().maxCoeff());
  }
  report(3, max_err < 1e-9,
         fmt("spherical interpolation vs rotation-matrix axis-angle oracle, "
             "100 pairs, max matrix deviation %.3g (bound 1e-9)",
             max_err));
}

// 4. Neutral degradations are bit-exact; quantization is idempotent.
void criterion_degradations() {
  std::mt19937_64 rng(31);
  bool neutral_ok = true, idem_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const Recording rec = random_rec(rng, 45);
    neutral_ok = neutral_ok && frames_identical(add_noise(rec, 0.0, trial), rec) &&
                 frames_identical(subsample_fps(rec, 30), rec);
    for (double step : {0.0001, 0.001, 0.01, 0.1, 1.0}) {
      const Recording once = quantize(rec, step);
      idem_ok = idem_ok && frames_identical(once, quantize(once, step));
    }
  }
  neutral_ok = neutral_ok && preset_mask("all").count() == kBodyChannels;
  report(4, neutral_ok && idem_ok,
         std::string("neutral noise/framerate are bit-exact identities (") +
             (neutral_ok ? "yes" : "no") +
             "), quantization idempotent over 100 recordings x 5 steps (" +
             (idem_ok ? "yes" : "no") + ")");
}

Dataset desk_dataset() {
  const std::uint64_t seed = 2024;
  std::vector<Recording> recs;
  char name[32];
  for (int u = 0; u < 8; ++u) {
    const UserProfile profile = generate_profile(seed + static_cast<std::uint64_t>(u));
    for (int s = 0; s < 12; ++s) {
      std::snprintf(name, sizeof(name), "user%03d", u);
      const std::string user_id = name;
      std::snprintf(name, sizeof(name), "session%03d", s);
      const std::string session_id = name;
      Recording rec = generate_recording(profile, 60.0, 30.0,
                                         derive_seed(seed, user_id, session_id));
      rec.user_id = user_id;
      rec.session_id = session_id;
      rec.start_time = s;
      recs.push_back(std::move(rec));
    }
  }
  return build_dataset(std::move(recs), SplitConfig{8, 2, 2});
}

// 5 and 6 share the desk-scale dataset and training configuration.
void criteria_desk_scale() {
  const auto t0 = std::chrono::steady_clock::now();
  const Dataset ds = desk_dataset();

  TrainConfig cfg;
  cfg.epochs = 30;
  cfg.hidden = {32, 16};
  cfg.seed = 2;
  cfg.learning_rate = 0.002;
  cfg.batch_size = 4;

  DegradationSpec none;
  const ConditionData base = build_condition_data(ds, none, cfg.seed);
  FunnelModel<double> model = train<double>(base.train, base.val, 8, cfg);
  const std::vector<WindowScore> base_scores = score_windows(model, base.test);
  const double base_sample = per_sample_accuracy(base_scores);
  const double session_acc = per_session_accuracy(base_scores);
  const double user_acc = per_user_accuracy(base_scores);

  const double minutes =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
      60.0;
  report(5,
         session_acc >= 0.9 && user_acc == 1.0 && minutes <= 10.0,
         fmt("desk-scale run (8 users x 12 sessions, 60 s at 30 fps): "
             "per-session accuracy %.4f (need >= 0.9), per-user %.4f (need 1.0)",
             session_acc, user_acc) +
             fmt(", %.1f min (budget 10)", minutes));

  // same trained model, test recordings quantized at 0.1 mm
  std::vector<int> test_idx;
  for (const std::string& user : ds.user_ids) {
    const UserSplit& s = ds.splits.at(user);
    test_idx.insert(test_idx.end(), s.test.begin(), s.test.end());
  }
  const DegradationSpec quant{DegradationKind::kReducedPrecision, 0.0001, ""};
  const std::vector<FeatureWindow> qw = condition_windows(ds, test_idx, quant, cfg.seed);
  const double q_sample = per_sample_accuracy(score_windows(model, qw));
  report(6, std::abs(q_sample - base_sample) <= 0.01,
         fmt("0.1 mm quantization: per-sample accuracy %.4f vs baseline %.4f "
             "(within 1 percentage point)",
             q_sample, base_sample));
}

// 7. Window geometry: 900x36 full windows; masked widths 36/28/16/8/2.
void criterion_windows() {
  const UserProfile p = generate_profile(77);
  const Recording rec = generate_recording(p, 65.0, 30.0, 5);
  const std::vector<FeatureWindow> windows = featurize(resample(rec, 30.0), 30.0, 0);
  bool ok = windows.size() == 2;
  for (const FeatureWindow& w : windows)
    ok = ok && w.values.rows() == 900 && w.values.cols() == 36;

  const char* presets[] = {"all", "hands_only", "hand_rotations_only",
                           "left_rotation_only", "left_rotation_w_only"};
  const long widths[] = {36, 28, 16, 8, 2};
  std::string seen;
  for (int i = 0; ok && i < 5; ++i) {
    const FeatureWindow masked = apply_mask(windows[0], preset_mask(presets[i]));
    ok = ok && masked.values.cols() == widths[i] && masked.values.rows() == 900;
    seen += (i ? "/" : "") + std::to_string(masked.values.cols());
  }
  report(7, ok,
         "windows are 900 frames x 36 channels; masked widths " +
             (seen.empty() ? std::string("unavailable") : seen) +
             " (expect 36/28/16/8/2)");
}

// 8. Session classification matches a brute-force recount oracle.
void criterion_session_oracle() {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> n(0.0, 1.0);
  bool ok = true;
  for (int trial = 0; trial < 50 && ok; ++trial) {
    const int users = 2 + trial % 6;
    const int count = 1 + trial % 7;
    std::vector<WindowScore> scores;
    for (int w = 0; w < count; ++w) {
      Eigen::VectorXd logits(users);
      for (int k = 0; k < users; ++k) logits[k] = n(rng);
      const double mx = logits.maxCoeff();
      WindowScore s;
      s.logprob = logits.array() - (mx + std::log((logits.array() - mx).exp().sum()));
      s.label = trial % users;
      s.user_id = "u";
      s.session_id = "s";
      scores.push_back(std::move(s));
    }
    // oracle: plain accumulation + first-maximum scan
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(users);
    for (const WindowScore& s : scores) sum += s.logprob;
    int arg = 0;
    for (int k = 1; k < users; ++k)
      if (sum[k] > sum[arg]) arg = k;

    const SessionPrediction pred = classify_session(scores);
    ok = ok && pred.predicted == arg && pred.window_count == count;

    std::shuffle(scores.begin(), scores.end(), rng);
    ok = ok && classify_session(scores).predicted == arg;
  }
  report(8, ok,
         "session classification vs brute-force log-probability recount, "
         "50 randomized cases incl. window-order permutations");
}

// 9. Sweep reruns are byte-identical in wide precision.
void criterion_reproducibility() {
  const fs::path root = fs::temp_directory_path() / "reid_acceptance_sweep";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path data = root / "data";
  cmd_synthgen(2, 5, 31.0, 30.0, 17, data.string());
  {
    std::ofstream cfg(root / "sweep.cfg");
    cfg << "data_dir=" << data.string() << "\n"
        << "train=3\nval=1\ntest=1\n"
        << "epochs=2\nbatch=4\nhidden=8\nseed=21\nprecision=wide\n"
        << "quantize=0.01\n";
  }
  const fs::path out1 = root / "out1", out2 = root / "out2";
  cmd_sweep((root / "sweep.cfg").string(), out1.string(), 2);
  cmd_sweep((root / "sweep.cfg").string(), out2.string(), 1);

  auto bytes = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string csv1 = bytes(out1 / "sweep.csv");
  const bool ok = !csv1.empty() && csv1 == bytes(out2 / "sweep.csv") &&
                  bytes(out1 / "model_none.ckpt") == bytes(out2 / "model_none.ckpt");
  report(9, ok,
         "wide-precision sweep rerun (different job counts) produces "
         "byte-identical results and checkpoints");
}

}  // namespace

int main() {
  criterion_gradients();
  criterion_invariance();
  criterion_slerp();
  criterion_degradations();
  criteria_desk_scale();
  criterion_windows();
  criterion_session_oracle();
  criterion_reproducibility();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
