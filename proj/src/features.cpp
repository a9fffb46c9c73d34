#include "reid/features.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "reid/errors.hpp"

namespace reid {

ChannelMask ChannelMask::all() {
  ChannelMask m;
  m.selected.fill(true);
  return m;
}

int ChannelMask::count() const {
  int n = 0;
  for (bool b : selected) n += b;
  return n;
}

std::vector<int> ChannelMask::indices() const {
  std::vector<int> idx;
  for (int i = 0; i < kBodyChannels; ++i)
    if (selected[i]) idx.push_back(i);
  return idx;
}

Recording resample(const Recording& rec, double fps) {
  if (fps <= 0.0) throw UsageError("resample: fps must be positive");
  if (rec.frames.size() < 2) throw DataError("resample: need at least 2 frames");

  Recording out;
  out.user_id = rec.user_id;
  out.session_id = rec.session_id;
  out.start_time = rec.start_time;
  out.nominal_fps = fps;

  const double t_last = rec.frames.back().t;
  std::size_t i = 0;  // rec.frames[i].t <= t < rec.frames[i+1].t
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) / fps;
    if (t > t_last + 1e-12) break;
    while (i + 2 < rec.frames.size() && rec.frames[i + 1].t <= t) ++i;
    const PoseFrame& a = rec.frames[i];
    const PoseFrame& b = rec.frames[i + 1];
    PoseFrame f;
    f.t = t;
    if (t <= a.t) {
      f = a;
      f.t = t;
    } else if (t >= b.t) {
      f = b;
      f.t = t;
    } else {
      const double u = (t - a.t) / (b.t - a.t);
      for (int obj = 0; obj < 3; ++obj) {
        f.object(obj).p = a.object(obj).p + u * (b.object(obj).p - a.object(obj).p);
        f.object(obj).q = slerp(a.object(obj).q, b.object(obj).q, u);
      }
    }
    out.frames.push_back(f);
  }
  return out;
}

std::pair<BodyFrame, double> to_body_relative(const PoseFrame& frame,
                                              std::optional<double> prev_yaw) {
  // Degraded telemetry (quantization) can carry off-unit quaternions; restore
  // the unit invariant before doing rotation algebra.
  const UnitQuat head_q = quat_normalize(frame.head.q.w, frame.head.q.x,
                                         frame.head.q.y, frame.head.q.z);
  const UnitQuat left_q = quat_normalize(frame.left.q.w, frame.left.q.x,
                                         frame.left.q.y, frame.left.q.z);
  const UnitQuat right_q = quat_normalize(frame.right.q.w, frame.right.q.x,
                                          frame.right.q.y, frame.right.q.z);

  const double phi = horizontal_yaw(head_q, prev_yaw);
  const UnitQuat derot = yaw_quat(-phi);

  const UnitQuat head_rot = quat_mul(derot, head_q);
  const Vec3 left_pos = rotate_vec(derot, frame.left.p - frame.head.p);
  const UnitQuat left_rot = quat_mul(derot, left_q);
  const Vec3 right_pos = rotate_vec(derot, frame.right.p - frame.head.p);
  const UnitQuat right_rot = quat_mul(derot, right_q);

  BodyFrame b;
  b << head_rot.w, head_rot.x, head_rot.y, head_rot.z,
      left_pos.x(), left_pos.y(), left_pos.z(),
      left_rot.w, left_rot.x, left_rot.y, left_rot.z,
      right_pos.x(), right_pos.y(), right_pos.z(),
      right_rot.w, right_rot.x, right_rot.y, right_rot.z;
  return {b, phi};
}

namespace {

// Quaternion sub-vectors inside a BodyFrame.
constexpr int kQuatOffsets[3] = {kHeadRot, kLeftRot, kRightRot};

void align_quats(const BodyFrame& prev, BodyFrame& cur) {
  for (int off : kQuatOffsets) {
    if (prev.segment<4>(off).dot(cur.segment<4>(off)) < 0.0)
      cur.segment<4>(off) = -cur.segment<4>(off);
  }
}

}  // namespace

std::vector<BodyFrame> body_relative_sequence(const Recording& rec) {
  std::vector<BodyFrame> out;
  out.reserve(rec.frames.size());
  std::optional<double> yaw;
  for (const PoseFrame& f : rec.frames) {
    auto [b, phi] = to_body_relative(f, yaw);
    yaw = phi;
    if (out.empty()) {
      // canonical double-cover sheet: w >= 0 per rotation channel (a yaw wrap
      // in the derotation can otherwise negate a whole channel)
      for (int off : kQuatOffsets)
        if (b[off] < 0.0) b.segment<4>(off) = -b.segment<4>(off);
    } else {
      align_quats(out.back(), b);
    }
    out.push_back(b);
  }
  return out;
}

Eigen::MatrixXd differentiate(const std::vector<BodyFrame>& frames, double fps) {
  const int n = static_cast<int>(frames.size());
  if (n < 3) throw DataError("differentiate: need at least 3 frames");

  Eigen::MatrixXd out(n, kFeatureChannels);
  Eigen::Matrix<double, kBodyChannels, 1> v_prev = BodyFrame::Zero();
  for (int t = 0; t < n; ++t) {
    BodyFrame v = t == 0 ? BodyFrame(BodyFrame::Zero())
                         : BodyFrame(((frames[t] - frames[t - 1]) * fps).eval());
    BodyFrame a = t == 0 ? BodyFrame(BodyFrame::Zero())
                         : BodyFrame(((v - v_prev) * fps).eval());
    out.row(t).head<kBodyChannels>() = v.transpose();
    out.row(t).tail<kBodyChannels>() = a.transpose();
    v_prev = v;
  }
  return out;
}

std::vector<FeatureWindow> windowize(const Eigen::MatrixXd& vectors, double fps,
                                     double window_seconds) {
  const double exact = window_seconds * fps;
  const long wlen = std::lround(exact);
  if (wlen < 1 || std::abs(exact - static_cast<double>(wlen)) > 1e-9)
    throw UsageError("windowize: window_seconds * fps must be a positive integer");

  std::vector<FeatureWindow> out;
  const long n = vectors.rows();
  for (long start = 0; start + wlen <= n; start += wlen) {
    FeatureWindow w;
    w.values = vectors.middleRows(start, wlen);
    out.push_back(std::move(w));
  }
  return out;
}

FeatureWindow apply_mask(const FeatureWindow& window, const ChannelMask& mask) {
  const std::vector<int> idx = mask.indices();
  if (idx.empty()) throw UsageError("apply_mask: mask selects no channel");
  if (window.values.cols() != kFeatureChannels)
    throw UsageError("apply_mask: window is not full-width");

  FeatureWindow out;
  out.label = window.label;
  out.user_id = window.user_id;
  out.session_id = window.session_id;
  out.values.resize(window.values.rows(), 2 * static_cast<int>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.values.col(static_cast<int>(j)) = window.values.col(idx[j]);
    out.values.col(static_cast<int>(idx.size() + j)) =
        window.values.col(kBodyChannels + idx[j]);
  }
  return out;
}

std::vector<FeatureWindow> featurize(const Recording& rec, double fps, int label,
                                     double window_seconds) {
  const std::vector<BodyFrame> body = body_relative_sequence(rec);
  if (body.size() < 3) return {};
  const Eigen::MatrixXd feats = differentiate(body, fps);
  std::vector<FeatureWindow> windows = windowize(feats, fps, window_seconds);
  for (FeatureWindow& w : windows) {
    w.label = label;
    w.user_id = rec.user_id;
    w.session_id = rec.session_id;
  }
  return windows;
}

void save_feature_cache(const std::vector<FeatureWindow>& windows,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write feature cache: " + path);
  const std::uint32_t count = static_cast<std::uint32_t>(windows.size());
  const std::uint32_t frames = count ? static_cast<std::uint32_t>(windows[0].values.rows()) : 0;
  const std::uint32_t channels = count ? static_cast<std::uint32_t>(windows[0].values.cols()) : 0;
  out.write("RWF1", 4);
  out.write(reinterpret_cast<const char*>(&count), 4);
  out.write(reinterpret_cast<const char*>(&frames), 4);
  out.write(reinterpret_cast<const char*>(&channels), 4);
  for (const FeatureWindow& w : windows) {
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m =
        w.values.cast<float>();
    out.write(reinterpret_cast<const char*>(m.data()),
              static_cast<std::streamsize>(sizeof(float) * m.size()));
  }
}

std::vector<FeatureWindow> load_feature_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open feature cache: " + path);
  char magic[4];
  std::uint32_t count = 0, frames = 0, channels = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&count), 4);
  in.read(reinterpret_cast<char*>(&frames), 4);
  in.read(reinterpret_cast<char*>(&channels), 4);
  if (!in || std::memcmp(magic, "RWF1", 4) != 0)
    throw DataError("bad feature cache header: " + path);
  std::vector<FeatureWindow> out(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(frames,
                                                                            channels);
    in.read(reinterpret_cast<char*>(m.data()),
            static_cast<std::streamsize>(sizeof(float) * m.size()));
    if (!in) throw DataError("truncated feature cache: " + path);
    out[i].values = m.cast<double>();
  }
  return out;
}

}  // namespace reid
