#include "reid/degrade.hpp"

#include <cmath>
#include <random>

#include "reid/errors.hpp"

namespace reid {

bool DegradationSpec::is_neutral() const {
  switch (kind) {
    case DegradationKind::kNone: return true;
    case DegradationKind::kGaussianNoise: return parameter == 0.0;
    case DegradationKind::kReducedFps: return parameter == 30.0;
    case DegradationKind::kReducedPrecision: return false;
    case DegradationKind::kReducedDims: return preset == "all";
  }
  return false;
}

std::string DegradationSpec::kind_name() const {
  switch (kind) {
    case DegradationKind::kNone: return "none";
    case DegradationKind::kGaussianNoise: return "gaussian_noise";
    case DegradationKind::kReducedFps: return "reduced_fps";
    case DegradationKind::kReducedPrecision: return "reduced_precision";
    case DegradationKind::kReducedDims: return "reduced_dims";
  }
  return "?";
}

std::string DegradationSpec::parameter_label() const {
  if (kind == DegradationKind::kReducedDims) return preset;
  if (kind == DegradationKind::kNone) return "0";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", parameter);
  return buf;
}

DegradationKind degradation_kind_from_name(const std::string& name) {
  if (name == "none") return DegradationKind::kNone;
  if (name == "gaussian_noise") return DegradationKind::kGaussianNoise;
  if (name == "reduced_fps") return DegradationKind::kReducedFps;
  if (name == "reduced_precision") return DegradationKind::kReducedPrecision;
  if (name == "reduced_dims") return DegradationKind::kReducedDims;
  throw UsageError("unknown degradation kind: " + name);
}

Recording add_noise(const Recording& rec, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw UsageError("add_noise: sigma must be >= 0");
  if (sigma == 0.0) return rec;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, sigma);

  Recording out = rec;
  for (PoseFrame& f : out.frames) {
    for (int obj = 0; obj < 3; ++obj) {
      Pose& pose = f.object(obj);
      for (int i = 0; i < 3; ++i) pose.p[i] += dist(rng);
      const UnitQuat clean = pose.q;
      bool ok = false;
      for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
        const double w = clean.w + dist(rng), x = clean.x + dist(rng),
                     y = clean.y + dist(rng), z = clean.z + dist(rng);
        const double n = std::sqrt(w * w + x * x + y * y + z * z);
        if (n >= 1e-6) {
          pose.q = {w / n, x / n, y / n, z / n};
          ok = true;
        }
      }
      if (!ok) throw NumericError("add_noise: degenerate noisy quaternion after retries");
    }
  }
  return out;
}

Recording subsample_fps(const Recording& rec, int target_fps) {
  if (target_fps <= 0 || 30 % target_fps != 0)
    throw UsageError("subsample_fps: target must divide 30");
  const int stride = 30 / target_fps;
  Recording out = rec;
  out.nominal_fps = target_fps;
  out.frames.clear();
  for (std::size_t i = 0; i < rec.frames.size(); i += stride)
    out.frames.push_back(rec.frames[i]);
  return out;
}

namespace {

double round_step(double v, double step) {
  // half away from zero
  return std::round(v / step) * step;
}

}  // namespace

Recording quantize(const Recording& rec, double step, int* collapsed_quats) {
  if (step <= 0.0) throw UsageError("quantize: step must be positive");
  int collapsed = 0;
  Recording out = rec;
  for (PoseFrame& f : out.frames) {
    for (int obj = 0; obj < 3; ++obj) {
      Pose& pose = f.object(obj);
      for (int i = 0; i < 3; ++i) pose.p[i] = round_step(pose.p[i], step);
      const double w = round_step(pose.q.w, step), x = round_step(pose.q.x, step),
                   y = round_step(pose.q.y, step), z = round_step(pose.q.z, step);
      const double n = std::sqrt(w * w + x * x + y * y + z * z);
      if (n < 1e-12) {
        pose.q = UnitQuat{};  // collapsed to identity, reported to the caller
        ++collapsed;
      } else {
        // Components stay on the rounding grid (renormalizing here would move
        // them off-grid and break idempotence); the feature pipeline restores
        // unit norm before using the rotation.
        pose.q = {w, x, y, z};
      }
    }
  }
  if (collapsed_quats) *collapsed_quats = collapsed;
  return out;
}

ChannelMask preset_mask(const std::string& name) {
  ChannelMask m;
  m.selected.fill(false);
  auto select = [&](int off, int n) {
    for (int i = 0; i < n; ++i) m.selected[off + i] = true;
  };
  if (name == "all") {
    m.selected.fill(true);
  } else if (name == "hands_only") {
    select(kLeftPos, 3);
    select(kLeftRot, 4);
    select(kRightPos, 3);
    select(kRightRot, 4);
  } else if (name == "hand_rotations_only") {
    select(kLeftRot, 4);
    select(kRightRot, 4);
  } else if (name == "left_rotation_only") {
    select(kLeftRot, 4);
  } else if (name == "left_rotation_w_only") {
    m.selected[kLeftRot] = true;
  } else {
    throw UsageError("unknown dimension preset: " + name);
  }
  return m;
}

std::uint64_t derive_seed(std::uint64_t global_seed, const std::string& user_id,
                          const std::string& session_id) {
  // FNV-1a 64-bit over the little-endian global seed, user id, NUL, session id.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](unsigned char b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(global_seed >> (8 * i)));
  for (char c : user_id) mix(static_cast<unsigned char>(c));
  mix(0);
  for (char c : session_id) mix(static_cast<unsigned char>(c));
  return h;
}

}  // namespace reid
