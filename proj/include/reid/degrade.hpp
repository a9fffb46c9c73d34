#pragma once

/// Signal degradation operators: Gaussian noise, framerate subsampling,
/// precision reduction, dimensionality presets.

#include <cstdint>
#include <string>

#include "reid/features.hpp"
#include "reid/recording.hpp"

namespace reid {

enum class DegradationKind {
  kNone,
  kGaussianNoise,     // parameter = sigma, meters
  kReducedFps,        // parameter = target fps
  kReducedPrecision,  // parameter = rounding step, meters
  kReducedDims,       // preset = dimension preset name
};

struct DegradationSpec {
  DegradationKind kind = DegradationKind::kNone;
  double parameter = 0.0;
  std::string preset;  // reduced_dims only

  /// True when the operator is a bit-exact identity (sigma=0, fps=30,
  /// preset=all, or kind=none).
  bool is_neutral() const;
  std::string kind_name() const;
  /// Parameter (or preset name) as printed in sweep CSV output.
  std::string parameter_label() const;
};

DegradationKind degradation_kind_from_name(const std::string& name);

/// Independent zero-mean Gaussian noise of stddev sigma on every one of the
/// 21 raw scalars of every frame; quaternions re-normalized afterwards.
/// A noisy quaternion whose norm falls below 1e-6 has its noise redrawn
/// (bounded retries). Deterministic in (rec, sigma, seed).
Recording add_noise(const Recording& rec, double sigma, std::uint64_t seed);

/// Keep every (30/target_fps)-th frame starting at t=0. Input must be sampled
/// at 30 fps; target must divide 30. Retained frames are bit-identical.
Recording subsample_fps(const Recording& rec, int target_fps);

/// Round every raw scalar to the nearest multiple of step
/// (half away from zero). Idempotent: quaternion components stay on the
/// rounding grid (unit norm is restored downstream by the feature pipeline);
/// all-zero quaternions are replaced by the identity and counted in
/// *collapsed_quats when given.
Recording quantize(const Recording& rec, double step, int* collapsed_quats = nullptr);

/// The five nested dimension presets over the 18 body-relative channels:
///   all (18), hands_only (14), hand_rotations_only (8),
///   left_rotation_only (4), left_rotation_w_only (1).
ChannelMask preset_mask(const std::string& name);

/// Per-recording noise seed: FNV-1a over (global seed, user id, session id).
std::uint64_t derive_seed(std::uint64_t global_seed, const std::string& user_id,
                          const std::string& session_id);

}  // namespace reid
