#pragma once

/// Deterministic synthetic telemetry: sinusoid-mixture motion with per-user
/// posture offsets and oscillation parameters, distinguishable enough for
/// desk-scale identification experiments.

#include <array>
#include <cstdint>
#include <vector>

#include "reid/recording.hpp"

namespace reid {

struct SinComponent {
  double freq = 1.0;   // Hz, drawn on a 0.25 Hz grid in [0.5, 4]
  double amp = 0.1;    // meters (positions) or radians (rotations)
  double phase = 0.0;  // radians
};

using Oscillator = std::vector<SinComponent>;  // 2-4 components

struct UserProfile {
  std::uint64_t seed = 0;
  // Positional oscillators: left xyz then right xyz.
  std::array<Oscillator, 6> hand_osc;
  // Rotational oscillators (Euler angle sinusoids): left xyz then right xyz.
  std::array<Oscillator, 6> rot_osc;
  // Head pitch sway on top of the yaw orientation.
  Oscillator head_pitch_osc;
  Vec3 left_rest = Vec3::Zero();   // resting hand position relative to head
  Vec3 right_rest = Vec3::Zero();
  double head_height = 1.7;        // meters
  double bob_amp = 0.02, bob_freq = 1.0;
  double yaw_drift_rate = 0.0;     // rad/s
  double jitter_scale = 0.002;     // meters, per-frame positional jitter
};

/// Deterministic profile from a seed; distinct seeds give distinct draws.
UserProfile generate_profile(std::uint64_t seed);

/// One session of synthetic telemetry. Frame times are exact multiples of
/// 1/fps; sessions from the same profile differ by phase offsets and jitter
/// drawn from session_seed. Output passes ingest validation.
Recording generate_recording(const UserProfile& profile, double duration_s, double fps,
                             std::uint64_t session_seed);

}  // namespace reid
