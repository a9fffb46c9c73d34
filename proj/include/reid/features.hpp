#pragma once

/// Feature pipeline: fixed-rate resampling, body-relative transform
/// (21 -> 18 channels), first and second derivatives (18 -> 36 channels),
/// 30-second windows.

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "reid/recording.hpp"

namespace reid {

inline constexpr int kBodyChannels = 18;
inline constexpr int kFeatureChannels = 2 * kBodyChannels;

/// Channel layout of the 18 body-relative values, fixed:
///   0..3   head rotation quaternion (w,x,y,z), yaw-derotated
///   4..6   left hand position, meters, relative to head, yaw-derotated
///   7..10  left hand rotation quaternion
///   11..13 right hand position
///   14..17 right hand rotation quaternion
using BodyFrame = Eigen::Matrix<double, kBodyChannels, 1>;

enum BodyChannel : int {
  kHeadRot = 0,
  kLeftPos = 4,
  kLeftRot = 7,
  kRightPos = 11,
  kRightRot = 14,
};

/// Selection over the 18 body-relative channels.
struct ChannelMask {
  std::array<bool, kBodyChannels> selected;

  static ChannelMask all();
  int count() const;
  std::vector<int> indices() const;
};

/// One model input: (frames x 36) matrix. Columns 0..17 are per-channel first
/// derivatives ("body-relative velocity"), 18..35 second derivatives
/// ("body-relative acceleration"). Under a channel mask the width shrinks to
/// 2 x selected.
struct FeatureWindow {
  Eigen::MatrixXd values;  // frames x channels, row = one timestep
  int label = -1;          // user index
  std::string user_id;
  std::string session_id;
};

/// Resample to a constant framerate: output frames at t = 0, 1/fps, 2/fps, ...
/// up to the last input timestamp; positions linearly interpolated,
/// orientations slerped between the bracketing input frames. Never
/// extrapolates past the last frame.
Recording resample(const Recording& rec, double fps);

/// Body-relative transform of one frame. phi = horizontal yaw of the head;
/// hand positions are taken relative to the head position and derotated by
/// -phi about the vertical axis; the head orientation is composed with the
/// same derotation. Head position drops out entirely.
/// Returns the BodyFrame and the yaw used (input to the next frame's call).
std::pair<BodyFrame, double> to_body_relative(const PoseFrame& frame,
                                              std::optional<double> prev_yaw = {});

/// Whole-recording body-relative transform with yaw continuity and
/// hemisphere alignment of consecutive output quaternions.
std::vector<BodyFrame> body_relative_sequence(const Recording& rec);

/// Backward differences scaled by fps: v_t = (c_t - c_{t-1})*fps with v_0 = 0,
/// a_t = (v_t - v_{t-1})*fps with a_0 = 0. Output shape (n x 36).
Eigen::MatrixXd differentiate(const std::vector<BodyFrame>& frames, double fps);

/// Cut consecutive non-overlapping windows of exactly window_seconds*fps
/// frames; a trailing remainder is discarded. May return an empty list.
std::vector<FeatureWindow> windowize(const Eigen::MatrixXd& vectors, double fps,
                                     double window_seconds = 30.0);

/// Drop unselected channels from both the velocity and the acceleration half.
FeatureWindow apply_mask(const FeatureWindow& window, const ChannelMask& mask);

/// Full pipeline for one recording already at the target framerate:
/// body-relative transform, derivatives, windows. Labels/session metadata
/// filled from the recording.
std::vector<FeatureWindow> featurize(const Recording& rec, double fps, int label,
                                     double window_seconds = 30.0);

/// Feature cache: little-endian binary, header "RWF1" + u32 window count,
/// u32 frames, u32 channels, then window data as float32 row-major.
void save_feature_cache(const std::vector<FeatureWindow>& windows,
                        const std::string& path);
std::vector<FeatureWindow> load_feature_cache(const std::string& path);

}  // namespace reid
