#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reid/geometry.hpp"

namespace reid {

/// Position + orientation of one tracked object.
struct Pose {
  Vec3 p = Vec3::Zero();
  UnitQuat q;
};

/// One timestamped telemetry sample: head and both hand controllers.
/// 21 raw scalars per frame (3x position, 3x quaternion).
struct PoseFrame {
  double t = 0.0;  // seconds since recording start
  Pose head, left, right;

  Pose& object(int i) { return i == 0 ? head : (i == 1 ? left : right); }
  const Pose& object(int i) const { return i == 0 ? head : (i == 1 ? left : right); }
};

/// One session of one user. Frames strictly increasing in t, at least 2.
struct Recording {
  std::string user_id;
  std::string session_id;
  std::int64_t start_time = 0;  // epoch seconds, used only for chronological sort
  double nominal_fps = 0.0;
  std::vector<PoseFrame> frames;
};

}  // namespace reid
