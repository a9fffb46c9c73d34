#pragma once

/// Foundational geometry for VR pose telemetry.
///
/// Conventions, fixed once for the whole project:
///   - right-handed coordinates, y is up
///   - forward direction of the identity orientation is -z
///   - quaternions are scalar-first (w, x, y, z) everywhere, including on disk

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <optional>

#include "reid/errors.hpp"

namespace reid {

using Vec3 = Eigen::Vector3d;

/// Unit quaternion, scalar-first. Invariant: w^2+x^2+y^2+z^2 = 1 within 1e-9.
struct UnitQuat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  double dot(const UnitQuat& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  UnitQuat negated() const { return {-w, -x, -y, -z}; }

  Eigen::Quaterniond eigen() const { return Eigen::Quaterniond(w, x, y, z); }

  bool operator==(const UnitQuat&) const = default;
};

/// Normalize an arbitrary quadruple into a UnitQuat.
/// Throws NumericError if the norm is below 1e-12.
inline UnitQuat quat_normalize(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (n < 1e-12) throw NumericError("degenerate quaternion: norm below 1e-12");
  return {w / n, x / n, y / n, z / n};
}

/// Hamilton product a*b.
inline UnitQuat quat_mul(const UnitQuat& a, const UnitQuat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

/// Pick cur or -cur, whichever lies in the same hemisphere as prev.
inline UnitQuat hemisphere_align(const UnitQuat& prev, const UnitQuat& cur) {
  return prev.dot(cur) < 0.0 ? cur.negated() : cur;
}

/// Rotate v by q. Norm preserving.
inline Vec3 rotate_vec(const UnitQuat& q, const Vec3& v) { return q.eigen() * v; }

/// Spherical linear interpolation from a to (hemisphere-aligned) b, u in [0,1].
/// Falls back to normalized linear interpolation when the endpoints are nearly
/// parallel (|dot| > 1 - 1e-9).
inline UnitQuat slerp(const UnitQuat& a, const UnitQuat& bin, double u) {
  UnitQuat b = hemisphere_align(a, bin);
  double d = a.dot(b);
  if (d > 1.0 - 1e-9) {
    return quat_normalize(a.w + u * (b.w - a.w), a.x + u * (b.x - a.x),
                          a.y + u * (b.y - a.y), a.z + u * (b.z - a.z));
  }
  const double theta = std::acos(std::min(d, 1.0));
  const double s = std::sin(theta);
  const double ca = std::sin((1.0 - u) * theta) / s;
  const double cb = std::sin(u * theta) / s;
  return quat_normalize(ca * a.w + cb * b.w, ca * a.x + cb * b.x,
                        ca * a.y + cb * b.y, ca * a.z + cb * b.z);
}

/// Rotation by angle (radians) about the vertical (y) axis.
inline UnitQuat yaw_quat(double angle) {
  return {std::cos(angle / 2.0), 0.0, std::sin(angle / 2.0), 0.0};
}

/// Yaw of the head's forward direction (-z rotated by q) projected onto the
/// horizontal plane. When the forward direction is within 1e-6 of vertical the
/// previous yaw is held (0 if none).
inline double horizontal_yaw(const UnitQuat& q, std::optional<double> prev_yaw = {}) {
  const Vec3 f = rotate_vec(q, Vec3(0.0, 0.0, -1.0));
  if (std::hypot(f.x(), f.z()) < 1e-6) return prev_yaw.value_or(0.0);
  return std::atan2(-f.x(), -f.z());
}

/// Angle of the rotation carrying a to b, in [0, pi], double cover folded.
inline double quat_angle(const UnitQuat& a, const UnitQuat& b) {
  const double d = std::min(1.0, std::abs(a.dot(b)));
  return 2.0 * std::acos(d);
}

}  // namespace reid
