#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace jointcanvas {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

// Proper rigid transform (rotation + translation). R is kept orthonormal by
// construction; compose/inverse never renormalize.
struct RigidTransform {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();

  static RigidTransform identity() { return {}; }

  static RigidTransform from_translation(const Vec3& t) {
    return {Mat3::Identity(), t};
  }

  static RigidTransform from_rotation(const Mat3& R) { return {R, Vec3::Zero()}; }

  Vec3 apply(const Vec3& p) const { return R * p + t; }

  RigidTransform operator*(const RigidTransform& o) const {
    return {R * o.R, R * o.t + t};
  }

  RigidTransform inverse() const {
    Mat3 Rt = R.transpose();
    return {Rt, -(Rt * t)};
  }

  Mat4 matrix() const {
    Mat4 m = Mat4::Identity();
    m.topLeftCorner<3, 3>() = R;
    m.topRightCorner<3, 1>() = t;
    return m;
  }
};

// Wraps an angle to (-pi, pi]. Exactly -pi maps to +pi.
double wrap_to_pi(double angle);

// Deterministic unit vector perpendicular to `axis`. Used as the zero-phase
// reference for sphere stripe fields; the renderer and the decoder must agree
// on it, so both call this.
Vec3 canonical_perpendicular(const Vec3& axis);

// Rodrigues rotation of v about a unit axis.
Vec3 rotate_about_axis(const Vec3& v, const Vec3& unit_axis, double angle);

// Camera-style look-at: +z toward `target`, +x to the right, +y down.
// `from` and `target` must not coincide.
RigidTransform look_at(const Vec3& from, const Vec3& target);

}  // namespace jointcanvas
