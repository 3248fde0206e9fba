#include "jointcanvas/geometry.hpp"

#include <numbers>

namespace jointcanvas {

double wrap_to_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(angle, two_pi);  // in [-pi, pi]
  if (w <= -std::numbers::pi) w = std::numbers::pi;
  return w;
}

Vec3 canonical_perpendicular(const Vec3& axis) {
  Vec3 a = axis.normalized();
  // Prefer the world-z cross product; fall back to world-x near the poles.
  Vec3 ref = std::abs(a.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  return a.cross(ref).normalized();
}

Vec3 rotate_about_axis(const Vec3& v, const Vec3& unit_axis, double angle) {
  return Eigen::AngleAxisd(angle, unit_axis) * v;
}

RigidTransform look_at(const Vec3& from, const Vec3& target) {
  Vec3 forward = (target - from).normalized();
  Vec3 up = Vec3::UnitZ();
  Vec3 right = forward.cross(up);
  if (right.norm() < 1e-9) {
    // Looking straight up/down: fall back to world x as the right direction.
    right = Vec3::UnitX();
  }
  right.normalize();
  Vec3 down = forward.cross(right).normalized();
  RigidTransform pose;
  pose.R.col(0) = right;
  pose.R.col(1) = down;
  pose.R.col(2) = forward;
  pose.t = from;
  return pose;
}

}  // namespace jointcanvas
