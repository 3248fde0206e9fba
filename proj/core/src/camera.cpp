#include "jointcanvas/camera.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>

#include "jointcanvas/errors.hpp"
#include "jointcanvas/rng.hpp"

namespace jointcanvas {

const std::string& view_name_string(ViewName v) {
  static const std::array<std::string, kNumViews> names = {
      "front", "wrist", "left_shoulder", "right_shoulder"};
  return names[static_cast<int>(v)];
}

std::optional<ViewName> view_name_from_string(const std::string& s) {
  for (ViewName v : kViewOrder) {
    if (view_name_string(v) == s) return v;
  }
  return std::nullopt;
}

CameraRig CameraRig::default_rig() {
  CameraRig rig;
  for (auto& i : rig.intrinsics) i = Intrinsics{};
  // Front camera across the table; shoulder cameras behind the base at
  // roughly +-45 degrees, raised and looking down at the workspace.
  rig.mounts[static_cast<int>(ViewName::Front)] = {
      look_at(Vec3(1.50, 0.0, 0.90), Vec3(0.40, 0.0, 0.22)), false};
  rig.mounts[static_cast<int>(ViewName::LeftShoulder)] = {
      look_at(Vec3(-0.45, 0.85, 1.05), Vec3(0.40, -0.05, 0.30)), false};
  rig.mounts[static_cast<int>(ViewName::RightShoulder)] = {
      look_at(Vec3(-0.45, -0.85, 1.05), Vec3(0.40, 0.05, 0.30)), false};
  // Wrist camera sits behind the gripper, pitched a little toward the hand's
  // work area; the mount is expressed in the end-effector frame.
  CameraMount wrist;
  wrist.ee_relative = true;
  wrist.pose.t = Vec3(0.0, -0.05, -0.22);
  wrist.pose.R = Eigen::AngleAxisd(-0.25, Vec3::UnitX()).toRotationMatrix();
  rig.mounts[static_cast<int>(ViewName::Wrist)] = wrist;
  return rig;
}

void CameraRig::validate() const {
  for (int i = 0; i < kNumViews; ++i) {
    const auto& in = intrinsics[i];
    if (in.fx <= 0 || in.fy <= 0 || in.width <= 0 || in.height <= 0) {
      throw ConfigError("invalid intrinsics for view " +
                        view_name_string(static_cast<ViewName>(i)));
    }
    if (sphere_radius_m[i] <= 0) {
      throw ConfigError("sphere radius must be positive for view " +
                        view_name_string(static_cast<ViewName>(i)));
    }
    if (mounts[i].ee_relative && static_cast<ViewName>(i) != ViewName::Wrist) {
      throw ConfigError("only the wrist camera may be EE-relative");
    }
  }
}

std::uint64_t CameraRig::hash() const {
  std::ostringstream os;
  os.precision(17);
  for (int i = 0; i < kNumViews; ++i) {
    const auto& in = intrinsics[i];
    os << in.fx << "," << in.fy << "," << in.cx << "," << in.cy << ","
       << in.width << "," << in.height << ";";
    const auto& m = mounts[i];
    os << m.ee_relative << ";";
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) os << m.pose.R(r, c) << ",";
    }
    os << m.pose.t.x() << "," << m.pose.t.y() << "," << m.pose.t.z() << ";";
    os << sphere_radius_m[i] << ";";
  }
  return fnv1a(os.str());
}

std::array<RigidTransform, kNumViews> rig_world_poses(
    const CameraRig& rig, const RigidTransform& ee_pose) {
  std::array<RigidTransform, kNumViews> poses;
  for (int i = 0; i < kNumViews; ++i) {
    const CameraMount& m = rig.mounts[i];
    poses[i] = m.ee_relative ? ee_pose * m.pose : m.pose;
  }
  return poses;
}

std::optional<Vec2> project(const RigidTransform& camera_pose,
                            const Intrinsics& intr, const Vec3& point) {
  const Vec3 pc = camera_pose.R.transpose() * (point - camera_pose.t);
  if (pc.z() <= 1e-6) return std::nullopt;
  return Vec2(intr.cx + intr.fx * pc.x() / pc.z(),
              intr.cy + intr.fy * pc.y() / pc.z());
}

Ray pixel_ray(const RigidTransform& camera_pose, const Intrinsics& intr,
              const Vec2& pixel) {
  if (pixel.x() < 0.0 || pixel.x() >= intr.width || pixel.y() < 0.0 ||
      pixel.y() >= intr.height) {
    throw OutOfBounds("pixel outside image bounds");
  }
  Vec3 dir_cam((pixel.x() - intr.cx) / intr.fx, (pixel.y() - intr.cy) / intr.fy,
               1.0);
  Ray ray;
  ray.origin = camera_pose.t;
  ray.dir = (camera_pose.R * dir_cam).normalized();
  return ray;
}

TriangulationResult triangulate(std::span<const Ray> rays,
                                std::span<const double> weights) {
  if (rays.size() < 2) {
    throw InsufficientConstraints("triangulation needs at least two rays");
  }
  Mat3 A = Mat3::Zero();
  Vec3 b = Vec3::Zero();
  for (size_t i = 0; i < rays.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    const Vec3 d = rays[i].dir.normalized();
    const Mat3 P = (Mat3::Identity() - d * d.transpose()) * w;
    A += P;
    b += P * rays[i].origin;
  }
  Eigen::SelfAdjointEigenSolver<Mat3> es(A);
  const double emin = es.eigenvalues()(0);
  const double emax = es.eigenvalues()(2);
  if (!(emin > 0.0) || emax / emin > 1e8) {
    throw DegenerateGeometry("near-parallel ray bundle");
  }
  const Vec3 p = es.eigenvectors() *
                 (es.eigenvalues().cwiseInverse().asDiagonal() *
                  (es.eigenvectors().transpose() * b));
  double sq = 0.0;
  for (const Ray& r : rays) {
    const Vec3 d = r.dir.normalized();
    const Vec3 e = (Mat3::Identity() - d * d.transpose()) * (p - r.origin);
    sq += e.squaredNorm();
  }
  return TriangulationResult{p, std::sqrt(sq / rays.size())};
}

}  // namespace jointcanvas
