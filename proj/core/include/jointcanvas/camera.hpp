#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "jointcanvas/geometry.hpp"

namespace jointcanvas {

inline constexpr int kNumViews = 4;
inline constexpr int kViewSize = 256;   // each view is 256x256
inline constexpr int kTileSize = 512;   // 2x2 tiling of the four views

// Fixed view order; also the tiling quadrant order (row-major:
// top-left, top-right, bottom-left, bottom-right).
enum class ViewName { Front = 0, Wrist = 1, LeftShoulder = 2, RightShoulder = 3 };

inline constexpr std::array<ViewName, kNumViews> kViewOrder = {
    ViewName::Front, ViewName::Wrist, ViewName::LeftShoulder,
    ViewName::RightShoulder};

const std::string& view_name_string(ViewName v);
std::optional<ViewName> view_name_from_string(const std::string& s);

// Pinhole intrinsics; u = cx + fx*x/z, v = cy + fy*y/z in camera frame
// (+z optical axis, +x right, +y down).
struct Intrinsics {
  double fx = 221.0;
  double fy = 221.0;
  double cx = 128.0;
  double cy = 128.0;
  int width = kViewSize;
  int height = kViewSize;
};

// Camera mounting: either fixed in the world or rigidly attached to the
// end-effector frame (wrist camera).
struct CameraMount {
  RigidTransform pose;       // world pose, or offset from the EE frame
  bool ee_relative = false;
};

struct CameraRig {
  std::array<Intrinsics, kNumViews> intrinsics{};
  std::array<CameraMount, kNumViews> mounts{};
  // Radius (m) the joint spheres are drawn with in each view.
  std::array<double, kNumViews> sphere_radius_m{0.08, 0.03, 0.065, 0.065};

  const Intrinsics& intr(ViewName v) const {
    return intrinsics[static_cast<int>(v)];
  }
  double sphere_radius(ViewName v) const {
    return sphere_radius_m[static_cast<int>(v)];
  }

  static CameraRig default_rig();
  // Throws ConfigError on non-positive focal lengths or sphere radii, or if
  // a camera other than the wrist is EE-relative.
  void validate() const;
  // FNV-1a over a canonical serialization; stamped into dataset manifests.
  std::uint64_t hash() const;
};

// World poses of all four cameras given the current end-effector pose.
std::array<RigidTransform, kNumViews> rig_world_poses(const CameraRig& rig,
                                                      const RigidTransform& ee_pose);

// Projects a world point. Returns nullopt when the point lies at or behind
// the camera plane (camera-frame z <= 1e-6).
std::optional<Vec2> project(const RigidTransform& camera_pose,
                            const Intrinsics& intr, const Vec3& point);

struct Ray {
  Vec3 origin;
  Vec3 dir;  // unit length
};

// Ray through a continuous pixel coordinate. Throws OutOfBounds when the
// pixel lies outside [0, width) x [0, height).
Ray pixel_ray(const RigidTransform& camera_pose, const Intrinsics& intr,
              const Vec2& pixel);

struct TriangulationResult {
  Vec3 point;
  double rms_residual = 0.0;  // RMS point-to-ray distance (m)
};

// Least-squares intersection of >= 2 rays, optionally weighted. Throws
// DegenerateGeometry when the normal matrix condition number exceeds 1e8
// (near-parallel bundle) and InsufficientConstraints for < 2 rays.
TriangulationResult triangulate(std::span<const Ray> rays,
                                std::span<const double> weights = {});

}  // namespace jointcanvas
