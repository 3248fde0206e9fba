#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "jointcanvas/camera.hpp"
#include "jointcanvas/image.hpp"
#include "jointcanvas/palette.hpp"

namespace jointcanvas {

// ---- Procedural surface textures -------------------------------------------

enum class TextureKind { Solid, Checker, Stripes, Noise };

struct Texture {
  TextureKind kind = TextureKind::Solid;
  Rgb c0;
  Rgb c1;
  double scale = 0.08;       // pattern cell size (m)
  std::uint32_t salt = 0;    // decorrelates noise fields

  static Texture solid(Rgb c) { return Texture{TextureKind::Solid, c, c, 0.08, 0}; }
  // Deterministic color at planar coordinates (u, v) in metres.
  Rgb eval(double u, double v) const;
};

// ---- Geometry primitives ----------------------------------------------------

struct SphereShape {
  Vec3 center;
  double radius;
};

// Oriented box given by pose and half extents.
struct BoxShape {
  RigidTransform pose;
  Vec3 half;
};

// Axis-aligned vertical cylinder from base_center to base_center + h*z.
struct CylinderShape {
  Vec3 base_center;
  double radius;
  double height;
};

struct CapsuleShape {
  Vec3 a;
  Vec3 b;
  double radius;
};

using Shape = std::variant<SphereShape, BoxShape, CylinderShape, CapsuleShape>;

struct ScenePrimitive {
  Shape shape;
  Rgb color;
};

// ---- Joint target spheres ---------------------------------------------------

// View-independent part of a drawn joint sphere.
struct JointTargetSpec {
  JointSphere joint = JointSphere::Base;
  Vec3 center = Vec3::Zero();
  Vec3 rotation_axis = Vec3::UnitZ();  // unit, world frame
  double spin_angle = 0.0;             // rad
  GripperState gripper = GripperState::Open;
};

// A drawn sphere as rendered into one view (radius is per-camera).
struct SphereTarget : JointTargetSpec {
  double radius = 0.08;  // m
  bool stripes_enabled = true;
};

inline constexpr int kStripeBands = 6;
// Fraction of the radius beyond which the +n pole cap is painted with the
// pole marker color; the cap breaks the 180-degree stripe symmetry.
inline constexpr double kPoleCapFraction = 0.8;

// Sphere specs for drawing the arm's joint targets at configuration q.
// Centers sit at the configured sphere frames; each sphere's stripe field
// rotates with its joint about that joint's world axis.
std::array<JointTargetSpec, 4> make_sphere_specs(const ArmModel& arm,
                                                 const JointConfig& q);

// ---- Scene ------------------------------------------------------------------

struct DirectionalLight {
  Vec3 dir = Vec3(-0.35, 0.25, -1.0).normalized();  // toward the scene
  double gain = 1.0;
  Vec3 tint = Vec3::Ones();
};

struct Scene {
  // Desk surface: rectangle in the z = table_z plane.
  double table_x0 = 0.15, table_x1 = 0.95;
  double table_y0 = -0.55, table_y1 = 0.55;
  double table_z = 0.0;
  Texture table_tex;

  double floor_z = -0.40;
  Texture floor_tex;
  // Vertical wall behind the robot (faces +x).
  double backdrop_x = -0.90;
  Texture backdrop_tex;
  Rgb sky;

  std::vector<ScenePrimitive> objects;   // task objects + distractors
  std::vector<CapsuleShape> arm_segments;
  Rgb arm_color;

  std::vector<JointTargetSpec> sphere_specs;
  bool stripes_enabled = true;

  DirectionalLight light;

  // Empty scene with palette surface colors and no objects.
  static Scene base_scene(const Palette& palette);
};

struct RenderOptions {
  bool include_spheres = true;
};

struct RenderResult {
  ViewImage image;
  // 1 where a joint sphere is the visible surface.
  PixelMask sphere_mask;
};

// Z-buffered software rasterization of the scene from one camera. Sphere
// stripe bands and pole caps are evaluated analytically per pixel.
RenderResult render_view(const Scene& scene, const RigidTransform& camera_pose,
                         const Intrinsics& intr, double sphere_radius_m,
                         const Palette& palette, ViewName view_name,
                         const RenderOptions& opts = {});

// All four rig views at the given end-effector pose.
std::array<RenderResult, kNumViews> render_rig_views(
    const Scene& scene, const CameraRig& rig, const RigidTransform& ee_pose,
    const Palette& palette, const RenderOptions& opts = {});

// Renders just one sphere over a neutral background into a small patch with
// origin (x0, y0); used for stripe-angle template matching. Returns the patch
// and a mask of pixels covered by the sphere.
struct PatchRender {
  int x0 = 0, y0 = 0, width = 0, height = 0;
  std::vector<Rgb> pixels;
  PixelMask mask;
};
PatchRender render_sphere_patch(const RigidTransform& camera_pose,
                                const Intrinsics& intr,
                                const SphereTarget& sphere,
                                const Palette& palette,
                                const DirectionalLight& light, int x0, int y0,
                                int width, int height);

// Paints the target spheres over an already-rendered view, marking painted
// pixels in `sphere_mask` (which must match the image size; pass a fresh
// zeroed mask to collect exactly these spheres). Pixels outside the spheres
// are untouched — the mechanism behind condition/target background equality.
void paint_sphere_targets(ViewImage& image, PixelMask& sphere_mask,
                          const RigidTransform& camera_pose,
                          const Intrinsics& intr,
                          std::span<const JointTargetSpec> specs,
                          double sphere_radius_m, bool stripes_enabled,
                          const Palette& palette,
                          const DirectionalLight& light);

// ---- Random background compositing -----------------------------------------

// Replaces every pixel outside `sphere_mask` with a seeded procedural
// background (mixture of solid fills, gradients, and value-noise patches).
// All generated colors stay outside the sphere detection balls. Same seed,
// same output, bit for bit.
ViewImage composite_random_background(const ViewImage& image,
                                      const PixelMask& sphere_mask,
                                      std::uint64_t seed);
TiledImage composite_random_background(const TiledImage& image,
                                       const PixelMask& sphere_mask,
                                       std::uint64_t seed);

}  // namespace jointcanvas
