#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "jointcanvas/image.hpp"
#include "jointcanvas/kinematics.hpp"

namespace jointcanvas {

// The four drawn joint spheres, in sphere-frame order (SphereJoints::frames()).
enum class JointSphere { Base = 0, Elbow = 1, Wrist = 2, Gripper = 3 };

inline constexpr std::array<JointSphere, 4> kJointSpheres = {
    JointSphere::Base, JointSphere::Elbow, JointSphere::Wrist,
    JointSphere::Gripper};

const std::string& joint_sphere_name(JointSphere j);

// Max-channel (Chebyshev) distance between two colors; the decoder's color
// metric.
inline int color_distance(const Rgb& a, const Rgb& b) {
  int dr = std::abs(int(a.r) - int(b.r));
  int dg = std::abs(int(a.g) - int(b.g));
  int db = std::abs(int(a.b) - int(b.b));
  return std::max(dr, std::max(dg, db));
}

// Color classes a pixel can claim during sphere detection. Open and closed
// gripper states carry distinct colors so the binary state survives the
// image round trip.
enum class SphereColorClass {
  Base = 0,
  Elbow = 1,
  Wrist = 2,
  GripperOpen = 3,
  GripperClosed = 4,
};
inline constexpr int kNumSphereColorClasses = 5;

struct Palette {
  // Joint sphere base colors (class order above).
  std::array<Rgb, kNumSphereColorClasses> sphere_base = {
      Rgb{178, 34, 34},   // base
      Rgb{34, 139, 34},   // elbow
      Rgb{128, 0, 128},   // wrist
      Rgb{255, 179, 0},   // gripper open
      Rgb{0, 200, 215},   // gripper closed
  };
  // Stripe bands at 50% value of the base color.
  std::array<Rgb, kNumSphereColorClasses> sphere_stripe = {
      Rgb{89, 17, 17},  Rgb{17, 69, 17}, Rgb{64, 0, 64},
      Rgb{127, 89, 0},  Rgb{0, 100, 107},
  };
  Rgb pole_marker{255, 255, 255};
  Rgb arm_body{128, 128, 128};
  Rgb table{196, 168, 120};
  Rgb backdrop{150, 160, 175};
  Rgb floor{165, 150, 140};
  Rgb sky{175, 190, 205};

  // Mean channel intensities of the canonical scene under neutral lighting;
  // the decoder's reference for lighting-gain normalization.
  std::array<double, 3> reference_mean = {150.0, 145.0, 125.0};

  static Palette default_palette();

  Rgb base_color(SphereColorClass c) const {
    return sphere_base[static_cast<int>(c)];
  }
  Rgb stripe_color(SphereColorClass c) const {
    return sphere_stripe[static_cast<int>(c)];
  }
  Rgb base_color(JointSphere j, GripperState g) const;
  Rgb stripe_color(JointSphere j, GripperState g) const;

  // True when `c`, at every plausible scene shading factor, stays at least
  // `margin` away from every sphere base/stripe color. Required of arm,
  // table, backdrop, floor, task-object, and distractor colors.
  bool scene_color_safe(const Rgb& c, int margin = 56) const;
  // Same test for unshaded composited background colors.
  bool background_color_safe(const Rgb& c, int margin = 56) const;
  // Checks the straight line between two colors (gradients, noise lerps).
  bool background_segment_safe(const Rgb& a, const Rgb& b,
                               int margin = 56) const;

  // Throws ConfigError if the joint colors are not pairwise separable
  // (min max-channel distance >= 64) or a fixed scene color sits inside a
  // sphere detection ball.
  void validate() const;

  // FNV-1a over a canonical serialization; stamped into dataset manifests.
  std::uint64_t hash() const;
};

}  // namespace jointcanvas
