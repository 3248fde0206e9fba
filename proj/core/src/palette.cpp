#include "jointcanvas/palette.hpp"

#include <cmath>
#include <sstream>

#include "jointcanvas/errors.hpp"
#include "jointcanvas/rng.hpp"

namespace jointcanvas {

namespace {

// Scene surfaces are shaded by ambient + diffuse in [0.65, 1.0]; sampled
// scales cover that range.
constexpr std::array<double, 5> kShadeScales = {1.0, 0.9, 0.8, 0.72, 0.65};

Rgb scale_color(const Rgb& c, double s) {
  auto f = [&](std::uint8_t v) {
    return static_cast<std::uint8_t>(std::min(255.0, std::round(v * s)));
  };
  return Rgb{f(c.r), f(c.g), f(c.b)};
}

Rgb lerp_color(const Rgb& a, const Rgb& b, double t) {
  auto f = [&](std::uint8_t x, std::uint8_t y) {
    return static_cast<std::uint8_t>(std::round(x + (y - x) * t));
  };
  return Rgb{f(a.r, b.r), f(a.g, b.g), f(a.b, b.b)};
}

}  // namespace

const std::string& joint_sphere_name(JointSphere j) {
  static const std::array<std::string, 4> names = {"base", "elbow", "wrist",
                                                   "gripper"};
  return names[static_cast<int>(j)];
}

Palette Palette::default_palette() { return Palette{}; }

Rgb Palette::base_color(JointSphere j, GripperState g) const {
  if (j == JointSphere::Gripper) {
    return base_color(g == GripperState::Open ? SphereColorClass::GripperOpen
                                              : SphereColorClass::GripperClosed);
  }
  return base_color(static_cast<SphereColorClass>(static_cast<int>(j)));
}

Rgb Palette::stripe_color(JointSphere j, GripperState g) const {
  if (j == JointSphere::Gripper) {
    return stripe_color(g == GripperState::Open
                            ? SphereColorClass::GripperOpen
                            : SphereColorClass::GripperClosed);
  }
  return stripe_color(static_cast<SphereColorClass>(static_cast<int>(j)));
}

bool Palette::scene_color_safe(const Rgb& c, int margin) const {
  for (double s : kShadeScales) {
    const Rgb shaded = scale_color(c, s);
    for (int k = 0; k < kNumSphereColorClasses; ++k) {
      if (color_distance(shaded, sphere_base[k]) < margin) return false;
      if (color_distance(shaded, sphere_stripe[k]) < margin) return false;
    }
  }
  return true;
}

bool Palette::background_color_safe(const Rgb& c, int margin) const {
  for (int k = 0; k < kNumSphereColorClasses; ++k) {
    if (color_distance(c, sphere_base[k]) < margin) return false;
    if (color_distance(c, sphere_stripe[k]) < margin) return false;
  }
  return true;
}

bool Palette::background_segment_safe(const Rgb& a, const Rgb& b,
                                      int margin) const {
  for (int i = 0; i <= 8; ++i) {
    if (!background_color_safe(lerp_color(a, b, i / 8.0), margin)) return false;
  }
  return true;
}

void Palette::validate() const {
  for (int i = 0; i < kNumSphereColorClasses; ++i) {
    for (int j = i + 1; j < kNumSphereColorClasses; ++j) {
      if (color_distance(sphere_base[i], sphere_base[j]) < 64) {
        std::ostringstream os;
        os << "sphere colors " << i << " and " << j
           << " are not separable (need max-channel distance >= 64)";
        throw ConfigError(os.str());
      }
    }
  }
  if (!scene_color_safe(arm_body) || !scene_color_safe(table) ||
      !scene_color_safe(backdrop) || !scene_color_safe(floor) ||
      !background_color_safe(sky)) {
    throw ConfigError("a fixed scene color falls inside a sphere detection ball");
  }
}

std::uint64_t Palette::hash() const {
  std::ostringstream os;
  auto put = [&os](const Rgb& c) {
    os << int(c.r) << "," << int(c.g) << "," << int(c.b) << ";";
  };
  for (int k = 0; k < kNumSphereColorClasses; ++k) {
    put(sphere_base[k]);
    put(sphere_stripe[k]);
  }
  put(pole_marker);
  put(arm_body);
  put(table);
  put(backdrop);
  put(floor);
  put(sky);
  return fnv1a(os.str());
}

}  // namespace jointcanvas
