#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "jointcanvas/camera.hpp"
#include "jointcanvas/render.hpp"

namespace jointcanvas {

// Episodic visual perturbations for the robustness sweep. Appearance
// categories rewrite scene styling; camera_pose moves the fixed cameras.
enum class PerturbCategory {
  ObjectColor,
  Distractors,
  Lighting,
  TableTexture,
  Background,
  CameraPose,
};

inline constexpr std::array<PerturbCategory, 6> kPerturbCategories = {
    PerturbCategory::ObjectColor,  PerturbCategory::Distractors,
    PerturbCategory::Lighting,     PerturbCategory::TableTexture,
    PerturbCategory::Background,   PerturbCategory::CameraPose,
};

// Stable names: object_color, distractors, lighting, table_texture,
// background, camera_pose.
const std::string& perturb_category_name(PerturbCategory c);
// Throws UnknownCategory for anything else.
PerturbCategory perturb_category_from_string(const std::string& s);

// Explicit illumination adjustment. gain = 1 with a unit tint is an exact
// no-op.
Scene apply_lighting(Scene scene, double gain, const Vec3& tint);

// Applies one seeded perturbation to the scene. Deterministic in (category,
// seed); calling it again on a rebuilt scene with the same object list yields
// the same styling, so a perturbation holds steady across an episode.
// `magnitude` in [0, 1] scales the continuous categories (lighting); the
// discrete swaps ignore it. camera_pose leaves the scene untouched — pair it
// with apply_camera_perturbation on the rig.
Scene apply_perturbation(const Scene& scene, PerturbCategory category,
                         std::uint64_t seed, double magnitude = 1.0);

// Moves each fixed camera by exactly 0.05 m * magnitude in a seeded random
// direction and tilts it by 5 deg * magnitude about a seeded random axis. The
// wrist camera (end-effector relative) is left alone.
CameraRig apply_camera_perturbation(const CameraRig& rig, std::uint64_t seed,
                                    double magnitude = 1.0);

}  // namespace jointcanvas
