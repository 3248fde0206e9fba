#include "jointcanvas/perturb.hpp"

#include <algorithm>
#include <cmath>

#include "jointcanvas/errors.hpp"
#include "jointcanvas/rng.hpp"

namespace jointcanvas {

namespace {

Rgb safe_scene_color(Rng& rng, const Palette& pal) {
  for (int tries = 0; tries < 64; ++tries) {
    Rgb c{static_cast<std::uint8_t>(rng.uniform_int(256)),
          static_cast<std::uint8_t>(rng.uniform_int(256)),
          static_cast<std::uint8_t>(rng.uniform_int(256))};
    if (pal.scene_color_safe(c)) return c;
  }
  return Rgb{235, 235, 235};
}

void safe_scene_pair(Rng& rng, const Palette& pal, Rgb& a, Rgb& b) {
  for (int tries = 0; tries < 64; ++tries) {
    a = safe_scene_color(rng, pal);
    b = safe_scene_color(rng, pal);
    if (pal.background_segment_safe(a, b)) return;
  }
  a = Rgb{150, 150, 150};
  b = Rgb{215, 215, 215};
}

Texture random_texture(Rng& rng, const Palette& pal) {
  Rgb a, b;
  safe_scene_pair(rng, pal, a, b);
  Texture tex;
  tex.c0 = a;
  tex.c1 = b;
  tex.scale = 0.04 + 0.02 * rng.uniform_int(5);
  tex.salt = static_cast<std::uint32_t>(rng.uniform_int(1 << 30));
  switch (rng.uniform_int(3)) {
    case 0:
      tex.kind = TextureKind::Checker;
      break;
    case 1:
      tex.kind = TextureKind::Stripes;
      break;
    default:
      tex.kind = TextureKind::Noise;
      break;
  }
  return tex;
}

Vec3 random_unit(Rng& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    Vec3 v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
           rng.uniform(-1.0, 1.0));
    const double n = v.norm();
    if (n > 1e-3 && n <= 1.0) return v / n;
  }
  return Vec3::UnitZ();
}

}  // namespace

const std::string& perturb_category_name(PerturbCategory c) {
  static const std::array<std::string, 6> names = {
      "object_color", "distractors", "lighting",
      "table_texture", "background",  "camera_pose"};
  return names[static_cast<int>(c)];
}

PerturbCategory perturb_category_from_string(const std::string& s) {
  for (PerturbCategory c : kPerturbCategories) {
    if (perturb_category_name(c) == s) return c;
  }
  throw UnknownCategory("unknown perturbation category: " + s);
}

Scene apply_lighting(Scene scene, double gain, const Vec3& tint) {
  scene.light.gain *= gain;
  scene.light.tint = scene.light.tint.cwiseProduct(tint);
  return scene;
}

Scene apply_perturbation(const Scene& scene, PerturbCategory category,
                         std::uint64_t seed, double magnitude) {
  const Palette pal = Palette::default_palette();
  Rng rng(mix_seed({seed, 0x9E57u, static_cast<std::uint64_t>(category)}));
  Scene out = scene;
  switch (category) {
    case PerturbCategory::ObjectColor: {
      for (ScenePrimitive& prim : out.objects) {
        prim.color = safe_scene_color(rng, pal);
      }
      break;
    }
    case PerturbCategory::Distractors: {
      // Clutter sits in the side margins of the table, clear of the central
      // band every task works in.
      const int n = 1 + rng.uniform_int(3);
      for (int i = 0; i < n; ++i) {
        const double side = rng.chance(0.5) ? 1.0 : -1.0;
        const double x = rng.uniform(0.25, 0.85);
        const double y = side * rng.uniform(0.42, 0.52);
        const double size = rng.uniform(0.015, 0.03);
        const Rgb color = safe_scene_color(rng, pal);
        ScenePrimitive prim;
        prim.color = color;
        switch (rng.uniform_int(3)) {
          case 0:
            prim.shape = SphereShape{Vec3(x, y, out.table_z + size), size};
            break;
          case 1: {
            BoxShape box;
            box.pose = RigidTransform::from_translation(
                Vec3(x, y, out.table_z + size));
            box.half = Vec3(size, size, size);
            prim.shape = box;
            break;
          }
          default:
            prim.shape =
                CylinderShape{Vec3(x, y, out.table_z), size, 2.0 * size};
            break;
        }
        out.objects.push_back(prim);
      }
      break;
    }
    case PerturbCategory::Lighting: {
      const double gain = 1.0 + 0.3 * magnitude * rng.uniform(-1.0, 1.0);
      Vec3 tint;
      for (int k = 0; k < 3; ++k) {
        tint[k] = 1.0 + 0.15 * magnitude * rng.uniform(-1.0, 1.0);
      }
      out = apply_lighting(std::move(out), gain, tint);
      break;
    }
    case PerturbCategory::TableTexture: {
      out.table_tex = random_texture(rng, pal);
      break;
    }
    case PerturbCategory::Background: {
      out.backdrop_tex = random_texture(rng, pal);
      out.floor_tex = random_texture(rng, pal);
      Rgb sky = safe_scene_color(rng, pal);
      out.sky = sky;
      break;
    }
    case PerturbCategory::CameraPose:
      // Scene untouched; the rig counterpart carries this category.
      break;
  }
  return out;
}

CameraRig apply_camera_perturbation(const CameraRig& rig, std::uint64_t seed,
                                    double magnitude) {
  Rng rng(mix_seed({seed, 0xCA3Au}));
  CameraRig out = rig;
  const double trans = 0.05 * magnitude;
  const double rot = 5.0 * M_PI / 180.0 * magnitude;
  for (int i = 0; i < kNumViews; ++i) {
    if (out.mounts[i].ee_relative) continue;
    const Vec3 dir = random_unit(rng);
    const Vec3 axis = random_unit(rng);
    RigidTransform& pose = out.mounts[i].pose;
    pose.t += trans * dir;
    pose.R = Eigen::AngleAxisd(rot, axis).toRotationMatrix() * pose.R;
  }
  return out;
}

}  // namespace jointcanvas
