#include "jointcanvas/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jointcanvas/errors.hpp"
#include "jointcanvas/rng.hpp"

namespace jointcanvas {

namespace {

constexpr double kSceneAmbient = 0.65;
constexpr double kSceneDiffuse = 0.35;
// Drawn spheres are shaded only lightly so every sphere pixel stays inside
// its color's detection ball.
constexpr double kSphereAmbient = 0.85;
constexpr double kSphereDiffuse = 0.15;
constexpr double kNearClip = 1e-4;

std::uint8_t clamp8(double x) {
  return static_cast<std::uint8_t>(std::clamp(x, 0.0, 255.0));
}

Rgb shade(const Rgb& albedo, double lambert, const DirectionalLight& light) {
  return Rgb{
      clamp8(std::round(albedo.r * lambert * light.gain * light.tint.x())),
      clamp8(std::round(albedo.g * lambert * light.gain * light.tint.y())),
      clamp8(std::round(albedo.b * lambert * light.gain * light.tint.z()))};
}

double lattice_hash(std::int64_t ix, std::int64_t iy, std::uint32_t salt) {
  std::uint64_t s = mix_seed({static_cast<std::uint64_t>(ix) * 2654435761ULL,
                              static_cast<std::uint64_t>(iy) * 40503ULL, salt});
  return static_cast<double>(s >> 11) * (1.0 / 9007199254740992.0);
}

struct HitInfo {
  double t = 0.0;
  Vec3 n = Vec3::UnitZ();
};

bool intersect(const SphereShape& s, const Vec3& o, const Vec3& d, HitInfo& h) {
  const Vec3 oc = o - s.center;
  const double b = oc.dot(d);
  const double c = oc.squaredNorm() - s.radius * s.radius;
  const double disc = b * b - c;
  if (disc < 0.0) return false;
  const double t = -b - std::sqrt(disc);
  if (t <= kNearClip) return false;
  h.t = t;
  h.n = (o + t * d - s.center) / s.radius;
  return true;
}

bool intersect(const BoxShape& box, const Vec3& o, const Vec3& d, HitInfo& h) {
  const Mat3 Rt = box.pose.R.transpose();
  const Vec3 ol = Rt * (o - box.pose.t);
  const Vec3 dl = Rt * d;
  double tmin = -std::numeric_limits<double>::infinity();
  double tmax = std::numeric_limits<double>::infinity();
  int axis = 0;
  double sign = 1.0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(dl[i]) < 1e-12) {
      if (std::abs(ol[i]) > box.half[i]) return false;
      continue;
    }
    double t1 = (-box.half[i] - ol[i]) / dl[i];
    double t2 = (box.half[i] - ol[i]) / dl[i];
    double s = -1.0;
    if (t1 > t2) {
      std::swap(t1, t2);
      s = 1.0;
    }
    if (t1 > tmin) {
      tmin = t1;
      axis = i;
      sign = s;
    }
    tmax = std::min(tmax, t2);
    if (tmin > tmax) return false;
  }
  if (tmin <= kNearClip) return false;
  h.t = tmin;
  Vec3 nl = Vec3::Zero();
  nl[axis] = sign;
  h.n = box.pose.R * nl;
  return true;
}

bool intersect(const CylinderShape& cyl, const Vec3& o, const Vec3& d,
               HitInfo& h) {
  const double z0 = cyl.base_center.z();
  const double z1 = z0 + cyl.height;
  double best = std::numeric_limits<double>::infinity();
  Vec3 bn;
  // Side surface.
  const double ox = o.x() - cyl.base_center.x();
  const double oy = o.y() - cyl.base_center.y();
  const double a = d.x() * d.x() + d.y() * d.y();
  if (a > 1e-12) {
    const double b = ox * d.x() + oy * d.y();
    const double c = ox * ox + oy * oy - cyl.radius * cyl.radius;
    const double disc = b * b - a * c;
    if (disc >= 0.0) {
      const double t = (-b - std::sqrt(disc)) / a;
      if (t > kNearClip) {
        const double z = o.z() + t * d.z();
        if (z >= z0 && z <= z1) {
          best = t;
          bn = Vec3((ox + t * d.x()) / cyl.radius, (oy + t * d.y()) / cyl.radius,
                    0.0);
        }
      }
    }
  }
  // End caps.
  if (std::abs(d.z()) > 1e-12) {
    for (double zc : {z0, z1}) {
      const double t = (zc - o.z()) / d.z();
      if (t > kNearClip && t < best) {
        const double px = o.x() + t * d.x() - cyl.base_center.x();
        const double py = o.y() + t * d.y() - cyl.base_center.y();
        if (px * px + py * py <= cyl.radius * cyl.radius) {
          best = t;
          bn = Vec3(0, 0, zc == z0 ? -1.0 : 1.0);
        }
      }
    }
  }
  if (!std::isfinite(best)) return false;
  h.t = best;
  h.n = bn;
  return true;
}

bool intersect(const CapsuleShape& cap, const Vec3& o, const Vec3& d,
               HitInfo& h) {
  const Vec3 ab = cap.b - cap.a;
  const double len = ab.norm();
  double best = std::numeric_limits<double>::infinity();
  Vec3 axis_pt;
  if (len > 1e-12) {
    const Vec3 u = ab / len;
    const Vec3 P = o - cap.a;
    const Vec3 w = d - d.dot(u) * u;
    const Vec3 q = P - P.dot(u) * u;
    const double A = w.squaredNorm();
    if (A > 1e-12) {
      const double B = w.dot(q);
      const double C = q.squaredNorm() - cap.radius * cap.radius;
      const double disc = B * B - A * C;
      if (disc >= 0.0) {
        const double t = (-B - std::sqrt(disc)) / A;
        if (t > kNearClip) {
          const double s = (P + t * d).dot(u);
          if (s >= 0.0 && s <= len) {
            best = t;
            axis_pt = cap.a + s * u;
          }
        }
      }
    }
  }
  // Cap spheres.
  for (const Vec3& c : {cap.a, cap.b}) {
    const Vec3 oc = o - c;
    const double b = oc.dot(d);
    const double cc = oc.squaredNorm() - cap.radius * cap.radius;
    const double disc = b * b - cc;
    if (disc < 0.0) continue;
    const double t = -b - std::sqrt(disc);
    if (t > kNearClip && t < best) {
      best = t;
      axis_pt = c;
    }
  }
  if (!std::isfinite(best)) return false;
  h.t = best;
  h.n = (o + best * d - axis_pt) / cap.radius;
  return true;
}

Vec3 bounding_center(const Shape& s) {
  if (const auto* p = std::get_if<SphereShape>(&s)) return p->center;
  if (const auto* p = std::get_if<BoxShape>(&s)) return p->pose.t;
  if (const auto* p = std::get_if<CylinderShape>(&s))
    return p->base_center + Vec3(0, 0, p->height * 0.5);
  const auto& c = std::get<CapsuleShape>(s);
  return (c.a + c.b) * 0.5;
}

double bounding_radius(const Shape& s) {
  if (const auto* p = std::get_if<SphereShape>(&s)) return p->radius;
  if (const auto* p = std::get_if<BoxShape>(&s)) return p->half.norm();
  if (const auto* p = std::get_if<CylinderShape>(&s))
    return std::sqrt(p->radius * p->radius + 0.25 * p->height * p->height);
  const auto& c = std::get<CapsuleShape>(s);
  return 0.5 * (c.b - c.a).norm() + c.radius;
}

// Conservative screen bounding box of a world sphere. Returns false when the
// sphere is entirely behind the camera.
bool screen_bbox(const RigidTransform& cam, const Intrinsics& intr,
                 const Vec3& center, double radius, int& x0, int& y0, int& x1,
                 int& y1) {
  const Vec3 pc = cam.R.transpose() * (center - cam.t);
  const double z = pc.z();
  if (z + radius <= kNearClip) return false;
  if (z - radius < 1e-3) {
    // Crosses the image plane: fall back to the full image.
    x0 = 0;
    y0 = 0;
    x1 = intr.width - 1;
    y1 = intr.height - 1;
    return true;
  }
  // Exact silhouette bounds of the bounding sphere.
  const double r2 = radius * radius;
  auto bounds_1d = [&](double x, double& lo, double& hi) {
    const double denom = z * z - r2;
    const double root = std::sqrt(std::max(0.0, x * x + z * z - r2));
    lo = (x * z - radius * root) / denom;
    hi = (x * z + radius * root) / denom;
  };
  double ulo, uhi, vlo, vhi;
  bounds_1d(pc.x(), ulo, uhi);
  bounds_1d(pc.y(), vlo, vhi);
  x0 = std::max(0, static_cast<int>(std::floor(intr.cx + intr.fx * ulo)) - 1);
  x1 = std::min(intr.width - 1,
                static_cast<int>(std::ceil(intr.cx + intr.fx * uhi)) + 1);
  y0 = std::max(0, static_cast<int>(std::floor(intr.cy + intr.fy * vlo)) - 1);
  y1 = std::min(intr.height - 1,
                static_cast<int>(std::ceil(intr.cy + intr.fy * vhi)) + 1);
  return x0 <= x1 && y0 <= y1;
}

double scene_lambert(const Vec3& n, const DirectionalLight& light) {
  return kSceneAmbient + kSceneDiffuse * std::max(0.0, n.dot(-light.dir));
}

// Color of a stripe-field sphere at surface point p.
Rgb sphere_albedo(const SphereTarget& s, const Vec3& p, const Palette& pal) {
  const Rgb base = pal.base_color(s.joint, s.gripper);
  if (!s.stripes_enabled) return base;
  const Vec3 n0 = canonical_perpendicular(s.rotation_axis);
  const Vec3 nhat = rotate_about_axis(n0, s.rotation_axis, s.spin_angle);
  const double sd = (p - s.center).dot(nhat);
  if (sd > kPoleCapFraction * s.radius) return pal.pole_marker;
  int band = static_cast<int>(
      std::floor((sd / s.radius + 1.0) * (kStripeBands / 2.0)));
  band = std::clamp(band, 0, kStripeBands - 1);
  return (band % 2 == 0) ? base : pal.stripe_color(s.joint, s.gripper);
}

struct Raster {
  const Intrinsics& intr;
  const RigidTransform& cam;
  ViewImage& img;
  std::vector<double>& zbuf;
  std::vector<double>& sphere_zbuf;
  std::vector<std::uint8_t>& owner;
  std::vector<Vec3>& dirs;

  const Vec3& dir(int x, int y) const {
    return dirs[static_cast<size_t>(y) * intr.width + x];
  }
};

template <typename ShapeT>
void rasterize_shape(Raster& r, const ShapeT& shape, const Rgb& color,
                     const DirectionalLight& light) {
  int x0, y0, x1, y1;
  if (!screen_bbox(r.cam, r.intr, bounding_center(Shape{shape}),
                   bounding_radius(Shape{shape}), x0, y0, x1, y1)) {
    return;
  }
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      HitInfo h;
      if (!intersect(shape, r.cam.t, r.dir(x, y), h)) continue;
      const size_t idx = static_cast<size_t>(y) * r.intr.width + x;
      if (h.t >= r.zbuf[idx]) continue;
      r.zbuf[idx] = h.t;
      r.owner[idx] = 0;
      r.img.pixels[idx] = shade(color, scene_lambert(h.n, light), light);
    }
  }
}

// Targets are painted over the finished scene: they depict a future
// configuration, so the current arm must never hide them. Depth ordering
// applies only among the spheres themselves.
void rasterize_sphere_target(Raster& r, const SphereTarget& s,
                             const Palette& pal,
                             const DirectionalLight& light) {
  int x0, y0, x1, y1;
  if (!screen_bbox(r.cam, r.intr, s.center, s.radius, x0, y0, x1, y1)) return;
  const SphereShape geom{s.center, s.radius};
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      HitInfo h;
      if (!intersect(geom, r.cam.t, r.dir(x, y), h)) continue;
      const size_t idx = static_cast<size_t>(y) * r.intr.width + x;
      if (h.t >= r.sphere_zbuf[idx]) continue;
      const Vec3 p = r.cam.t + h.t * r.dir(x, y);
      const double lam =
          kSphereAmbient + kSphereDiffuse * std::max(0.0, h.n.dot(-light.dir));
      r.sphere_zbuf[idx] = h.t;
      r.owner[idx] = 1;
      r.img.pixels[idx] = shade(sphere_albedo(s, p, pal), lam, light);
    }
  }
}

}  // namespace

Rgb Texture::eval(double u, double v) const {
  switch (kind) {
    case TextureKind::Solid:
      return c0;
    case TextureKind::Checker: {
      const std::int64_t iu = static_cast<std::int64_t>(std::floor(u / scale));
      const std::int64_t iv = static_cast<std::int64_t>(std::floor(v / scale));
      return ((iu + iv) & 1) ? c1 : c0;
    }
    case TextureKind::Stripes: {
      const std::int64_t iu = static_cast<std::int64_t>(std::floor(u / scale));
      return (iu & 1) ? c1 : c0;
    }
    case TextureKind::Noise: {
      const double fu = u / scale, fv = v / scale;
      const std::int64_t iu = static_cast<std::int64_t>(std::floor(fu));
      const std::int64_t iv = static_cast<std::int64_t>(std::floor(fv));
      const double tu = fu - iu, tv = fv - iv;
      const double v00 = lattice_hash(iu, iv, salt);
      const double v10 = lattice_hash(iu + 1, iv, salt);
      const double v01 = lattice_hash(iu, iv + 1, salt);
      const double v11 = lattice_hash(iu + 1, iv + 1, salt);
      const double t = (v00 * (1 - tu) + v10 * tu) * (1 - tv) +
                       (v01 * (1 - tu) + v11 * tu) * tv;
      auto mix = [&](std::uint8_t a, std::uint8_t b) {
        return static_cast<std::uint8_t>(std::round(a + (b - a) * t));
      };
      return Rgb{mix(c0.r, c1.r), mix(c0.g, c1.g), mix(c0.b, c1.b)};
    }
  }
  return c0;
}

std::array<JointTargetSpec, 4> make_sphere_specs(const ArmModel& arm,
                                                 const JointConfig& q) {
  const FramePoses poses = forward_kinematics(arm, q);
  const auto axes = joint_axes(arm, q);
  const auto frames = arm.sphere_joints.frames();
  std::array<JointTargetSpec, 4> specs;
  for (int i = 0; i < 4; ++i) {
    const int f = frames[i];
    const int j = joint_of_frame(f);
    specs[i].joint = static_cast<JointSphere>(i);
    specs[i].center = poses.frames[f].t;
    specs[i].rotation_axis = axes[j].dir;
    specs[i].spin_angle = wrap_to_pi(q.q[j]);
    specs[i].gripper = q.gripper;
  }
  return specs;
}

Scene Scene::base_scene(const Palette& palette) {
  Scene s;
  s.table_tex = Texture::solid(palette.table);
  s.floor_tex = Texture::solid(palette.floor);
  s.backdrop_tex = Texture::solid(palette.backdrop);
  s.sky = palette.sky;
  s.arm_color = palette.arm_body;
  return s;
}

RenderResult render_view(const Scene& scene, const RigidTransform& camera_pose,
                         const Intrinsics& intr, double sphere_radius_m,
                         const Palette& palette, ViewName view_name,
                         const RenderOptions& opts) {
  const int W = intr.width, H = intr.height;
  RenderResult out;
  out.image = ViewImage(W, H, view_name);
  out.sphere_mask.assign(static_cast<size_t>(W) * H, 0);

  std::vector<double> zbuf(static_cast<size_t>(W) * H,
                           std::numeric_limits<double>::infinity());
  std::vector<double> sphere_zbuf(static_cast<size_t>(W) * H,
                                  std::numeric_limits<double>::infinity());
  std::vector<std::uint8_t> owner(static_cast<size_t>(W) * H, 0);
  std::vector<Vec3> dirs(static_cast<size_t>(W) * H);
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const Vec3 dc((x + 0.5 - intr.cx) / intr.fx, (y + 0.5 - intr.cy) / intr.fy,
                    1.0);
      dirs[static_cast<size_t>(y) * W + x] = (camera_pose.R * dc).normalized();
    }
  }

  const DirectionalLight& light = scene.light;
  const Vec3 o = camera_pose.t;
  // Background pass: floor, table rectangle, backdrop wall, sky.
  const double lam_up = scene_lambert(Vec3::UnitZ(), light);
  const double lam_wall = scene_lambert(Vec3::UnitX(), light);
  for (size_t idx = 0; idx < dirs.size(); ++idx) {
    const Vec3& d = dirs[idx];
    double best = std::numeric_limits<double>::infinity();
    Rgb col = scene.sky;
    double lam = 1.0;
    if (std::abs(d.z()) > 1e-12) {
      const double tf = (scene.floor_z - o.z()) / d.z();
      if (tf > kNearClip && tf < best) {
        best = tf;
        col = scene.floor_tex.eval(o.x() + tf * d.x(), o.y() + tf * d.y());
        lam = lam_up;
      }
      const double tt = (scene.table_z - o.z()) / d.z();
      if (tt > kNearClip && tt < best) {
        const double px = o.x() + tt * d.x();
        const double py = o.y() + tt * d.y();
        if (px >= scene.table_x0 && px <= scene.table_x1 &&
            py >= scene.table_y0 && py <= scene.table_y1) {
          best = tt;
          col = scene.table_tex.eval(px, py);
          lam = lam_up;
        }
      }
    }
    if (std::abs(d.x()) > 1e-12) {
      const double tb = (scene.backdrop_x - o.x()) / d.x();
      if (tb > kNearClip && tb < best) {
        best = tb;
        col = scene.backdrop_tex.eval(o.y() + tb * d.y(), o.z() + tb * d.z());
        lam = lam_wall;
      }
    }
    zbuf[idx] = best;
    out.image.pixels[idx] = shade(col, lam, light);
  }

  Raster r{intr, camera_pose, out.image, zbuf, sphere_zbuf, owner, dirs};
  for (const ScenePrimitive& prim : scene.objects) {
    std::visit([&](const auto& sh) { rasterize_shape(r, sh, prim.color, light); },
               prim.shape);
  }
  for (const CapsuleShape& seg : scene.arm_segments) {
    rasterize_shape(r, seg, scene.arm_color, light);
  }
  if (opts.include_spheres) {
    for (const JointTargetSpec& spec : scene.sphere_specs) {
      SphereTarget st;
      static_cast<JointTargetSpec&>(st) = spec;
      st.radius = sphere_radius_m;
      st.stripes_enabled = scene.stripes_enabled;
      rasterize_sphere_target(r, st, palette, light);
    }
  }
  for (size_t idx = 0; idx < owner.size(); ++idx) {
    out.sphere_mask[idx] = owner[idx];
  }
  return out;
}

std::array<RenderResult, kNumViews> render_rig_views(const Scene& scene,
                                                     const CameraRig& rig,
                                                     const RigidTransform& ee_pose,
                                                     const Palette& palette,
                                                     const RenderOptions& opts) {
  const auto poses = rig_world_poses(rig, ee_pose);
  std::array<RenderResult, kNumViews> out;
  for (int i = 0; i < kNumViews; ++i) {
    const ViewName v = kViewOrder[i];
    out[i] = render_view(scene, poses[i], rig.intrinsics[i],
                         rig.sphere_radius_m[i], palette, v, opts);
  }
  return out;
}

void paint_sphere_targets(ViewImage& image, PixelMask& sphere_mask,
                          const RigidTransform& camera_pose,
                          const Intrinsics& intr,
                          std::span<const JointTargetSpec> specs,
                          double sphere_radius_m, bool stripes_enabled,
                          const Palette& palette,
                          const DirectionalLight& light) {
  if (sphere_mask.size() != image.pixels.size()) {
    throw ConfigError("sphere mask size does not match image");
  }
  std::vector<double> zbuf(image.pixels.size(),
                           std::numeric_limits<double>::infinity());
  std::vector<double> sphere_zbuf(image.pixels.size(),
                                  std::numeric_limits<double>::infinity());
  std::vector<std::uint8_t> owner(image.pixels.size(), 0);
  std::vector<Vec3> dirs(image.pixels.size());
  for (int y = 0; y < intr.height; ++y) {
    for (int x = 0; x < intr.width; ++x) {
      const Vec3 dc((x + 0.5 - intr.cx) / intr.fx, (y + 0.5 - intr.cy) / intr.fy,
                    1.0);
      dirs[static_cast<size_t>(y) * intr.width + x] =
          (camera_pose.R * dc).normalized();
    }
  }
  Raster r{intr, camera_pose, image, zbuf, sphere_zbuf, owner, dirs};
  for (const JointTargetSpec& spec : specs) {
    SphereTarget st;
    static_cast<JointTargetSpec&>(st) = spec;
    st.radius = sphere_radius_m;
    st.stripes_enabled = stripes_enabled;
    rasterize_sphere_target(r, st, palette, light);
  }
  for (size_t i = 0; i < owner.size(); ++i) {
    if (owner[i]) sphere_mask[i] = 1;
  }
}

PatchRender render_sphere_patch(const RigidTransform& camera_pose,
                                const Intrinsics& intr,
                                const SphereTarget& sphere,
                                const Palette& palette,
                                const DirectionalLight& light, int x0, int y0,
                                int width, int height) {
  PatchRender patch;
  patch.x0 = x0;
  patch.y0 = y0;
  patch.width = width;
  patch.height = height;
  patch.pixels.assign(static_cast<size_t>(width) * height, Rgb{120, 120, 120});
  patch.mask.assign(static_cast<size_t>(width) * height, 0);
  const SphereShape geom{sphere.center, sphere.radius};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Vec3 dc((x0 + x + 0.5 - intr.cx) / intr.fx,
                    (y0 + y + 0.5 - intr.cy) / intr.fy, 1.0);
      const Vec3 d = (camera_pose.R * dc).normalized();
      HitInfo h;
      if (!intersect(geom, camera_pose.t, d, h)) continue;
      const Vec3 p = camera_pose.t + h.t * d;
      const double lam =
          kSphereAmbient + kSphereDiffuse * std::max(0.0, h.n.dot(-light.dir));
      const size_t idx = static_cast<size_t>(y) * width + x;
      patch.pixels[idx] = shade(sphere_albedo(sphere, p, palette), lam, light);
      patch.mask[idx] = 1;
    }
  }
  return patch;
}

}  // namespace jointcanvas
