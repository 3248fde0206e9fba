#include "jointcanvas/simworld.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jointcanvas/errors.hpp"
#include "jointcanvas/rng.hpp"

namespace jointcanvas {
namespace {

// Hand must close within this distance of a grasp point to pick up (m).
constexpr double kGraspRadius = 0.02;
// Vertical window above the knob top where a closed hand engages it (m).
constexpr double kKnobGripHeight = 0.05;
// Free objects sink toward their support this fast (m/step); bounded so a
// release never teleports an object.
constexpr double kSettleRate = 0.04;

// Task object colors. Every one passes Palette::scene_color_safe, so task
// geometry can never masquerade as a joint sphere under any shading.
constexpr Rgb kPink{240, 170, 170};
constexpr Rgb kMint{170, 230, 190};
constexpr Rgb kLavender{200, 180, 235};
constexpr Rgb kPanBlue{120, 150, 200};
constexpr Rgb kLidGrey{150, 150, 150};

Mat3 yaw_rotation(double yaw) {
  return Eigen::AngleAxisd(yaw, Vec3::UnitZ()).toRotationMatrix();
}

double horizontal_distance(const Vec3& a, const Vec3& b) {
  return std::hypot(a.x() - b.x(), a.y() - b.y());
}

}  // namespace

double WorldObject::rest_z() const {
  switch (kind) {
    case Kind::Sphere:
      return dims.x();
    case Kind::Box:
      return dims.z();
    case Kind::Cylinder:
      return 0.0;
  }
  return 0.0;
}

Shape WorldObject::shape() const {
  // Cylinders rasterize as vertical bodies: a carried cylinder stays upright,
  // which matches how the hand holds lids and knobs here.
  switch (kind) {
    case Kind::Sphere:
      return SphereShape{pose.t, dims.x()};
    case Kind::Box:
      return BoxShape{pose, dims};
    case Kind::Cylinder:
      return CylinderShape{pose.t, dims.x(), dims.y()};
  }
  return SphereShape{pose.t, dims.x()};
}

TaskSpec make_task_spec(const std::string& task_name) {
  TaskSpec s;
  s.task_name = task_name;
  if (task_name == "reach_target") {
    s.goal_text = "reach the pink ball";
  } else if (task_name == "lift_lid") {
    s.goal_text = "lift the lid off the blue pan";
  } else if (task_name == "slide_block") {
    s.goal_text = "slide the mint block onto the lavender zone";
  } else if (task_name == "press_button") {
    s.goal_text = "press the pink button";
  } else if (task_name == "turn_knob") {
    s.goal_text = "turn the mint knob";
  } else {
    throw UnknownTask("unknown task: " + task_name);
  }
  return s;
}

const WorldObject* TaskWorld::find_object(const std::string& name) const {
  for (const auto& o : objects) {
    if (o.name == name) return &o;
  }
  return nullptr;
}

WorldObject* TaskWorld::find_object(const std::string& name) {
  for (auto& o : objects) {
    if (o.name == name) return &o;
  }
  return nullptr;
}

RigidTransform TaskWorld::ee_pose() const {
  return forward_kinematics(arm, q).end_effector();
}

JointConfig home_configuration() {
  JointConfig q;
  q.q = {0.0, -0.55, 0.0, 1.90, 0.0, 1.00, 0.0};
  q.gripper = GripperState::Open;
  return q;
}

TaskWorld reset(const TaskSpec& spec, std::uint64_t seed) {
  TaskWorld w;
  w.spec = spec;
  w.arm = ArmModel::default_model();
  w.q = home_configuration();
  w.seed = seed;

  // Placement stream depends on the task identity as well as the seed: the
  // same seed yields unrelated layouts across tasks.
  Rng rng(mix_seed({seed, fnv1a(spec.task_name)}));
  const std::string& task = spec.task_name;

  if (task == "reach_target") {
    WorldObject ball;
    ball.name = "ball";
    ball.kind = WorldObject::Kind::Sphere;
    ball.dims = Vec3(0.025, 0.0, 0.0);
    ball.color = kPink;
    ball.pose.t = Vec3(rng.uniform(0.40, 0.68), rng.uniform(-0.30, 0.30),
                       w.table_z + ball.rest_z());
    w.objects.push_back(ball);
  } else if (task == "lift_lid") {
    WorldObject pan;
    pan.name = "pan";
    pan.kind = WorldObject::Kind::Cylinder;
    pan.dims = Vec3(0.09, 0.05, 0.0);
    pan.color = kPanBlue;
    // 35 cm x 44 cm placement rectangle, 90-degree yaw range.
    pan.pose.t = Vec3(rng.uniform(0.38, 0.73), rng.uniform(-0.22, 0.22),
                      w.table_z);
    pan.pose.R =
        yaw_rotation(rng.uniform(-std::numbers::pi / 4, std::numbers::pi / 4));

    WorldObject lid;
    lid.name = "lid";
    lid.kind = WorldObject::Kind::Cylinder;
    lid.dims = Vec3(0.095, 0.02, 0.0);
    lid.color = kLidGrey;
    lid.pose.t = pan.pose.t + Vec3(0.0, 0.0, pan.dims.y());
    lid.graspable = true;
    lid.grasp_local = Vec3(0.0, 0.0, lid.dims.y());

    w.objects.push_back(pan);
    w.objects.push_back(lid);
  } else if (task == "slide_block") {
    WorldObject block;
    block.name = "block";
    block.kind = WorldObject::Kind::Box;
    block.dims = Vec3(0.03, 0.03, 0.025);
    block.color = kMint;
    block.pose.t = Vec3(rng.uniform(0.35, 0.60), rng.uniform(-0.25, 0.25),
                        w.table_z + block.rest_z());
    block.pose.R =
        yaw_rotation(rng.uniform(-std::numbers::pi / 4, std::numbers::pi / 4));
    block.graspable = true;
    block.grasp_local = Vec3(0.0, 0.0, block.dims.z());

    WorldObject zone;
    zone.name = "zone";
    zone.kind = WorldObject::Kind::Box;
    zone.dims = Vec3(0.06, 0.06, 0.002);
    zone.color = kLavender;
    // Keep the zone clear of the block so the slide is a real motion. A
    // satisfying placement always exists; the cap only bounds the loop.
    for (int i = 0; i < 10000; ++i) {
      zone.pose.t = Vec3(rng.uniform(0.45, 0.70), rng.uniform(-0.25, 0.25),
                         w.table_z + zone.rest_z());
      if (horizontal_distance(zone.pose.t, block.pose.t) >= 0.18) break;
    }

    w.objects.push_back(block);
    w.objects.push_back(zone);
  } else if (task == "press_button") {
    WorldObject button;
    button.name = "button";
    button.kind = WorldObject::Kind::Cylinder;
    button.dims = Vec3(0.03, 0.03, 0.0);
    button.color = kPink;
    button.pose.t = Vec3(rng.uniform(0.40, 0.68), rng.uniform(-0.28, 0.28),
                         w.table_z);
    w.objects.push_back(button);
  } else if (task == "turn_knob") {
    WorldObject knob;
    knob.name = "knob";
    knob.kind = WorldObject::Kind::Cylinder;
    knob.dims = Vec3(0.035, 0.06, 0.0);
    knob.color = kMint;
    knob.pose.t = Vec3(rng.uniform(0.40, 0.65), rng.uniform(-0.25, 0.25),
                       w.table_z);
    w.objects.push_back(knob);
  } else {
    throw UnknownTask("unknown task: " + task);
  }
  return w;
}

TaskWorld reset(const std::string& task_name, std::uint64_t seed) {
  return reset(make_task_spec(task_name), seed);
}

void step(TaskWorld& world, const JointConfig& q_cmd) {
  for (double v : q_cmd.q) {
    if (!std::isfinite(v)) throw LimitViolation("joint command is not finite");
  }
  if (!world.arm.within_limits(q_cmd.q)) {
    throw LimitViolation("joint command outside the arm's limits");
  }

  const double q7_old = world.q.q[kNumJoints - 1];
  const bool was_engaged = world.knob_engaged;
  const GripperState prev_grip = world.q.gripper;

  // Rate-limited joint move; the gripper switches instantly.
  for (int j = 0; j < kNumJoints; ++j) {
    const double d = std::clamp(q_cmd.q[j] - world.q.q[j],
                                -world.arm.rate_limit, world.arm.rate_limit);
    world.q.q[j] += d;
  }
  world.q.gripper = q_cmd.gripper;

  const RigidTransform ee = world.ee_pose();

  // Attached objects track the hand rigidly.
  for (auto& o : world.objects) {
    if (o.attached) o.pose = ee * o.attach_rel;
  }

  // Closing captures the nearest graspable object whose grasp point is in
  // reach; the relative pose is frozen as-is (no snap).
  if (prev_grip == GripperState::Open &&
      world.q.gripper == GripperState::Closed) {
    WorldObject* best = nullptr;
    double best_d = kGraspRadius;
    for (auto& o : world.objects) {
      if (!o.graspable || o.attached) continue;
      const double d = (o.grasp_point() - ee.t).norm();
      if (d <= best_d) {
        best_d = d;
        best = &o;
      }
    }
    if (best) {
      best->attached = true;
      best->attach_rel = ee.inverse() * best->pose;
    }
  }

  // Opening releases everything in place; pose continuity is preserved.
  if (world.q.gripper == GripperState::Open) {
    for (auto& o : world.objects) o.attached = false;
  }

  // Free objects sink toward their support at a bounded rate. The lid may
  // rest on the pan; everything else rests on the table.
  for (auto& o : world.objects) {
    if (o.attached) continue;
    double support = world.table_z + o.rest_z();
    if (o.name == "lid") {
      const WorldObject* pan = world.find_object("pan");
      if (pan && horizontal_distance(o.pose.t, pan->pose.t) < pan->dims.x()) {
        support = std::max(support, pan->pose.t.z() + pan->dims.y());
      }
    }
    if (o.pose.t.z() > support) {
      o.pose.t.z() = std::max(support, o.pose.t.z() - kSettleRate);
    }
  }

  if (world.spec.task_name == "turn_knob") {
    const WorldObject* knob = world.find_object("knob");
    const double top = knob->pose.t.z() + knob->dims.y();
    const double horiz = horizontal_distance(ee.t, knob->pose.t);

    // A hand engaged during this step turns the knob with the wrist roll;
    // engagement itself is re-evaluated only after the motion.
    if (was_engaged) {
      world.knob_angle += wrap_to_pi(world.q.q[kNumJoints - 1] - q7_old);
    }
    if (world.knob_engaged) {
      if (world.q.gripper == GripperState::Open ||
          horiz > world.spec.knob_release_radius) {
        world.knob_engaged = false;
      }
    } else {
      world.knob_engaged = world.q.gripper == GripperState::Closed &&
                           horiz < world.spec.knob_grip_radius &&
                           ee.t.z() >= top &&
                           ee.t.z() <= top + kKnobGripHeight;
    }
  }

  if (world.spec.task_name == "press_button" && !world.button_latched) {
    const WorldObject* button = world.find_object("button");
    const double top = button->pose.t.z() + button->dims.y();
    const double horiz = horizontal_distance(ee.t, button->pose.t);
    if (horiz < world.spec.press_radius && ee.t.z() > top &&
        ee.t.z() <= top + world.spec.press_depth) {
      world.button_latched = true;  // latches; stays pressed
    }
  }

  ++world.t;
}

int check_success(const TaskWorld& world) {
  const auto& s = world.spec;
  if (s.task_name == "reach_target") {
    const WorldObject* ball = world.find_object("ball");
    const Vec3 ee = world.ee_pose().t;
    return (ball->pose.t - ee).norm() < s.reach_tolerance ? 100 : 0;
  }
  if (s.task_name == "lift_lid") {
    const WorldObject* pan = world.find_object("pan");
    const WorldObject* lid = world.find_object("lid");
    const double pan_top = pan->pose.t.z() + pan->dims.y();
    const bool clear = lid->pose.t.z() > pan_top + s.lift_height;
    const bool above =
        horizontal_distance(lid->pose.t, pan->pose.t) < s.lift_horizontal;
    return (clear && above) ? 100 : 0;
  }
  if (s.task_name == "slide_block") {
    const WorldObject* block = world.find_object("block");
    const WorldObject* zone = world.find_object("zone");
    const Vec3 d = block->pose.t - zone->pose.t;
    const bool on_table =
        std::abs(block->pose.t.z() - (world.table_z + block->rest_z())) < 0.01;
    return (std::abs(d.x()) < s.slide_half_size &&
            std::abs(d.y()) < s.slide_half_size && on_table)
               ? 100
               : 0;
  }
  if (s.task_name == "press_button") return world.button_latched ? 100 : 0;
  if (s.task_name == "turn_knob") {
    return std::abs(world.knob_angle) > s.knob_success_angle ? 100 : 0;
  }
  return 0;
}

std::vector<PoseSample> sample_pose_grid(const PoseBounds& bounds,
                                         const Vec2& yaw_range, int n) {
  std::vector<PoseSample> out;
  if (n <= 0) return out;
  const int cols =
      std::max(1, static_cast<int>(std::lround(std::sqrt(double(n)))));
  const int rows = (n + cols - 1) / cols;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const int r = i / cols;
    const int c = i % cols;
    const double fx = (c + 0.5) / cols;
    const double fy = (r + 0.5) / rows;
    PoseSample p;
    p.position = Vec2(bounds.x0 + fx * (bounds.x1 - bounds.x0),
                      bounds.y0 + fy * (bounds.y1 - bounds.y0));
    p.yaw = (n == 1) ? 0.5 * (yaw_range.x() + yaw_range.y())
                     : yaw_range.x() +
                           (yaw_range.y() - yaw_range.x()) * i / (n - 1);
    out.push_back(p);
  }
  return out;
}

Scene build_scene(const TaskWorld& world, const Palette& palette) {
  Scene s = Scene::base_scene(palette);
  s.table_x0 = world.table_x0;
  s.table_x1 = world.table_x1;
  s.table_y0 = world.table_y0;
  s.table_y1 = world.table_y1;
  s.table_z = world.table_z;

  // Pedestal from the floor up to the arm base.
  const Vec3 base = world.arm.base_pose.t;
  const double pedestal_h = std::max(0.05, base.z() - s.floor_z);
  s.objects.push_back(
      {CylinderShape{Vec3(base.x(), base.y(), s.floor_z), 0.07, pedestal_h},
       palette.arm_body});

  // Link capsules through the sphere-bearing frames; radii taper outward.
  const FramePoses fp = forward_kinematics(world.arm, world.q);
  constexpr int chain[] = {0, 2, 4, 6, 7};
  constexpr double radii[] = {0.055, 0.05, 0.042, 0.034, 0.03};
  Vec3 prev = base;
  for (int k = 0; k < 5; ++k) {
    const Vec3 cur = fp.frames[chain[k]].t;
    if ((cur - prev).norm() > 1e-6) {
      s.arm_segments.push_back(CapsuleShape{prev, cur, radii[k]});
    }
    prev = cur;
  }

  for (const auto& o : world.objects) {
    s.objects.push_back({o.shape(), o.color});
  }
  return s;
}

double goal_distance(const TaskWorld& world) {
  const auto& s = world.spec;
  const Vec3 ee = world.ee_pose().t;
  Vec3 goal = ee;
  if (s.task_name == "reach_target") {
    goal = world.find_object("ball")->pose.t;
  } else if (s.task_name == "lift_lid") {
    const WorldObject* pan = world.find_object("pan");
    goal = pan->pose.t +
           Vec3(0.0, 0.0, pan->dims.y() + s.lift_height + 0.05);
  } else if (s.task_name == "slide_block") {
    goal = world.find_object("zone")->pose.t + Vec3(0.0, 0.0, 0.05);
  } else if (s.task_name == "press_button") {
    const WorldObject* b = world.find_object("button");
    goal = b->pose.t + Vec3(0.0, 0.0, b->dims.y() + 0.5 * s.press_depth);
  } else if (s.task_name == "turn_knob") {
    const WorldObject* k = world.find_object("knob");
    goal = k->pose.t + Vec3(0.0, 0.0, k->dims.y() + 0.025);
  }
  return (goal - ee).norm();
}

}  // namespace jointcanvas
