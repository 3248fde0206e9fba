#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jointcanvas/kinematics.hpp"
#include "jointcanvas/render.hpp"

namespace jointcanvas {

inline constexpr std::array<const char*, 5> kTaskNames = {
    "reach_target", "lift_lid", "slide_block", "press_button", "turn_knob"};

// A movable scene body. `pose` places the object frame in world: sphere
// centers, box centers, and cylinder base centers sit at the frame origin.
struct WorldObject {
  enum class Kind { Sphere, Box, Cylinder };

  std::string name;
  Kind kind = Kind::Box;
  // sphere: (radius, 0, 0); box: half extents; cylinder: (radius, height, 0).
  Vec3 dims = Vec3::Zero();
  RigidTransform pose;
  Rgb color;
  bool graspable = false;
  bool attached = false;
  // Grasp point in the object frame (where the hand must be to pick it up).
  Vec3 grasp_local = Vec3::Zero();
  // Hand-from-object transform captured at attach time.
  RigidTransform attach_rel;

  // World position of the grasp point.
  Vec3 grasp_point() const { return pose.apply(grasp_local); }
  // Resting height of the frame origin for an object sitting on the table.
  double rest_z() const;
  Shape shape() const;
};

// Success-predicate parameters; all distances in metres, angles in radians.
struct TaskSpec {
  std::string task_name;
  std::string goal_text;
  double reach_tolerance = 0.04;        // reach_target: EE-to-ball distance
  double lift_height = 0.15;            // lift_lid: clearance above pan top
  double lift_horizontal = 0.10;        // lift_lid: max lateral drift
  double slide_half_size = 0.05;        // slide_block: target zone half width
  double press_radius = 0.02;           // press_button: horizontal window
  double press_depth = 0.035;           // press_button: vertical window height
  double knob_grip_radius = 0.02;       // turn_knob: engage distance
  double knob_release_radius = 0.04;    // turn_knob: disengage distance
  double knob_success_angle = 1.4;      // turn_knob: |turn| required
};

// Throws UnknownTask.
TaskSpec make_task_spec(const std::string& task_name);

struct TaskWorld {
  TaskSpec spec;
  ArmModel arm;
  JointConfig q;
  std::vector<WorldObject> objects;
  // Table surface rectangle at z = table_z.
  double table_x0 = 0.15, table_x1 = 0.95;
  double table_y0 = -0.55, table_y1 = 0.55;
  double table_z = 0.0;
  std::uint64_t seed = 0;
  int t = 0;

  bool button_latched = false;
  double knob_angle = 0.0;
  bool knob_engaged = false;

  const WorldObject* find_object(const std::string& name) const;
  WorldObject* find_object(const std::string& name);
  RigidTransform ee_pose() const;
};

// Joint configuration every episode starts from.
JointConfig home_configuration();

// Seeded world construction: objects placed uniformly inside per-task spawn
// rectangles, arm at home. Deterministic per seed. Throws UnknownTask.
TaskWorld reset(const TaskSpec& spec, std::uint64_t seed);
TaskWorld reset(const std::string& task_name, std::uint64_t seed);

// Advances one control step (20 Hz): every joint moves toward q_cmd clamped
// to rate_limit, the gripper switches instantly, closing within 2 cm of a
// graspable object's grasp point attaches it, opening detaches (objects
// settle to rest height), attached objects follow the hand, and task latches
// (button, knob engagement/integration) update. Throws LimitViolation when
// q_cmd is outside the joint limits.
void step(TaskWorld& world, const JointConfig& q_cmd);

// Pure success predicate; exactly 0 or 100.
int check_success(const TaskWorld& world);

struct PoseSample {
  Vec2 position;
  double yaw = 0.0;
};

struct PoseBounds {
  double x0 = 0.0, x1 = 0.0;
  double y0 = 0.0, y1 = 0.0;
};

// n poses on the most-square grid covering `bounds` (cell centers), yaw
// linearly spaced across `yaw_range` = (lo, hi). n = 1 yields the center
// pose at the yaw midpoint.
std::vector<PoseSample> sample_pose_grid(const PoseBounds& bounds,
                                         const Vec2& yaw_range, int n);

// Scene assembly for rendering: table/floor/backdrop styling, arm pedestal
// and link capsules at the world's configuration, and the task objects.
// Sphere specs are left empty; callers paint targets separately.
Scene build_scene(const TaskWorld& world, const Palette& palette);

// Distance from the end-effector to the task's goal point (diagnostic; also
// the terminal joint-error proxy recorded in episode results).
double goal_distance(const TaskWorld& world);

}  // namespace jointcanvas
